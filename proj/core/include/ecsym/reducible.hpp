#pragma once

#include <cstddef>

#include "ecsym/curve.hpp"
#include "ecsym/galois.hpp"
#include "ecsym/poly.hpp"

namespace ecsym {

// Degree-7 field attached to a curve with a single rational 7-isogeny:
// the irreducible cofactor of the rational root in the degree-8 modular
// polynomial over j(E).  Stored primitive with positive leading term.
struct SevenIsogenyField {
  ZPoly f;
};

// Removes the unique rational linear factor of fricke_numerator(j(E)) and
// certifies the remaining degree-7 factor irreducible.
SevenIsogenyField second_isogeny_field(const RationalEC& E);

// Eigenvalue m of Frobenius at ell on the rational 7-isogeny kernel:
// Frob_ell acts on kernel points by [m].  Requires ell odd, good, not 7;
// returns 0 when the kernel reduction degenerates mod ell (caller skips).
int isogeny_character(const RationalEC& E, u64 ell);

enum class CharAlign { Keep, Swap };

// Matches the isogeny character of E against the one of Ep (Keep) or of
// its 7-isogenous partner (Swap) on sampled primes.  A sample fitting
// neither pattern contradicts a certified congruence, so this throws.
CharAlign align_characters(const RationalEC& E, const RationalEC& Ep, int samples = 60);

enum class FieldIso { Yes, No, Undetermined };

struct FieldIsoResult {
  FieldIso verdict = FieldIso::Undetermined;
  u64 witness = 0;  // No: prime with distinct factorization patterns
  QPoly embedding;  // Yes: root of f2 inside Q[t]/(f1)
};

// Field isomorphism F1 = F2 over Q: No via a factorization-pattern
// mismatch at an unramified prime; Yes via an exactly verified embedding,
// reconstructed from an inert-prime Hensel lift; Undetermined when the
// precision cap is exhausted.
FieldIsoResult fields_isomorphic(const SevenIsogenyField& F1, const SevenIsogenyField& F2);

struct ReducibleDecision {
  bool congruent = false;
  bool swapped = false;  // Ep was replaced by its 7-isogenous partner
  FieldIsoResult fields;
};

// Full mod-7 isomorphism test for reducible certified pairs: align the
// isogeny characters, then compare the degree-7 fields.
ReducibleDecision reducible_congruent(const RationalEC& E, const RationalEC& Ep);

struct BorelOracleReport {
  u64 p = 0;
  std::size_t subgroups = 0;
  std::size_t automorphisms = 0;
  bool all_inner = false;
};

// Exhaustively checks, for subgroups H of the upper-triangular Borel mod p
// with p dividing |H|, that every automorphism of H acting trivially on the
// diagonal quotient is conjugation by an upper-triangular matrix.
BorelOracleReport borel_conjugation_oracle(u64 p);

}  // namespace ecsym
