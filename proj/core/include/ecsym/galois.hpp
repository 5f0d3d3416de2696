#pragma once

#include <optional>
#include <vector>

#include "ecsym/curve.hpp"
#include "ecsym/frobenius.hpp"
#include "ecsym/poly.hpp"

namespace ecsym {

enum class CartanKind { Split, NonSplit, Undetermined };

struct CartanClass {
  CartanKind kind = CartanKind::Undetermined;
  int evidence = 0;  // good primes consulted with nonzero trace mod p
};

// Quadratic character whose kernel contains all Frobenius classes of
// nonzero trace mod p; certifies a dihedral-normalizer image shape.
struct DihedralWitness {
  Int d;  // squarefree
  CartanClass cartan;
  bool projective_order_4 = false;
  std::vector<Int> all_d;  // the three quadratic classes when projective image is D_2
};

enum class ReducibilityVerdict { Reducible, Irreducible, ReducibleCompatible };

struct Reducibility {
  ReducibilityVerdict verdict = ReducibilityVerdict::ReducibleCompatible;
  bool exact = false;   // decided by division polynomial or modular parametrization
  u64 witness_ell = 0;  // prime whose Frobenius charpoly is irreducible mod p, when found
};

// Numerator of j(t) - j where j(t) = (t^2+13t+49)(t^2+5t+1)^3 / t
// parametrizes curves admitting a rational 7-isogeny.
ZPoly fricke_numerator(const Rat& j);
Rat fricke_j(const Rat& t);

std::optional<Rat> rational_7_isogeny_parameter(const RationalEC& E);
bool has_rational_7_isogeny(const RationalEC& E);

// Exact for p <= 7.  For larger p an irreducible Frobenius charpoly mod p
// proves irreducibility; otherwise the verdict is ReducibleCompatible,
// meaning every sampled charpoly splits over F_p.  A known flag from
// ingested isogeny data overrides the computation.
Reducibility reducibility(const RationalEC& E, u64 p, const TraceVector& tv,
                          std::optional<bool> known = std::nullopt);

// Splitness of the Cartan subgroup containing Frobenius classes inside
// the kernel of the d-character: a_ell^2 - 4 ell is a square mod p for
// all of them (Split), a nonsquare for all (NonSplit), else Undetermined.
CartanClass cartan_type(u64 p, const Int& d, const TraceVector& tv);

// Searches squarefree products of -1 and the primes dividing p N_E for a
// character d with a_ell = 0 mod p whenever (d/ell) = -1.  Requires at
// least min_side samples on each side of the character and a coherent
// Cartan type; survivors are re-asserted on a fresh prime window.
std::optional<DihedralWitness> trace_zero_quadratic(const RationalEC& E, u64 p,
                                                    const TraceVector& tv,
                                                    int min_side = 30);

// Excludes an antisymplectic automorphism of E[p] commuting with Galois.
// True outright for p >= 7; for p in {3,5} fails exactly when E has two
// independent rational p-isogeny kernels.
bool condition_S(const RationalEC& E, u64 p);

}  // namespace ecsym
