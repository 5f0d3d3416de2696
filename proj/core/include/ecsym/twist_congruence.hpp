#pragma once

#include <vector>

#include "ecsym/curve.hpp"
#include "ecsym/galois.hpp"

namespace ecsym {

enum class SymType { Symplectic, Antisymplectic, Both, Undetermined };

enum class TypeBasis {
  None,
  IsogenyCriterion,
  QuadraticTwist,
  HigherTwist,
  CMTwist,
  Composition,
  ExternalOracle,
};

struct SymplecticType {
  SymType value = SymType::Undetermined;
  TypeBasis basis = TypeBasis::None;

  bool operator==(const SymplecticType&) const = default;
};

// +1 symplectic, -1 antisymplectic, 0 otherwise.
int type_sign(SymType t);
SymType compose(SymType a, SymType b);

Int p_star(u64 p);  // (-1)^((p-1)/2) p, the quadratic subfield discriminant class

struct TwistCongruence {
  RationalEC partner;
  int n = 2;    // twist order: 2, 3, 4 or 6
  Rat u;        // twisting scalar, k-th power free for order k
  u64 p = 0;
  SymplecticType type;
  bool side_ok = true;  // congruence-class condition on p for n in {4,6}
};

// Type of the congruence induced by a rational n-isogeny, gcd(n,p) = 1:
// symplectic exactly when n is a square mod p.
SymplecticType isogeny_criterion(const Int& n, u64 p);

// Type of the congruence between E and its twist by the dihedral witness
// character, read off the splitness of the Cartan subgroup.
SymplecticType quadratic_twist_type(const CartanClass& cartan, u64 p);

// Partner twists certified p-congruent to E by a dihedral witness: one
// partner E^d generically, the quartic twist by -4 when j = 1728 and
// d = -1 (E^{-1} is E itself there), three partners when the projective
// image is D_2, the one twisted into the p* class being symplectic.
std::vector<TwistCongruence> quadratic_twist_congruences(const RationalEC& E, u64 p,
                                                         const DihedralWitness& w);

// CM curve of discriminant -D: the quadratic twist by -D (quartic by -4
// when D = 4) is p-congruent to E for unramified p >= 5, symplectically
// exactly when (D/p) = +1 ((2/p) when D = 4, and D = 3 needs p = +-1 mod 9).
TwistCongruence cm_twist_congruence(const RationalEC& E, const Int& D, u64 p);

// The quartic and sextic twist families: j = 1728 with p in {3,5} and
// j = 0 with p in {5,7}.  One symplectic partner and two antisymplectic
// ones linked by the 2- resp. 3-isogeny; empty for other (j,p).
std::vector<TwistCongruence> higher_twist_partners(const RationalEC& E, u64 p);

// Type of a p-congruence between a j in {0, 1728} curve and its order-n
// twist by u: antisymplectic for n = 3, and for n in {4,6} symplectic
// exactly when u p* is a square.  side_ok receives the congruence-class
// condition on p (n=4: p = +-3 mod 8, n=6: p = +-5 mod 12, n=3: p != 3).
SymplecticType higher_twist_type(int n, const Rat& u, u64 p, bool* side_ok = nullptr);

}  // namespace ecsym
