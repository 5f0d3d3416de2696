#pragma once

#include <optional>
#include <vector>

#include "ecsym/arith.hpp"
#include "ecsym/poly.hpp"

namespace ecsym {

// Dense little-endian polynomials over F_m, m an odd word-size prime.
using MPoly = std::vector<u64>;

void mp_trim(MPoly& f);
int mp_deg(const MPoly& f);
MPoly mp_from(const ZPoly& f, u64 m);
MPoly mp_add(const MPoly& a, const MPoly& b, u64 m);
MPoly mp_sub(const MPoly& a, const MPoly& b, u64 m);
MPoly mp_mul(const MPoly& a, const MPoly& b, u64 m);
MPoly mp_make_monic(const MPoly& f, u64 m);
void mp_divrem(const MPoly& f, const MPoly& g, MPoly& q, MPoly& r, u64 m);
MPoly mp_mod(const MPoly& f, const MPoly& g, u64 m);
MPoly mp_gcd(const MPoly& a, const MPoly& b, u64 m);  // monic
MPoly mp_mulmod(const MPoly& a, const MPoly& b, const MPoly& f, u64 m);
MPoly mp_powmod(MPoly base, const Int& exp, const MPoly& f, u64 m);
// g(h) mod f
MPoly mp_compose_mod(const MPoly& g, const MPoly& h, const MPoly& f, u64 m);
u64 mp_eval(const MPoly& f, u64 x, u64 m);
std::optional<u64> mp_inv_elem(const MPoly& a, const MPoly& f, u64 m, MPoly& inv);

bool mp_is_squarefree(const MPoly& f, u64 m);
std::vector<u64> mp_roots(const MPoly& f, u64 m);  // distinct roots, sorted

// Irreducible factors of a squarefree monic f, sorted; deterministic.
std::vector<MPoly> mp_factor_squarefree(const MPoly& f, u64 m);
// Sorted multiset of irreducible factor degrees of squarefree f mod m.
std::vector<int> mp_degree_pattern(const MPoly& f, u64 m);

// ---- lifting ---------------------------------------------------------------

// One quadratic Hensel step and a driver: given monic F over Z with
// F = g0*h0 mod m (g0, h0 monic, coprime mod m), lift until modulus >= target.
// Returns (g, h, modulus).
struct HenselPair {
  ZPoly g, h;
  Int modulus;
};
HenselPair hensel_lift(const ZPoly& F, const MPoly& g0, const MPoly& h0,
                       u64 m, const Int& target);

// Scalar Newton lift of a simple root r0 of monic F mod m to modulus >= target.
Int hensel_lift_root(const ZPoly& F, u64 r0, u64 m, const Int& target, Int& modulus_out);

// ---- quotient ring (Z/M)[t]/(modulus), modulus monic ------------------------

struct QuotRing {
  Int M;
  ZPoly modulus;  // monic
  ZPoly reduce(ZPoly f) const;
  ZPoly add(const ZPoly& a, const ZPoly& b) const;
  ZPoly sub(const ZPoly& a, const ZPoly& b) const;
  ZPoly mul(const ZPoly& a, const ZPoly& b) const;
  // f(a) for f over Z, a in the ring.
  ZPoly eval_poly(const ZPoly& f, const ZPoly& a) const;
};

}  // namespace ecsym
