#pragma once

#include <optional>
#include <vector>

#include "ecsym/arith.hpp"

namespace ecsym {

// Dense little-endian polynomials over Z and Q.
using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;

void zp_trim(ZPoly& f);
int zp_deg(const ZPoly& f);  // -1 for the zero polynomial
bool zp_is_zero(const ZPoly& f);

ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_scale(const ZPoly& a, const Int& c);
ZPoly zp_derivative(const ZPoly& f);
Int zp_eval(const ZPoly& f, const Int& x);
Rat zp_eval(const ZPoly& f, const Rat& x);

Int zp_content(const ZPoly& f);        // > 0 for nonzero f
ZPoly zp_primitive(const ZPoly& f);    // f / content, sign of lc preserved

QPoly qp_from(const ZPoly& f);
void qp_trim(QPoly& f);
int qp_deg(const QPoly& f);
QPoly qp_mul(const QPoly& a, const QPoly& b);
// Division with remainder over Q; g != 0.
void qp_divrem(const QPoly& f, const QPoly& g, QPoly& q, QPoly& r);
QPoly qp_gcd(const QPoly& a, const QPoly& b);  // monic

// Exact quotient f / g in Q[t]; nullopt if the division has a remainder.
std::optional<QPoly> qp_divexact(const QPoly& f, const QPoly& g);
std::optional<ZPoly> zp_divide(const ZPoly& f, const ZPoly& g);  // primitive quotient

ZPoly zp_gcd(const ZPoly& a, const ZPoly& b);        // primitive, positive lc
ZPoly zp_squarefree_part(const ZPoly& f);

// Monicization: returns monic F with F(X) = lc^(deg-1) * f(X/lc); roots map t = X/lc.
ZPoly zp_monicize(const ZPoly& f, Int& lc);

// All integer roots of a monic integer polynomial (with multiplicity dropped).
std::vector<Int> zp_integer_roots_monic(const ZPoly& f);
// All rational roots of f with multiplicities, sorted.
std::vector<std::pair<Rat, int>> zp_rational_roots(const ZPoly& f);

// All primitive irreducible factors of f over Q with degree <= maxdeg
// (each listed once; multiplicities via repeated division by the caller).
std::vector<ZPoly> zp_factors_up_to_degree(const ZPoly& f, int maxdeg);

// Irreducibility certificate by factorization patterns modulo several primes.
enum class IrredVerdict { Irreducible, Reducible, Unknown };
struct IrredCertificate {
  IrredVerdict verdict = IrredVerdict::Unknown;
  std::vector<u64> witness_primes;            // primes whose patterns were combined
  std::vector<std::vector<int>> patterns;     // factor degree multisets per prime
};
IrredCertificate zp_certify_irreducible(const ZPoly& f, int max_rounds = 25);

}  // namespace ecsym
