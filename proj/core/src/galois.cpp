#include "ecsym/galois.hpp"

#include <algorithm>
#include <stdexcept>

#include "ecsym/isogeny.hpp"
#include "ecsym/sieve.hpp"

namespace ecsym {

namespace {

i64 trace_mod(i64 a, u64 p) { return ((a % i64(p)) + i64(p)) % i64(p); }

// Charpoly x^2 - a x + ell of Frobenius is irreducible mod p exactly when
// a^2 - 4 ell is a nonresidue.
bool charpoly_irreducible(i64 a, u64 ell, u64 p) {
  i64 disc = ((a * a - 4 * i64(ell)) % i64(p) + i64(p)) % i64(p);
  return legendre(u64(disc), p) == -1;
}

u64 irreducibility_witness(u64 p, const TraceVector& tv) {
  for (std::size_t i = 0; i < tv.primes.size(); ++i) {
    if (tv.kinds[i] != ReductionKind::Good || tv.primes[i] == p) continue;
    if (charpoly_irreducible(tv.traces[i], tv.primes[i], p)) return tv.primes[i];
  }
  return 0;
}

}  // namespace

ZPoly fricke_numerator(const Rat& j) {
  ZPoly quad{Int(49), Int(13), Int(1)};
  ZPoly cube{Int(1), Int(5), Int(1)};
  ZPoly f = zp_mul(quad, zp_mul(cube, zp_mul(cube, cube)));
  f = zp_scale(f, j.get_den());
  ZPoly lin{Int(0), j.get_num()};
  return zp_primitive(zp_sub(f, lin));
}

Rat fricke_j(const Rat& t) {
  if (t == 0) throw std::invalid_argument("fricke_j: t must be nonzero");
  Rat q = t * t + 13 * t + 49;
  Rat c = t * t + 5 * t + 1;
  Rat j = q * c * c * c / t;
  j.canonicalize();
  return j;
}

std::optional<Rat> rational_7_isogeny_parameter(const RationalEC& E) {
  auto roots = zp_rational_roots(fricke_numerator(E.j()));
  if (roots.empty()) return std::nullopt;
  std::vector<Rat> ts;
  for (const auto& [t, mult] : roots) {
    (void)mult;
    ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  return ts.front();
}

bool has_rational_7_isogeny(const RationalEC& E) {
  return rational_7_isogeny_parameter(E).has_value();
}

Reducibility reducibility(const RationalEC& E, u64 p, const TraceVector& tv,
                          std::optional<bool> known) {
  std::size_t good = 0;
  for (std::size_t i = 0; i < tv.primes.size(); ++i)
    if (tv.kinds[i] == ReductionKind::Good && tv.primes[i] != p) ++good;
  if (good < 100)
    throw std::invalid_argument("reducibility: need trace data at 100 good primes");

  Reducibility r;
  auto settle = [&](bool reducible) {
    r.verdict = reducible ? ReducibilityVerdict::Reducible : ReducibilityVerdict::Irreducible;
    r.exact = true;
    if (!reducible) r.witness_ell = irreducibility_witness(p, tv);
  };

  if (known) {
    settle(*known);
  } else if (p == 7) {
    settle(has_rational_7_isogeny(E));
  } else if (p == 2 || p == 3 || p == 5) {
    settle(rational_kernel_count(E, int(p)) > 0);
  } else {
    u64 w = irreducibility_witness(p, tv);
    if (w != 0) {
      r.verdict = ReducibilityVerdict::Irreducible;
      r.exact = true;
      r.witness_ell = w;
    } else {
      r.verdict = ReducibilityVerdict::ReducibleCompatible;
      r.exact = false;
    }
  }
  return r;
}

CartanClass cartan_type(u64 p, const Int& d, const TraceVector& tv) {
  bool saw_split = false, saw_nonsplit = false;
  CartanClass c;
  for (std::size_t i = 0; i < tv.primes.size(); ++i) {
    if (tv.kinds[i] != ReductionKind::Good || tv.primes[i] == p) continue;
    if (kronecker(d, Int(tv.primes[i])) != 1) continue;
    i64 a = tv.traces[i];
    if (trace_mod(a, p) == 0) continue;
    i64 disc = ((a * a - 4 * i64(tv.primes[i])) % i64(p) + i64(p)) % i64(p);
    int chi = legendre(u64(disc), p);
    if (chi == 0) continue;
    ++c.evidence;
    (chi == 1 ? saw_split : saw_nonsplit) = true;
  }
  if (saw_split && !saw_nonsplit) c.kind = CartanKind::Split;
  if (saw_nonsplit && !saw_split) c.kind = CartanKind::NonSplit;
  return c;
}

std::optional<DihedralWitness> trace_zero_quadratic(const RationalEC& E, u64 p,
                                                    const TraceVector& tv, int min_side) {
  // The character is unramified outside p N, so its discriminant class is
  // a squarefree product of -1 and primes dividing p N.
  std::vector<Int> cands{Int(1)};
  for (const auto& [q, e] : factorize(Int(p) * conductor(E).value()).factors) {
    (void)e;
    std::size_t n = cands.size();
    for (std::size_t i = 0; i < n; ++i) cands.push_back(cands[i] * q);
  }
  {
    std::size_t n = cands.size();
    for (std::size_t i = 0; i < n; ++i) cands.push_back(-cands[i]);
  }
  cands.erase(cands.begin());  // drop the trivial character

  auto survives = [&](const Int& d, const TraceVector& t, int* plus, int* minus) {
    int np = 0, nm = 0;
    for (std::size_t i = 0; i < t.primes.size(); ++i) {
      if (t.kinds[i] != ReductionKind::Good || t.primes[i] == p) continue;
      int chi = kronecker(d, Int(t.primes[i]));
      if (chi == 0) continue;
      if (chi == 1) {
        ++np;
        continue;
      }
      ++nm;
      if (trace_mod(t.traces[i], p) != 0) return false;
    }
    if (plus) *plus = np;
    if (minus) *minus = nm;
    return true;
  };

  std::vector<Int> survivors;
  for (const Int& d : cands) {
    int plus = 0, minus = 0;
    if (survives(d, tv, &plus, &minus) && plus >= min_side && minus >= min_side)
      survivors.push_back(d);
  }
  if (survivors.empty()) return std::nullopt;

  // A lucky sample must not certify a false character.
  u64 maxp = *std::max_element(tv.primes.begin(), tv.primes.end());
  TraceVector fresh = trace_vector(E, build_prime_window(maxp, 100));
  std::erase_if(survivors,
                [&](const Int& d) { return !survives(d, fresh, nullptr, nullptr); });
  if (survivors.empty()) return std::nullopt;

  std::sort(survivors.begin(), survivors.end(), [](const Int& x, const Int& y) {
    Int ax = abs(x), ay = abs(y);
    if (ax != ay) return ax < ay;
    return x > y;
  });

  std::vector<std::pair<Int, CartanClass>> typed;
  for (const Int& d : survivors) {
    CartanClass c = cartan_type(p, d, tv);
    if (c.kind != CartanKind::Undetermined) typed.emplace_back(d, c);
  }
  if (typed.empty()) return std::nullopt;

  DihedralWitness w{typed[0].first, typed[0].second, false, {}};
  if (typed.size() >= 2) {
    // Two independent trace-zero characters force the third: off the kernel
    // of the product, one factor is -1, so the trace vanishes there too.
    w.projective_order_4 = true;
    for (const auto& [d, c] : typed) w.all_d.push_back(d);
    if (w.all_d.size() == 2) {
      Int d3 = squarefree_part(Int(w.all_d[0] * w.all_d[1]));
      if (d3 != 1) w.all_d.push_back(d3);
    }
  }
  return w;
}

bool condition_S(const RationalEC& E, u64 p) {
  if (p < 3 || !is_prime_u64(p))
    throw std::invalid_argument("condition_S: p must be an odd prime");
  if (p >= 7) return true;
  return rational_kernel_count(E, int(p)) < 2;
}

}  // namespace ecsym
