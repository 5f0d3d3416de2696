#include "ecsym/poly.hpp"

#include <algorithm>

#include "ecsym/modpoly.hpp"

namespace ecsym {

void zp_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int zp_deg(const ZPoly& f) { return (int)f.size() - 1; }

bool zp_is_zero(const ZPoly& f) { return f.empty(); }

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  zp_trim(r);
  return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zp_trim(r);
  return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  zp_trim(r);
  return r;
}

ZPoly zp_scale(const ZPoly& a, const Int& c) {
  if (c == 0) return {};
  ZPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}

ZPoly zp_derivative(const ZPoly& f) {
  if (f.size() <= 1) return {};
  ZPoly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * (long)i;
  zp_trim(r);
  return r;
}

Int zp_eval(const ZPoly& f, const Int& x) {
  Int r = 0;
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

Rat zp_eval(const ZPoly& f, const Rat& x) {
  Rat r = 0;
  for (size_t i = f.size(); i-- > 0;) r = r * x + Rat(f[i]);
  return r;
}

Int zp_content(const ZPoly& f) {
  Int c = 0;
  for (const auto& x : f) c = gcd(c, x);
  return c;
}

ZPoly zp_primitive(const ZPoly& f) {
  Int c = zp_content(f);
  if (c == 0 || c == 1) return f;
  ZPoly r = f;
  for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}

QPoly qp_from(const ZPoly& f) {
  QPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = Rat(f[i]);
  return r;
}

void qp_trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int qp_deg(const QPoly& f) { return (int)f.size() - 1; }

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qp_trim(r);
  return r;
}

void qp_divrem(const QPoly& f, const QPoly& g, QPoly& q, QPoly& r) {
  if (g.empty()) throw std::domain_error("qp_divrem by zero");
  r = f;
  qp_trim(r);
  q.assign(r.size() > g.size() ? r.size() - g.size() + 1 : 1, Rat(0));
  Rat lg = g.back();
  while ((int)r.size() >= (int)g.size() && !r.empty()) {
    Rat c = r.back() / lg;
    size_t shift = r.size() - g.size();
    q[shift] = c;
    for (size_t i = 0; i < g.size(); ++i) r[shift + i] -= c * g[i];
    qp_trim(r);
  }
  qp_trim(q);
}

QPoly qp_gcd(const QPoly& a, const QPoly& b) {
  QPoly f = a, g = b;
  qp_trim(f);
  qp_trim(g);
  while (!g.empty()) {
    QPoly q, r;
    qp_divrem(f, g, q, r);
    f = g;
    g = r;
  }
  if (!f.empty()) {
    Rat lc = f.back();
    for (auto& c : f) c /= lc;
  }
  return f;
}

std::optional<QPoly> qp_divexact(const QPoly& f, const QPoly& g) {
  QPoly q, r;
  qp_divrem(f, g, q, r);
  if (!r.empty()) return std::nullopt;
  return q;
}

std::optional<ZPoly> zp_divide(const ZPoly& f, const ZPoly& g) {
  auto q = qp_divexact(qp_from(f), qp_from(g));
  if (!q) return std::nullopt;
  Int den = 1;
  for (const auto& c : *q) den = den * Int(c.get_den()) / gcd(den, Int(c.get_den()));
  ZPoly r(q->size());
  for (size_t i = 0; i < q->size(); ++i) {
    Rat c = (*q)[i] * Rat(den);
    r[i] = Int(c.get_num());
  }
  return zp_primitive(r);
}

ZPoly zp_gcd(const ZPoly& a, const ZPoly& b) {
  if (zp_is_zero(a)) return zp_primitive(b);
  if (zp_is_zero(b)) return zp_primitive(a);
  QPoly g = qp_gcd(qp_from(a), qp_from(b));
  Int den = 1;
  for (const auto& c : g) den = den * Int(c.get_den()) / gcd(den, Int(c.get_den()));
  ZPoly r(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    Rat c = g[i] * Rat(den);
    r[i] = Int(c.get_num());
  }
  r = zp_primitive(r);
  if (!r.empty() && r.back() < 0)
    for (auto& c : r) c = -c;
  return r;
}

ZPoly zp_squarefree_part(const ZPoly& f) {
  if (zp_deg(f) <= 1) return zp_primitive(f);
  ZPoly g = zp_gcd(f, zp_derivative(f));
  if (zp_deg(g) == 0) return zp_primitive(f);
  auto q = zp_divide(f, g);
  if (!q) throw std::logic_error("zp_squarefree_part: gcd does not divide");
  return *q;
}

ZPoly zp_monicize(const ZPoly& f, Int& lc) {
  if (f.empty()) throw std::domain_error("zp_monicize(0)");
  lc = f.back();
  int n = zp_deg(f);
  // F(X) = lc^(n-1) f(X/lc): F_i = f_i * lc^(n-1-i)
  ZPoly F(f.size());
  F[n] = 1;
  Int pw = 1;
  for (int i = n - 1; i >= 0; --i) {
    F[i] = f[i] * pw;
    pw *= lc;
  }
  return F;
}

namespace {

const u64 kGoodPrimes[] = {
    1000003, 1000033, 1000037, 1000039, 1000081, 1000099, 1000117, 1000121,
    1000133, 1000151, 1000159, 1000171, 1000183, 1000187, 1000193, 1000199,
    1000211, 1000213, 1000231, 1000249, 1000253, 1000273, 1000289, 1000291,
    1000303, 1000313, 1000333, 1000357, 1000367, 1000381, 1000393, 1000397,
    1000403, 1000409, 1000423, 1000427, 1000429, 1000453, 1000457, 1000507,
    1000537, 1000541, 1000547, 1000577, 1000579, 1000589, 1000609, 1000619,
    1000621, 1000639, 1000651, 1000667, 1000669, 1000679, 1000691, 1000697};

Int coefficient_bound(const ZPoly& F) {
  // Cauchy-style bound on integer roots; also used to cap factor coefficients.
  Int b = 1;
  for (const auto& c : F) {
    Int a = abs(c);
    if (a > b) b = a;
  }
  return b + 1;
}

Int mignotte_bound(const ZPoly& F, int d) {
  // Factor-coefficient bound for monic factors of degree <= d.
  Int norm2 = 0;
  for (const auto& c : F) norm2 += c * c;
  Int s = sqrt(norm2) + 1;
  Int bin = 1;
  for (int i = 0; i < d; ++i) bin *= 2;
  return bin * s + 1;
}

}  // namespace

std::vector<Int> zp_integer_roots_monic(const ZPoly& f) {
  std::vector<Int> roots;
  if (zp_deg(f) < 1) return roots;
  ZPoly F = zp_squarefree_part(f);
  if (!F.empty() && F.back() < 0)
    for (auto& c : F) c = -c;
  if (zp_deg(F) == 1) {
    // F = a t + b primitive; integer root iff a | b.
    if (abs(F[1]) == 1) roots.push_back(-F[0] * F[1]);
    return roots;
  }
  Int bound = coefficient_bound(F);
  for (u64 m : kGoodPrimes) {
    MPoly Fm = mp_from(F, m);
    if (mp_deg(Fm) != zp_deg(F)) continue;
    if (!mp_is_squarefree(Fm, m)) continue;
    for (u64 r0 : mp_roots(Fm, m)) {
      Int modulus;
      Int r = hensel_lift_root(F, r0, m, 2 * bound + 1, modulus);
      if (2 * r > modulus) r -= modulus;  // symmetric representative
      if (zp_eval(F, r) == 0) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }
  throw std::runtime_error("zp_integer_roots_monic: no good prime found");
}

std::vector<std::pair<Rat, int>> zp_rational_roots(const ZPoly& f) {
  std::vector<std::pair<Rat, int>> out;
  if (zp_deg(f) < 1) return out;
  ZPoly p = zp_primitive(f);
  Int lc;
  ZPoly F = zp_monicize(p, lc);
  if (F.back() != 1) throw std::logic_error("zp_rational_roots: monicize failed");
  for (const Int& X : zp_integer_roots_monic(F)) {
    Rat t = Rat(X) / Rat(lc);
    // Multiplicity by repeated exact division by (den*t - num).
    ZPoly lin = {Int(-t.get_num()), Int(t.get_den())};
    ZPoly cur = p;
    int mult = 0;
    while (true) {
      auto q = zp_divide(cur, lin);
      if (!q) break;
      ++mult;
      cur = *q;
    }
    if (mult > 0) out.emplace_back(t, mult);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

namespace {

// Subset driver shared by the factor search.
struct SubsetFactorSearch {
  const ZPoly& F;  // monic, squarefree
  u64 m;
  std::vector<MPoly> local;  // irreducible factors mod m
  Int target;

  std::vector<ZPoly> run(int maxdeg) {
    std::vector<ZPoly> found;
    std::vector<int> used(local.size(), 0);
    size_t n = local.size();
    // Subsets in increasing size, skipping used local factors.
    for (int size = 1; size <= (int)n - 1; ++size) {
      std::vector<int> idx(size);
      for (int i = 0; i < size; ++i) idx[i] = i;
      while (true) {
        int degsum = 0;
        bool ok = true;
        for (int i : idx) {
          if (used[i]) ok = false;
          degsum += mp_deg(local[i]);
        }
        if (ok && degsum <= maxdeg && degsum < zp_deg(F)) {
          if (auto g = try_subset(idx)) {
            for (int i : idx) used[i] = 1;
            found.push_back(*g);
          }
        }
        // next combination
        int i = size - 1;
        while (i >= 0 && idx[i] == (int)n - size + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return found;
  }

  std::optional<ZPoly> try_subset(const std::vector<int>& idx) {
    int expected_deg = 0;
    for (int i : idx) expected_deg += mp_deg(local[i]);
    MPoly g0 = {1};
    for (int i : idx) g0 = mp_mul(g0, local[i], m);
    MPoly Fm = mp_from(F, m);
    MPoly q, r;
    mp_divrem(Fm, g0, q, r, m);
    if (mp_deg(r) >= 0) return std::nullopt;
    HenselPair hp = hensel_lift(F, g0, q, m, target);
    ZPoly g = hp.g;
    for (auto& c : g) {
      c %= hp.modulus;
      if (c < 0) c += hp.modulus;
      if (2 * c > hp.modulus) c -= hp.modulus;
    }
    zp_trim(g);
    if (zp_deg(g) != expected_deg) return std::nullopt;
    auto h = zp_divide(F, g);
    if (!h) return std::nullopt;
    return g;
  }
};

}  // namespace

std::vector<ZPoly> zp_factors_up_to_degree(const ZPoly& f, int maxdeg) {
  std::vector<ZPoly> out;
  if (zp_deg(f) < 1) return out;
  ZPoly p = zp_primitive(zp_squarefree_part(f));
  if (zp_deg(p) == 1) {
    out.push_back(p);
    return out;
  }
  Int lc;
  ZPoly F = zp_monicize(p, lc);
  Int bound = mignotte_bound(F, maxdeg);
  for (u64 m : kGoodPrimes) {
    MPoly Fm = mp_from(F, m);
    if (mp_deg(Fm) != zp_deg(F)) continue;
    if (!mp_is_squarefree(Fm, m)) continue;
    SubsetFactorSearch search{F, m, mp_factor_squarefree(mp_make_monic(Fm, m), m),
                              2 * bound + 1};
    std::vector<ZPoly> monic_factors = search.run(maxdeg);
    for (const ZPoly& G : monic_factors) {
      // Map back through X = lc * t.
      ZPoly g(G.size());
      Int pw = 1;
      for (size_t i = 0; i < G.size(); ++i) {
        g[i] = G[i] * pw;
        pw *= lc;
      }
      g = zp_primitive(g);
      if (!g.empty() && g.back() < 0)
        for (auto& c : g) c = -c;
      if (zp_divide(p, g)) out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    // The cofactor after removing the found factors may itself be small enough.
    ZPoly cur = p;
    for (const ZPoly& g : out)
      if (auto q = zp_divide(cur, g)) cur = *q;
    if (zp_deg(cur) >= 1 && zp_deg(cur) <= maxdeg) {
      if (!cur.empty() && cur.back() < 0)
        for (auto& c : cur) c = -c;
      out.push_back(cur);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
  }
  throw std::runtime_error("zp_factors_up_to_degree: no good prime found");
}

IrredCertificate zp_certify_irreducible(const ZPoly& f, int max_rounds) {
  IrredCertificate cert;
  int n = zp_deg(f);
  if (n <= 0) {
    cert.verdict = IrredVerdict::Unknown;
    return cert;
  }
  if (n == 1) {
    cert.verdict = IrredVerdict::Irreducible;
    return cert;
  }
  if (zp_deg(zp_squarefree_part(f)) != n) {
    cert.verdict = IrredVerdict::Reducible;
    return cert;
  }
  // Achievable proper factor degrees: intersect subset sums across primes.
  std::vector<char> feasible(n + 1, 1);
  int rounds = 0;
  for (u64 m : kGoodPrimes) {
    if (rounds >= max_rounds) break;
    MPoly fm = mp_from(f, m);
    if (mp_deg(fm) != n || !mp_is_squarefree(fm, m)) continue;
    ++rounds;
    std::vector<int> pattern = mp_degree_pattern(mp_make_monic(fm, m), m);
    cert.witness_primes.push_back(m);
    cert.patterns.push_back(pattern);
    std::vector<char> sums(n + 1, 0);
    sums[0] = 1;
    for (int d : pattern)
      for (int s = n; s >= d; --s)
        if (sums[s - d]) sums[s] = 1;
    for (int s = 0; s <= n; ++s)
      if (!sums[s]) feasible[s] = 0;
    bool any = false;
    for (int s = 1; s < n; ++s) any |= feasible[s];
    if (!any) {
      cert.verdict = IrredVerdict::Irreducible;
      return cert;
    }
  }
  // Patterns stayed compatible with a split; look for an actual small factor.
  for (const ZPoly& g : zp_factors_up_to_degree(f, std::min(n - 1, 3))) {
    (void)g;
    cert.verdict = IrredVerdict::Reducible;
    return cert;
  }
  cert.verdict = IrredVerdict::Unknown;
  return cert;
}

}  // namespace ecsym
