#include "ecsym/modpoly.hpp"

#include <algorithm>

namespace ecsym {

void mp_trim(MPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int mp_deg(const MPoly& f) { return (int)f.size() - 1; }

MPoly mp_from(const ZPoly& f, u64 m) {
  MPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    Int c = f[i] % (long)m;
    if (c < 0) c += (long)m;
    r[i] = c.get_ui();
  }
  mp_trim(r);
  return r;
}

MPoly mp_add(const MPoly& a, const MPoly& b, u64 m) {
  MPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % m;
  mp_trim(r);
  return r;
}

MPoly mp_sub(const MPoly& a, const MPoly& b, u64 m) {
  MPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + m - b[i]) % m;
  mp_trim(r);
  return r;
}

MPoly mp_mul(const MPoly& a, const MPoly& b, u64 m) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], m)) % m;
  }
  mp_trim(r);
  return r;
}

MPoly mp_make_monic(const MPoly& f, u64 m) {
  if (f.empty()) return f;
  u64 inv = invmod(f.back(), m);
  MPoly r = f;
  for (auto& c : r) c = mulmod(c, inv, m);
  return r;
}

void mp_divrem(const MPoly& f, const MPoly& g, MPoly& q, MPoly& r, u64 m) {
  if (g.empty()) throw std::domain_error("mp_divrem by zero");
  r = f;
  mp_trim(r);
  q.assign(r.size() > g.size() ? r.size() - g.size() + 1 : 1, 0);
  u64 inv = invmod(g.back(), m);
  while (r.size() >= g.size() && !r.empty()) {
    u64 c = mulmod(r.back(), inv, m);
    size_t shift = r.size() - g.size();
    q[shift] = c;
    for (size_t i = 0; i < g.size(); ++i)
      r[shift + i] = (r[shift + i] + m - mulmod(c, g[i], m)) % m;
    mp_trim(r);
  }
  mp_trim(q);
}

MPoly mp_mod(const MPoly& f, const MPoly& g, u64 m) {
  MPoly q, r;
  mp_divrem(f, g, q, r, m);
  return r;
}

MPoly mp_gcd(const MPoly& a, const MPoly& b, u64 m) {
  MPoly f = a, g = b;
  mp_trim(f);
  mp_trim(g);
  while (!g.empty()) {
    MPoly r = mp_mod(f, g, m);
    f = g;
    g = r;
  }
  return f.empty() ? f : mp_make_monic(f, m);
}

MPoly mp_mulmod(const MPoly& a, const MPoly& b, const MPoly& f, u64 m) {
  return mp_mod(mp_mul(a, b, m), f, m);
}

MPoly mp_powmod(MPoly base, const Int& exp, const MPoly& f, u64 m) {
  MPoly r = {1};
  base = mp_mod(base, f, m);
  Int e = exp;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mp_mulmod(r, base, f, m);
    base = mp_mulmod(base, base, f, m);
    e >>= 1;
  }
  return r;
}

MPoly mp_compose_mod(const MPoly& g, const MPoly& h, const MPoly& f, u64 m) {
  MPoly r;
  for (size_t i = g.size(); i-- > 0;) {
    r = mp_mulmod(r, h, f, m);
    if (g[i]) r = mp_add(r, {g[i]}, m);
  }
  return r;
}

u64 mp_eval(const MPoly& f, u64 x, u64 m) {
  u64 r = 0;
  for (size_t i = f.size(); i-- > 0;) r = (mulmod(r, x, m) + f[i]) % m;
  return r;
}

std::optional<u64> mp_inv_elem(const MPoly& a, const MPoly& f, u64 m, MPoly& inv) {
  // Extended Euclid in F_m[x]; returns 1 and sets inv if gcd(a, f) = 1.
  MPoly r0 = f, r1 = mp_mod(a, f, m);
  MPoly t0 = {}, t1 = {1};
  while (!r1.empty()) {
    MPoly q, r2;
    mp_divrem(r0, r1, q, r2, m);
    MPoly t2 = mp_sub(t0, mp_mul(q, t1, m), m);
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (mp_deg(r0) != 0) return std::nullopt;
  u64 c = invmod(r0[0], m);
  inv = t0;
  for (auto& x : inv) x = mulmod(x, c, m);
  return 1;
}

namespace {

MPoly mp_derivative(const MPoly& f, u64 m) {
  if (f.size() <= 1) return {};
  MPoly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = mulmod(f[i], i % m, m);
  mp_trim(r);
  return r;
}

}  // namespace

bool mp_is_squarefree(const MPoly& f, u64 m) {
  if (f.empty()) return false;
  MPoly g = mp_gcd(f, mp_derivative(f, m), m);
  return mp_deg(g) == 0;
}

namespace {

// Splits a monic squarefree product of degree-d irreducibles.
void edf(const MPoly& f, int d, u64 m, Rng& rng, std::vector<MPoly>& out) {
  if (mp_deg(f) == d) {
    out.push_back(f);
    return;
  }
  Int e = (Int(1) << 1);  // placeholder, set below
  // exponent (m^d - 1)/2
  Int md = 1;
  for (int i = 0; i < d; ++i) md *= (unsigned long)m;
  e = (md - 1) / 2;
  while (true) {
    MPoly a(mp_deg(f), 0);
    for (auto& c : a) c = rng.below(m);
    mp_trim(a);
    if (mp_deg(a) < 1) continue;
    MPoly g = mp_gcd(f, a, m);
    if (mp_deg(g) > 0 && mp_deg(g) < mp_deg(f)) {
      edf(g, d, m, rng, out);
      MPoly q, r;
      mp_divrem(f, g, q, r, m);
      edf(q, d, m, rng, out);
      return;
    }
    MPoly b = mp_powmod(a, e, f, m);
    b = mp_sub(b, {1}, m);
    g = mp_gcd(f, b, m);
    if (mp_deg(g) > 0 && mp_deg(g) < mp_deg(f)) {
      edf(g, d, m, rng, out);
      MPoly q, r;
      mp_divrem(f, g, q, r, m);
      edf(q, d, m, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<MPoly> mp_factor_squarefree(const MPoly& f0, u64 m) {
  MPoly f = mp_make_monic(f0, m);
  std::vector<MPoly> out;
  // Distinct-degree stage.
  MPoly h = {0, 1};  // x
  MPoly rest = f;
  int d = 0;
  u64 seed = 0x5eed;
  for (const u64 c : f) seed = splitmix64(seed ^ c);
  Rng rng(seed ^ m);
  while (mp_deg(rest) > 0) {
    ++d;
    if (2 * d > mp_deg(rest)) {
      out.push_back(rest);
      break;
    }
    h = mp_powmod(h, Int((unsigned long)m), rest, m);
    MPoly hx = mp_sub(h, {0, 1}, m);
    MPoly g = mp_gcd(rest, hx, m);
    if (mp_deg(g) > 0) {
      edf(g, d, m, rng, out);
      MPoly q, r;
      mp_divrem(rest, g, q, r, m);
      rest = q;
      h = mp_mod(h, rest, m);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> mp_degree_pattern(const MPoly& f, u64 m) {
  std::vector<int> pat;
  for (const MPoly& g : mp_factor_squarefree(f, m)) pat.push_back(mp_deg(g));
  std::sort(pat.begin(), pat.end());
  return pat;
}

std::vector<u64> mp_roots(const MPoly& f, u64 m) {
  std::vector<u64> roots;
  MPoly x = {0, 1};
  MPoly xm = mp_powmod(x, Int((unsigned long)m), f, m);
  MPoly g = mp_gcd(f, mp_sub(xm, x, m), m);
  if (mp_deg(g) < 1) return roots;
  for (const MPoly& lin : mp_factor_squarefree(g, m)) {
    // lin = x + c, root = m - c
    roots.push_back((m - lin[0]) % m);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---- Hensel ------------------------------------------------------------------

namespace {

ZPoly zp_mod_reduce(ZPoly f, const Int& M) {
  for (auto& c : f) {
    c %= M;
    if (c < 0) c += M;
  }
  zp_trim(f);
  return f;
}

ZPoly zp_from_mp(const MPoly& f) {
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = Int((unsigned long)f[i]);
  return r;
}

// divrem modulo M by a monic divisor.
void zpm_divrem(const ZPoly& f, const ZPoly& g, const Int& M, ZPoly& q, ZPoly& r) {
  r = f;
  zp_trim(r);
  q.assign(r.size() > g.size() ? r.size() - g.size() + 1 : 1, Int(0));
  while ((int)r.size() >= (int)g.size() && !r.empty()) {
    Int c = r.back() % M;
    size_t shift = r.size() - g.size();
    q[shift] = c;
    for (size_t i = 0; i < g.size(); ++i) {
      r[shift + i] = (r[shift + i] - c * g[i]) % M;
      if (r[shift + i] < 0) r[shift + i] += M;
    }
    zp_trim(r);
  }
  zp_trim(q);
  q = zp_mod_reduce(std::move(q), M);
}

}  // namespace

HenselPair hensel_lift(const ZPoly& F, const MPoly& g0, const MPoly& h0,
                       u64 m, const Int& target) {
  // Bezout data mod m: s*g + t*h = 1.
  MPoly s0, t0;
  {
    MPoly r0 = g0, r1 = h0;
    MPoly a0 = {1}, a1 = {};
    MPoly b0 = {}, b1 = {1};
    while (!r1.empty()) {
      MPoly q, r2;
      mp_divrem(r0, r1, q, r2, m);
      MPoly a2 = mp_sub(a0, mp_mul(q, a1, m), m);
      MPoly b2 = mp_sub(b0, mp_mul(q, b1, m), m);
      r0 = r1; r1 = r2;
      a0 = a1; a1 = a2;
      b0 = b1; b1 = b2;
    }
    if (mp_deg(r0) != 0) throw std::logic_error("hensel_lift: factors not coprime");
    u64 c = invmod(r0[0], m);
    for (auto& x : a0) x = mulmod(x, c, m);
    for (auto& x : b0) x = mulmod(x, c, m);
    s0 = a0;
    t0 = b0;
  }

  ZPoly g = zp_from_mp(mp_make_monic(g0, m));
  ZPoly h = zp_from_mp(mp_make_monic(h0, m));
  ZPoly s = zp_from_mp(s0), t = zp_from_mp(t0);
  Int M((unsigned long)m);

  while (M < target) {
    Int M2 = M * M;
    // e = F - g h mod M2
    ZPoly e = zp_mod_reduce(zp_sub(F, zp_mul(g, h)), M2);
    ZPoly q, r;
    zpm_divrem(zp_mod_reduce(zp_mul(s, e), M2), h, M2, q, r);
    ZPoly gstar = zp_mod_reduce(zp_add(zp_add(g, zp_mul(t, e)), zp_mul(q, g)), M2);
    ZPoly hstar = zp_mod_reduce(zp_add(h, r), M2);
    // Coefficients of gstar above deg(g) vanish mod M2; drop them.
    if ((int)gstar.size() > (int)g.size()) gstar.resize(g.size());
    zp_trim(gstar);
    // Refresh Bezout: b = s gstar + t hstar - 1
    ZPoly b = zp_mod_reduce(
        zp_sub(zp_add(zp_mul(s, gstar), zp_mul(t, hstar)), ZPoly{Int(1)}), M2);
    ZPoly c, d;
    zpm_divrem(zp_mod_reduce(zp_mul(s, b), M2), hstar, M2, c, d);
    ZPoly sstar = zp_mod_reduce(zp_sub(s, d), M2);
    ZPoly tstar = zp_mod_reduce(zp_sub(zp_sub(t, zp_mul(t, b)), zp_mul(c, gstar)), M2);
    g = gstar;
    h = hstar;
    s = sstar;
    t = tstar;
    M = M2;
  }
  return {g, h, M};
}

Int hensel_lift_root(const ZPoly& F, u64 r0, u64 m, const Int& target, Int& modulus_out) {
  ZPoly Fp = zp_derivative(F);
  Int M((unsigned long)m);
  Int r((unsigned long)r0);
  // Newton iteration doubles the modulus each step; the derivative inverse
  // is lifted alongside.
  Int d = zp_eval(Fp, r) % M;
  if (d < 0) d += M;
  Int dinv((unsigned long)invmod(d.get_ui() % m, m));
  while (M < target) {
    Int M2 = M * M;
    dinv = dinv * (2 - (zp_eval(Fp, r) % M2) * dinv) % M2;
    if (dinv < 0) dinv += M2;
    r = (r - (zp_eval(F, r) % M2) * dinv) % M2;
    if (r < 0) r += M2;
    dinv = dinv * (2 - (zp_eval(Fp, r) % M2) * dinv) % M2;
    if (dinv < 0) dinv += M2;
    M = M2;
  }
  modulus_out = M;
  return r;
}

// ---- quotient ring -----------------------------------------------------------

ZPoly QuotRing::reduce(ZPoly f) const {
  ZPoly q, r;
  for (auto& c : f) {
    c %= M;
    if (c < 0) c += M;
  }
  zp_trim(f);
  zpm_divrem(f, modulus, M, q, r);
  return r;
}

ZPoly QuotRing::add(const ZPoly& a, const ZPoly& b) const { return reduce(zp_add(a, b)); }
ZPoly QuotRing::sub(const ZPoly& a, const ZPoly& b) const { return reduce(zp_sub(a, b)); }
ZPoly QuotRing::mul(const ZPoly& a, const ZPoly& b) const { return reduce(zp_mul(a, b)); }

ZPoly QuotRing::eval_poly(const ZPoly& f, const ZPoly& a) const {
  ZPoly r;
  for (size_t i = f.size(); i-- > 0;) {
    r = mul(r, a);
    r = add(r, ZPoly{f[i]});
  }
  return r;
}

}  // namespace ecsym
