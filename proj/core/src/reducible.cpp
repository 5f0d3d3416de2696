#include "ecsym/reducible.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

#include "ecsym/galois.hpp"
#include "ecsym/isogeny.hpp"
#include "ecsym/modpoly.hpp"

namespace ecsym {

namespace {

// Primitive integer model of a rational polynomial, leading coefficient > 0.
ZPoly clear_denominators(const QPoly& f) {
  Int den = 1;
  for (const Rat& c : f) {
    Int d = c.get_den();
    den = den / gcd(den, d) * d;
  }
  ZPoly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Rat c = f[i] * Rat(den);
    g[i] = c.get_num();
  }
  zp_trim(g);
  g = zp_primitive(g);
  if (!g.empty() && g.back() < 0) g = zp_scale(g, Int(-1));
  return g;
}

Int int_invmod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::logic_error("int_invmod: element not invertible");
  return r;
}

}  // namespace

SevenIsogenyField second_isogeny_field(const RationalEC& E) {
  ZPoly P = fricke_numerator(E.j());
  auto roots = zp_rational_roots(P);
  if (roots.empty())
    throw std::invalid_argument("second_isogeny_field: curve has no rational 7-isogeny");
  if (roots.size() > 1 || roots[0].second != 1)
    throw std::invalid_argument("second_isogeny_field: kernel parameter is not unique");
  Rat t0 = roots[0].first;
  QPoly lin{-t0, Rat(1)};
  auto quo = qp_divexact(qp_from(P), lin);
  if (!quo)
    throw std::logic_error("second_isogeny_field: rational root does not divide");
  ZPoly f = clear_denominators(*quo);
  if (zp_deg(f) != 7)
    throw std::logic_error("second_isogeny_field: cofactor degree is not 7");
  auto cert = zp_certify_irreducible(f);
  if (cert.verdict == IrredVerdict::Reducible)
    throw std::invalid_argument("second_isogeny_field: cofactor factors over Q");
  if (cert.verdict != IrredVerdict::Irreducible)
    throw std::runtime_error("second_isogeny_field: irreducibility not certified");
  return SevenIsogenyField{std::move(f)};
}

namespace {

// Short-model data for evaluating Frobenius on a rational 7-isogeny kernel.
struct KernelData {
  Int A, B;
  QPoly k;         // monic kernel cubic on y^2 = x^3 + Ax + B
  Int den;         // lcm of kernel coefficient denominators
  Int disc_short;  // nonzero at primes of good short-model reduction
  ZPoly W3, U4, U6, N2;
};

KernelData make_kernel_data(const RationalEC& E) {
  KernelData K;
  integral_short(E, K.A, K.B);
  auto kers = rational_kernel_polys(E, 7);
  if (kers.size() != 1)
    throw std::invalid_argument("isogeny character: curve needs exactly one rational 7-isogeny");
  K.k = kers[0];
  K.den = 1;
  for (const Rat& c : K.k) {
    Int d = c.get_den();
    K.den = K.den / gcd(K.den, d) * d;
  }
  K.disc_short = Int(-64) * K.A * K.A * K.A - Int(432) * K.B * K.B;
  K.W3 = division_poly_odd(K.A, K.B, 3);
  K.U4 = division_poly_even(K.A, K.B, 4);
  K.U6 = division_poly_even(K.A, K.B, 6);
  // numerator of x([2]P): x^4 - 2Ax^2 - 8Bx + A^2, denominator 4f
  K.N2 = ZPoly{K.A * K.A, Int(-8) * K.B, Int(-2) * K.A, Int(0), Int(1)};
  return K;
}

// Frobenius eigenvalue m in (Z/7)^* with Frob_ell = [m] on the kernel,
// decided inside R = F_ell[x]/(kbar): x^ell against x([m]P) and
// f^((ell-1)/2) against the y-ratio of [m]. 0 means ell unusable.
int character_at(const KernelData& K, u64 ell) {
  if (ell == 7 || ell < 3 || !is_prime_u64(ell))
    throw std::invalid_argument("isogeny character: need an odd prime != 7");
  if (K.den % Int(ell) == 0 || K.disc_short % Int(ell) == 0) return 0;

  const u64 m = ell;
  MPoly kb(K.k.size());
  for (std::size_t i = 0; i < K.k.size(); ++i) {
    u64 nu = mpz_fdiv_ui(K.k[i].get_num().get_mpz_t(), m);
    u64 de = mpz_fdiv_ui(K.k[i].get_den().get_mpz_t(), m);
    kb[i] = mulmod(nu, invmod(de, m), m);
  }
  if (!mp_is_squarefree(kb, m)) return 0;

  auto red = [&](const ZPoly& f) { return mp_mod(mp_from(f, m), kb, m); };
  MPoly fx = red(ZPoly{K.B, K.A, Int(0), Int(1)});
  MPoly w3 = red(K.W3), u4 = red(K.U4), u6 = red(K.U6), n2 = red(K.N2);

  auto inv = [&](const MPoly& a, MPoly& out) { return mp_inv_elem(a, kb, m, out).has_value(); };
  auto eq = [&](const MPoly& a, const MPoly& b) { return mp_sub(a, b, m).empty(); };
  auto neg = [&](const MPoly& a) { return mp_sub(MPoly{}, a, m); };

  MPoly s = mp_powmod(fx, Int((ell - 1) / 2), kb, m);
  MPoly xl = mp_powmod(MPoly{0, 1}, Int(ell), kb, m);
  MPoly xi{0, 1};
  MPoly one{1};

  if (eq(xl, xi)) {
    if (eq(s, one)) return 1;
    if (eq(s, neg(one))) return 6;
    return 0;
  }
  {
    MPoly f4 = mp_add(mp_add(fx, fx, m), mp_add(fx, fx, m), m);
    MPoly di;
    if (inv(f4, di) && eq(xl, mp_mulmod(n2, di, kb, m))) {
      MPoly f2 = mp_mulmod(fx, fx, kb, m);
      MPoly d32 = mp_mulmod(MPoly{32 % m}, f2, kb, m);
      MPoly i32;
      if (!inv(d32, i32)) return 0;
      MPoly h2 = mp_mulmod(u4, i32, kb, m);
      if (eq(s, h2)) return 2;
      if (eq(s, neg(h2))) return 5;
      return 0;
    }
  }
  {
    MPoly w32 = mp_mulmod(w3, w3, kb, m);
    MPoly wi;
    if (inv(w32, wi)) {
      MPoly t = mp_mulmod(mp_mulmod(fx, u4, kb, m), wi, kb, m);
      t = mp_add(t, t, m);
      if (eq(xl, mp_sub(xi, t, m))) {
        MPoly w34 = mp_mulmod(w32, w32, kb, m);
        MPoly dd = mp_add(w34, w34, m);
        MPoly di;
        if (!inv(dd, di)) return 0;
        MPoly h3 = mp_mulmod(u6, di, kb, m);
        if (eq(s, h3)) return 3;
        if (eq(s, neg(h3))) return 4;
        return 0;
      }
    }
  }
  return 0;
}

}  // namespace

int isogeny_character(const RationalEC& E, u64 ell) {
  return character_at(make_kernel_data(E), ell);
}

CharAlign align_characters(const RationalEC& E, const RationalEC& Ep, int samples) {
  KernelData KE = make_kernel_data(E);
  KernelData KP = make_kernel_data(Ep);
  bool keep = true, swapped = true;
  int got = 0;
  u64 ell = 2;
  for (int guard = 0; got < samples && guard < 20000; ++guard) {
    ell = next_prime_above(ell);
    if (ell == 7) continue;
    int c1 = character_at(KE, ell);
    if (c1 == 0) continue;
    int c1p = character_at(KP, ell);
    if (c1p == 0) continue;
    // partner character: c1p * c2p = ell in (Z/7)^*
    int c2p = int(mulmod(ell % 7, invmod(u64(c1p), 7), 7));
    if (c1 != c1p) keep = false;
    if (c1 != c2p) swapped = false;
    if (!keep && !swapped)
      throw std::logic_error("align_characters: kernels carry incompatible characters");
    ++got;
  }
  if (got < samples)
    throw std::runtime_error("align_characters: ran out of usable primes");
  return keep ? CharAlign::Keep : CharAlign::Swap;
}

namespace {

// Arithmetic in A = F_q[x]/(mod1), mod1 monic irreducible of degree 7.
struct Ext {
  u64 q;
  MPoly mod1;
  MPoly add(const MPoly& a, const MPoly& b) const { return mp_add(a, b, q); }
  MPoly sub(const MPoly& a, const MPoly& b) const { return mp_sub(a, b, q); }
  MPoly mul(const MPoly& a, const MPoly& b) const { return mp_mulmod(a, b, mod1, q); }
  bool inv(const MPoly& a, MPoly& out) const {
    return mp_inv_elem(a, mod1, q, out).has_value();
  }
};

// Dense little-endian polynomials over A.
using EPoly = std::vector<MPoly>;

void etrim(EPoly& f) {
  while (!f.empty() && f.back().empty()) f.pop_back();
}

int edeg(const EPoly& f) { return int(f.size()) - 1; }

EPoly emul(const Ext& A, const EPoly& a, const EPoly& b) {
  if (a.empty() || b.empty()) return {};
  EPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].empty()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = A.add(r[i + j], A.mul(a[i], b[j]));
  }
  etrim(r);
  return r;
}

// Remainder of f by monic g.
EPoly emod(const Ext& A, EPoly f, const EPoly& g) {
  etrim(f);
  while (f.size() >= g.size()) {
    MPoly c = f.back();
    std::size_t shift = f.size() - g.size();
    if (!c.empty())
      for (std::size_t i = 0; i + 1 < g.size(); ++i)
        f[shift + i] = A.sub(f[shift + i], A.mul(c, g[i]));
    f.pop_back();
    etrim(f);
  }
  return f;
}

// Exact quotient of f by monic g.
EPoly ediv(const Ext& A, EPoly f, const EPoly& g) {
  etrim(f);
  EPoly quo(f.size() >= g.size() ? f.size() - g.size() + 1 : 0);
  while (f.size() >= g.size()) {
    MPoly c = f.back();
    std::size_t shift = f.size() - g.size();
    quo[shift] = c;
    if (!c.empty())
      for (std::size_t i = 0; i + 1 < g.size(); ++i)
        f[shift + i] = A.sub(f[shift + i], A.mul(c, g[i]));
    f.pop_back();
    etrim(f);
  }
  etrim(quo);
  return quo;
}

bool emonicize(const Ext& A, EPoly& f) {
  etrim(f);
  if (f.empty()) return true;
  MPoly lcinv;
  if (!A.inv(f.back(), lcinv)) return false;
  for (auto& c : f) c = A.mul(c, lcinv);
  return true;
}

EPoly egcd(const Ext& A, EPoly a, EPoly b) {
  if (!emonicize(A, a) || !emonicize(A, b)) return {};
  while (!b.empty()) {
    EPoly r = emod(A, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
    if (!emonicize(A, b)) return {};
  }
  return a;
}

EPoly epowmod(const Ext& A, EPoly base, Int e, const EPoly& g) {
  EPoly r{MPoly{1}};
  base = emod(A, std::move(base), g);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = emod(A, emul(A, r, base), g);
    e >>= 1;
    if (e > 0) base = emod(A, emul(A, base, base), g);
  }
  return r;
}

MPoly encode_elem(u64 n, u64 q) {
  MPoly c;
  while (n) {
    c.push_back(n % q);
    n /= q;
  }
  mp_trim(c);
  return c;
}

// All roots of monic G over A, where G splits into distinct linear factors.
// Only the root reducing the global embedding reconstructs rationally, so
// callers must try every one.  Shifts Y + c use c outside F_q: constant
// shifts never separate Frobenius-conjugate roots.
std::vector<MPoly> find_ext_roots(const Ext& A, EPoly G) {
  std::vector<MPoly> roots;
  std::vector<EPoly> work;
  work.push_back(std::move(G));
  Int card = 1;
  for (int i = 0; i < mp_deg(A.mod1); ++i) card *= Int(A.q);
  Int e = (card - 1) / 2;
  u64 counter = A.q;
  for (int budget = 600; !work.empty() && budget > 0; --budget) {
    EPoly g = std::move(work.back());
    work.pop_back();
    if (edeg(g) <= 0) continue;
    if (edeg(g) == 1) {
      roots.push_back(A.sub(MPoly{}, g[0]));
      continue;
    }
    MPoly c = encode_elem(counter++, A.q);
    EPoly u{c, MPoly{1}};
    EPoly w = epowmod(A, u, e, g);
    if (w.empty()) w.push_back(MPoly{});
    w[0] = A.sub(w[0], MPoly{1});
    etrim(w);
    EPoly h = egcd(A, w, g);
    int dh = edeg(h);
    if (dh <= 0 || dh >= edeg(g)) {
      work.push_back(std::move(g));  // unlucky shift, retry with the next one
      continue;
    }
    EPoly rest = ediv(A, g, h);
    work.push_back(std::move(h));
    work.push_back(std::move(rest));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

QuotRing make_ring(const ZPoly& f1, const Int& M) {
  Int lcinv = int_invmod(((f1.back() % M) + M) % M, M);
  ZPoly mon(f1.size());
  for (std::size_t i = 0; i < f1.size(); ++i)
    mon[i] = ((f1[i] * lcinv) % M + M) % M;
  mon.back() = 1;
  return QuotRing{M, std::move(mon)};
}

ZPoly lift_coeffs(const MPoly& a) {
  ZPoly f(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) f[i] = Int(a[i]);
  return f;
}

// Evaluate f (over Z) at a in F_q[x]/(mod1).
MPoly eval_ext(const ZPoly& f, const MPoly& a, const MPoly& mod1, u64 q) {
  MPoly acc;
  for (int i = zp_deg(f); i >= 0; --i) {
    acc = mp_mulmod(acc, a, mod1, q);
    u64 c = mpz_fdiv_ui(f[i].get_mpz_t(), q);
    acc = mp_add(acc, MPoly{c}, q);
  }
  return acc;
}

// Newton-lift the mod-q root s0 of f2 in F_q[x]/(f1) to precision
// q^(2^k) >= 2^target_bits, then rationally reconstruct the embedding.
// The inverse of f2'(s) rides along: w <- w(2 - f2'(s) w).
std::optional<QPoly> lift_and_reconstruct(const ZPoly& f1, const ZPoly& f2, u64 q,
                                          const MPoly& s0, int target_bits) {
  ZPoly f2d = zp_derivative(f2);
  MPoly mod1 = mp_make_monic(mp_from(f1, q), q);
  MPoly d0 = eval_ext(f2d, s0, mod1, q);
  MPoly w0;
  if (!mp_inv_elem(d0, mod1, q, w0)) return std::nullopt;

  Int M(q);
  ZPoly s = lift_coeffs(s0);
  ZPoly w = lift_coeffs(w0);
  Int target = Int(1) << target_bits;
  while (M < target) {
    M = M * M;
    QuotRing R = make_ring(f1, M);
    ZPoly ds = R.eval_poly(f2d, s);
    ZPoly two{Int(2)};
    w = R.mul(w, R.sub(two, R.mul(ds, w)));
    ZPoly v = R.eval_poly(f2, s);
    s = R.sub(s, R.mul(v, w));
  }

  Int half = (M - 1) / 2;
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  QPoly g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto c = rational_reconstruct(s[i], M, bound, bound);
    if (!c) return std::nullopt;
    g[i] = *c;
  }
  qp_trim(g);
  return g;
}

// Exact check f2(g) == 0 in Q[t]/(f1).
bool verify_embedding(const ZPoly& f1, const ZPoly& f2, const QPoly& g) {
  QPoly f1q = qp_from(f1);
  QPoly acc;
  for (int i = zp_deg(f2); i >= 0; --i) {
    acc = qp_mul(acc, g);
    if (acc.empty()) acc.push_back(Rat(0));
    acc[0] += Rat(f2[i]);
    QPoly quo, rem;
    qp_divrem(acc, f1q, quo, rem);
    acc = std::move(rem);
  }
  qp_trim(acc);
  return acc.empty();
}

}  // namespace

FieldIsoResult fields_isomorphic(const SevenIsogenyField& F1, const SevenIsogenyField& F2) {
  const ZPoly& f1 = F1.f;
  const ZPoly& f2 = F2.f;
  if (zp_deg(f1) != 7 || zp_deg(f2) != 7)
    throw std::invalid_argument("fields_isomorphic: inputs must have degree 7");

  FieldIsoResult res;
  if (f1 == f2) {
    res.verdict = FieldIso::Yes;
    res.embedding = QPoly{Rat(0), Rat(1)};
    return res;
  }

  // Degree patterns must agree at every unramified prime; one mismatch on
  // squarefree reductions refutes the isomorphism outright.
  Int lc12 = f1.back() * f2.back();
  u64 inert_q = 0;
  int agreements = 0;
  for (u64 q : primes_up_to(5000)) {
    if (q < 3 || lc12 % Int(q) == 0) continue;
    MPoly m1 = mp_from(f1, q);
    MPoly m2 = mp_from(f2, q);
    if (!mp_is_squarefree(m1, q) || !mp_is_squarefree(m2, q)) continue;
    auto p1 = mp_degree_pattern(m1, q);
    auto p2 = mp_degree_pattern(m2, q);
    if (p1 != p2) {
      res.verdict = FieldIso::No;
      res.witness = q;
      return res;
    }
    ++agreements;
    if (inert_q == 0 && p1.size() == 1 && p1[0] == 7) inert_q = q;
    if (inert_q != 0 && agreements >= 40) break;
  }
  if (inert_q == 0) {
    res.verdict = FieldIso::Undetermined;
    return res;
  }

  // Inert q turns the embedding equation into 7 scalar congruences, one per
  // power-basis coordinate, each solvable by rational reconstruction.
  Ext A{inert_q, mp_make_monic(mp_from(f1, inert_q), inert_q)};
  MPoly m2 = mp_make_monic(mp_from(f2, inert_q), inert_q);
  EPoly G(m2.size());
  for (std::size_t i = 0; i < m2.size(); ++i)
    if (m2[i] != 0) G[i] = MPoly{m2[i]};
  auto roots = find_ext_roots(A, std::move(G));
  if (roots.empty()) {
    res.verdict = FieldIso::Undetermined;
    return res;
  }

  for (int bits : {256, 1024, 4096}) {
    for (const MPoly& s0 : roots) {
      auto g = lift_and_reconstruct(f1, f2, inert_q, s0, bits);
      if (g && verify_embedding(f1, f2, *g)) {
        res.verdict = FieldIso::Yes;
        res.witness = inert_q;
        res.embedding = std::move(*g);
        return res;
      }
    }
  }
  res.verdict = FieldIso::Undetermined;
  return res;
}

ReducibleDecision reducible_congruent(const RationalEC& E, const RationalEC& Ep) {
  ReducibleDecision d;
  CharAlign a = align_characters(E, Ep);
  RationalEC target = Ep;
  if (a == CharAlign::Swap) {
    auto kers = rational_kernel_polys(Ep, 7);
    if (kers.size() != 1)
      throw std::invalid_argument("reducible_congruent: partner needs exactly one rational 7-isogeny");
    target = isogenous_curve(Ep, kers[0]);
    d.swapped = true;
  }
  d.fields = fields_isomorphic(second_isogeny_field(E), second_isogeny_field(target));
  d.congruent = d.fields.verdict == FieldIso::Yes;
  return d;
}

}  // namespace ecsym
