#include <stdexcept>
#include <string>

#include "ecsym/curve.hpp"
#include "ecsym/modpoly.hpp"

namespace ecsym {
namespace {

// Long Weierstrass model under (r, s, t) substitutions with u = 1.
struct WModel {
  Int a1, a2, a3, a4, a6;

  void transform(const Int& r, const Int& s, const Int& t) {
    Int A1 = a1 + 2 * s;
    Int A2 = a2 - s * a1 + 3 * r - s * s;
    Int A3 = a3 + r * a1 + 2 * t;
    Int A4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    Int A6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    a1 = A1; a2 = A2; a3 = A3; a4 = A4; a6 = A6;
  }

  Int b2() const { return a1 * a1 + 4 * a2; }
  Int b4() const { return 2 * a4 + a1 * a3; }
  Int b6() const { return a3 * a3 + 4 * a6; }
  Int b8() const { return (b2() * b6() - b4() * b4()) / 4; }
  Int c4() const { return b2() * b2() - 24 * b4(); }
};

u64 modq(const Int& v, const Int& q) {
  Int r = v % q;
  if (r < 0) r += q;
  return r.get_ui();
}

Int exact_div(const Int& a, const Int& b) {
  if (a % b != 0) throw std::logic_error("tate_local: expected divisibility failed");
  return a / b;
}

// Valuation with v(0) treated as +infinity.
int vq(const Int& x, const Int& q) {
  return x == 0 ? INT_MAX : valuation(x, q);
}

// Moves the unique singular point of the reduction mod q to (0, 0).
void translate_singular(WModel& w, const Int& q) {
  if (q == 2) {
    for (int x = 0; x < 2; x++)
      for (int y = 0; y < 2; y++) {
        Int F = Int(y) * y + w.a1 * x * y + w.a3 * y - Int(x) * x * x - w.a2 * x * x -
                w.a4 * x - w.a6;
        Int Fx = w.a1 * y + Int(x) * x + w.a4;
        Int Fy = w.a1 * x + w.a3;
        if (F % 2 == 0 && Fx % 2 == 0 && Fy % 2 == 0) {
          w.transform(x, 0, y);
          return;
        }
      }
    throw std::logic_error("tate_local: no singular point mod 2");
  }
  u64 m = q.get_ui();
  // (2y + a1 x + a3)^2 = G(x) = 4x^3 + b2 x^2 + 2 b4 x + b6
  MPoly G = {modq(w.b6(), q), modq(2 * w.b4(), q), modq(w.b2(), q), 4 % m};
  MPoly dG = {modq(2 * w.b4(), q), modq(2 * w.b2(), q), 12 % m};
  mp_trim(dG);
  MPoly g = mp_gcd(G, dG, m);
  std::vector<u64> roots = mp_roots(g, m);
  if (roots.empty()) throw std::logic_error("tate_local: no singular point");
  u64 x0 = roots[0];
  u64 y0 = mulmod(m - modq(w.a1 * x0 + w.a3, q), invmod(2, m), m);
  w.transform(Int(x0), 0, Int(y0));
}

// Multiplicity of the multiple root of T^3 + bT^2 + cT + d mod q, and the root.
// pre: the cubic is not separable mod q.
void multiple_root(const Int& b, const Int& c, const Int& d, const Int& q,
                   u64& root, int& mult) {
  u64 m = q.get_ui();
  std::vector<u64> cand;
  if (q == 2) {
    cand = {modq(c, q)};
  } else {
    MPoly P = {modq(d, q), modq(c, q), modq(b, q), 1};
    MPoly dP = {modq(c, q), modq(2 * b, q), 3 % m};
    mp_trim(dP);
    MPoly g = mp_gcd(P, dP, m);
    cand = mp_roots(g, m);
  }
  for (u64 r : cand) {
    // synthetic division by (T - r), counting exact divisions
    u64 coef[4] = {modq(d, q), modq(c, q), modq(b, q), 1};
    int k = 0;
    int deg = 3;
    while (deg > 0) {
      u64 rem = 0;
      u64 out[4] = {0, 0, 0, 0};
      for (int i = deg; i >= 0; i--) {
        rem = (mulmod(rem, r, m) + coef[i]) % m;
        if (i > 0) out[i - 1] = rem;
      }
      if (rem != 0) break;
      k++;
      for (int i = 0; i < 4; i++) coef[i] = out[i];
      deg--;
    }
    if (k >= 2) {
      root = r;
      mult = k;
      return;
    }
  }
  throw std::logic_error("tate_local: multiple root not found");
}

}  // namespace

ReductionData tate_local(const RationalEC& E, const Int& q) {
  if (!q.fits_ulong_p()) throw std::invalid_argument("tate_local: prime too large");
  WModel w{E.a1(), E.a2(), E.a3(), E.a4(), E.a6()};
  const int n = valuation(E.disc(), q);
  ReductionData rd;
  rd.q = q;
  rd.disc_exp = n;
  if (n == 0) {
    rd.kind = ReductionKind::Good;
    rd.cond_exp = 0;
    rd.kodaira = "I0";
    return rd;
  }
  const bool q2 = (q == 2);
  const u64 m = q.get_ui();

  if (vq(E.c4(), q) == 0) {
    translate_singular(w, q);
    bool split;
    if (q2) {
      split = (w.a2 % 2 == 0);  // a1 is odd here, T^2 + a1 T - a2 splits iff 2 | a2
    } else {
      split = (legendre(modq(w.b2(), q), m) == 1);
    }
    rd.kind = split ? ReductionKind::MultiplicativeSplit : ReductionKind::MultiplicativeNonSplit;
    rd.cond_exp = 1;
    rd.kodaira = "I" + std::to_string(n);
    return rd;
  }

  rd.kind = ReductionKind::Additive;
  translate_singular(w, q);
  auto finish = [&](int mcomp, const std::string& kod) {
    rd.cond_exp = n - mcomp + 1;  // Ogg
    rd.kodaira = kod;
    return rd;
  };

  if (vq(w.a6, q) < 2) return finish(1, "II");
  if (vq(w.b8(), q) < 3) return finish(2, "III");
  if (vq(w.b6(), q) < 3) return finish(3, "IV");

  // normalize: q | a1, a2; q^2 | a3, a4; q^3 | a6
  Int s = q2 ? Int(modq(w.a2, q)) : Int((m - mulmod(modq(w.a1, q), invmod(2, m), m)) % m);
  w.transform(0, s, 0);
  Int qq = q * q;
  Int t;
  if (q2) {
    t = Int(modq(exact_div(w.a3, 2), q));
  } else {
    Int inv2q = 0;
    mpz_class two = 2;
    if (mpz_invert(inv2q.get_mpz_t(), two.get_mpz_t(), qq.get_mpz_t()) == 0)
      throw std::logic_error("tate_local: inv2 mod q^2");
    t = ((-w.a3 % qq + qq) % qq) * inv2q % qq;
  }
  w.transform(0, 0, t);

  Int b = exact_div(w.a2, q);
  Int c = exact_div(w.a4, qq);
  Int d = exact_div(w.a6, qq * q);

  // cubic T^3 + bT^2 + cT + d mod q
  bool separable;
  if (q2) {
    // multiple root mod 2 must be T = c; P(c) = bc + d mod 2
    separable = ((modq(b, q) * modq(c, q) + modq(d, q)) % 2 != 0);
  } else {
    MPoly P = {modq(d, q), modq(c, q), modq(b, q), 1};
    MPoly dP = {modq(c, q), modq(2 * b, q), 3 % m};
    mp_trim(dP);
    MPoly g = mp_gcd(P, dP, m);
    separable = mp_deg(g) < 1;
  }
  if (separable) return finish(5, "I0*");

  u64 mu;
  int mult;
  multiple_root(b, c, d, q, mu, mult);

  if (mult == 2) {
    w.transform(q * Int(mu), 0, 0);
    Int mx = qq, my = qq;
    int ix = 3, iy = 3;
    int guard = n + 3;
    while (guard-- > 0) {
      Int a2t = exact_div(w.a2, q);
      Int a3t = exact_div(w.a3, my);
      Int a6t = exact_div(w.a6, mx * my);
      if ((a3t * a3t + 4 * a6t) % q != 0) break;
      u64 y0 = q2 ? modq(a6t, q)
                  : (m - mulmod(modq(a3t, q), invmod(2, m), m)) % m;
      w.transform(0, 0, my * Int(y0));
      my *= q;
      iy++;
      Int a4t = exact_div(w.a4, q * mx);
      a6t = exact_div(w.a6, mx * my);
      if ((a4t * a4t - 4 * a2t * a6t) % q != 0) break;
      u64 x1 = q2 ? modq(a6t, q)
                  : (m - mulmod(modq(a4t, q),
                                invmod(mulmod(2 % m, modq(a2t, q), m), m), m)) % m;
      w.transform(mx * Int(x1), 0, 0);
      mx *= q;
      ix++;
    }
    if (guard <= 0) throw std::logic_error("tate_local: I_n* loop did not terminate");
    int nu = ix + iy - 5;
    return finish(5 + nu, "I" + std::to_string(nu) + "*");
  }

  // triple root
  u64 rho;
  if (q2)
    rho = modq(b, q);
  else if (q == 3)
    rho = (3 - modq(d, q)) % 3;
  else
    rho = (m - mulmod(modq(b, q), invmod(3 % m, m), m)) % m;
  w.transform(q * Int(rho), 0, 0);

  Int q4 = qq * qq;
  Int A3 = exact_div(w.a3, qq);
  Int A6 = exact_div(w.a6, q4);
  if ((A3 * A3 + 4 * A6) % q != 0) return finish(7, "IV*");

  u64 y0 = q2 ? modq(A6, q) : (m - mulmod(modq(A3, q), invmod(2, m), m)) % m;
  w.transform(0, 0, qq * Int(y0));

  if (vq(w.a4, q) == 3) return finish(8, "III*");
  if (vq(w.a6, q) == 5) return finish(9, "II*");
  throw std::invalid_argument("tate_local: model is not minimal at q");
}

}  // namespace ecsym
