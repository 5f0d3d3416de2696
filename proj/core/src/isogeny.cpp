#include "ecsym/isogeny.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ecsym {
namespace {

// p(x) + y q(x) with y^2 = x^3 + Ax + B.
struct YPoly {
  ZPoly p, q;
};

class DivPolys {
 public:
  DivPolys(const Int& A, const Int& B) : A_(A), B_(B), f_{B, A, Int(0), Int(1)} {}

  YPoly psi(int n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    YPoly r = compute(n);
    memo_.emplace(n, r);
    return r;
  }

 private:
  YPoly mul(const YPoly& a, const YPoly& b) const {
    YPoly r;
    r.p = zp_add(zp_mul(a.p, b.p), zp_mul(f_, zp_mul(a.q, b.q)));
    r.q = zp_add(zp_mul(a.p, b.q), zp_mul(a.q, b.p));
    zp_trim(r.p);
    zp_trim(r.q);
    return r;
  }

  YPoly sub(const YPoly& a, const YPoly& b) const {
    YPoly r{zp_sub(a.p, b.p), zp_sub(a.q, b.q)};
    zp_trim(r.p);
    zp_trim(r.q);
    return r;
  }

  YPoly compute(int n) {
    const Int& A = A_;
    const Int& B = B_;
    switch (n) {
      case 0: return {{}, {}};
      case 1: return {{Int(1)}, {}};
      case 2: return {{}, {Int(2)}};
      case 3: return {{-A * A, 12 * B, 6 * A, Int(0), Int(3)}, {}};
      case 4:
        return {{},
                {-4 * A * A * A - 32 * B * B, -16 * A * B, -20 * A * A, 80 * B,
                 20 * A, Int(0), Int(4)}};
      default: break;
    }
    int k = n / 2;
    if (n % 2 == 1) {
      YPoly a = mul(psi(k + 2), mul(psi(k), mul(psi(k), psi(k))));
      YPoly b = mul(psi(k - 1), mul(psi(k + 1), mul(psi(k + 1), psi(k + 1))));
      YPoly r = sub(a, b);
      if (!r.q.empty()) throw std::logic_error("odd division polynomial has a y part");
      return r;
    }
    YPoly inner = sub(mul(psi(k + 2), mul(psi(k - 1), psi(k - 1))),
                      mul(psi(k - 2), mul(psi(k + 1), psi(k + 1))));
    YPoly N = mul(psi(k), inner);
    if (!N.q.empty()) throw std::logic_error("even division polynomial numerator has a y part");
    // N = 2 f U_n
    ZPoly den = zp_scale(f_, Int(2));
    auto q = qp_divexact(qp_from(N.p), qp_from(den));
    if (!q) throw std::logic_error("even division polynomial: inexact division by 2f");
    ZPoly U(q->size());
    for (std::size_t i = 0; i < q->size(); i++) {
      if ((*q)[i].get_den() != 1)
        throw std::logic_error("even division polynomial: non-integral coefficient");
      U[i] = (*q)[i].get_num();
    }
    zp_trim(U);
    return {{}, U};
  }

  Int A_, B_;
  ZPoly f_;
  std::map<int, YPoly> memo_;
};

QPoly qp_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); i++) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); i++) r[i] -= b[i];
  qp_trim(r);
  return r;
}

QPoly qp_mod(const QPoly& f, const QPoly& g) {
  QPoly q, r;
  qp_divrem(f, g, q, r);
  return r;
}

std::optional<QPoly> qp_invmod(const QPoly& a, const QPoly& k) {
  QPoly r0 = k, r1 = qp_mod(a, k);
  QPoly s0, s1 = {Rat(1)};
  while (!r1.empty()) {
    QPoly q, r2;
    qp_divrem(r0, r1, q, r2);
    QPoly s2 = qp_sub(s0, qp_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (qp_deg(r0) != 0) return std::nullopt;
  Rat inv = 1 / r0[0];
  for (Rat& c : s0) c *= inv;
  return qp_mod(s0, k);
}

// x([2]P) lands back on a root of k for every root of k.
bool doubling_stable(const QPoly& k, const Int& A, const Int& B) {
  QPoly num = qp_mod(qp_from(ZPoly{A * A, -8 * B, -2 * A, Int(0), Int(1)}), k);
  QPoly den = qp_mod(qp_from(ZPoly{4 * B, 4 * A, Int(0), Int(4)}), k);
  auto dinv = qp_invmod(den, k);
  if (!dinv) return false;  // a kernel x-coordinate is 2-torsion
  QPoly z = qp_mod(qp_mul(num, *dinv), k);
  QPoly acc = {k.back()};
  for (int i = qp_deg(k) - 1; i >= 0; i--) {
    acc = qp_mod(qp_mul(acc, z), k);
    if (acc.empty()) acc = {k[i]};
    else acc[0] += k[i];
    qp_trim(acc);
  }
  return acc.empty();
}

void subset_products(const std::vector<ZPoly>& fac, std::size_t idx, int want,
                     const ZPoly& cur, std::vector<ZPoly>& out) {
  if (want == 0) {
    out.push_back(cur);
    return;
  }
  if (idx >= fac.size()) return;
  int d = zp_deg(fac[idx]);
  if (d <= want) subset_products(fac, idx + 1, want - d, zp_mul(cur, fac[idx]), out);
  subset_products(fac, idx + 1, want, cur, out);
}

}  // namespace

ZPoly division_poly_odd(const Int& A, const Int& B, int n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("division_poly_odd: n must be odd");
  DivPolys D(A, B);
  return D.psi(n).p;
}

ZPoly division_poly_even(const Int& A, const Int& B, int n) {
  if (n < 2 || n % 2 == 1) throw std::invalid_argument("division_poly_even: n must be even");
  DivPolys D(A, B);
  return D.psi(n).q;
}

std::vector<QPoly> rational_kernel_polys(const RationalEC& E, int p) {
  if (p != 2 && p != 3 && p != 5 && p != 7)
    throw std::invalid_argument("rational_kernel_polys: p must be 2, 3, 5 or 7");
  Int A, B;
  integral_short(E, A, B);
  std::vector<QPoly> out;
  if (p == 2) {
    ZPoly f = {B, A, Int(0), Int(1)};
    for (const auto& [r, mult] : zp_rational_roots(f)) {
      (void)mult;
      out.push_back({-r, Rat(1)});
    }
    return out;
  }
  ZPoly W = division_poly_odd(A, B, p);
  int d = (p - 1) / 2;
  std::vector<ZPoly> fac = zp_factors_up_to_degree(W, d);
  std::vector<ZPoly> prods;
  subset_products(fac, 0, d, ZPoly{Int(1)}, prods);
  for (const ZPoly& g : prods) {
    QPoly k = qp_from(g);
    Rat inv = 1 / k.back();
    for (Rat& c : k) c *= inv;
    if (doubling_stable(k, A, B)) out.push_back(k);
  }
  std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  return out;
}

int rational_kernel_count(const RationalEC& E, int p) {
  return (int)rational_kernel_polys(E, p).size();
}

RationalEC velu_quotient(const Rat& A, const Rat& B, const QPoly& kernel) {
  QPoly k = kernel;
  qp_trim(k);
  int d = qp_deg(k);
  if (d < 1 || k[d] != 1) throw std::invalid_argument("velu_quotient: kernel must be monic");
  Rat t, w;
  if (d == 1) {
    Rat x0 = -k[0];
    Rat fx = x0 * x0 * x0 + A * x0 + B;
    if (fx == 0) {
      t = 3 * x0 * x0 + A;  // 2-torsion generator
      w = x0 * t;
    } else {
      t = 6 * x0 * x0 + 2 * A;
      w = 4 * fx + t * x0;
    }
  } else {
    Rat e1 = -k[d - 1];
    Rat e2 = k[d - 2];
    Rat e3 = d >= 3 ? -k[d - 3] : Rat(0);
    Rat p1 = e1;
    Rat p2 = e1 * p1 - 2 * e2;
    Rat p3 = e1 * p2 - e2 * p1 + 3 * e3;
    t = 6 * p2 + 2 * A * d;
    Rat u = 4 * (p3 + A * p1 + B * d);
    w = u + 6 * p3 + 2 * A * p1;
  }
  return minimal_model(RationalEC::from_short({A - 5 * t, B - 7 * w}));
}

RationalEC isogenous_curve(const RationalEC& E, const QPoly& kernel) {
  Int A, B;
  integral_short(E, A, B);
  return velu_quotient(Rat(A), Rat(B), kernel);
}

}  // namespace ecsym
