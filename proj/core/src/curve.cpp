#include "ecsym/curve.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace ecsym {

RationalEC::RationalEC(Int a1, Int a2, Int a3, Int a4, Int a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)),
      a4_(std::move(a4)), a6_(std::move(a6)) {
  b2_ = a1_ * a1_ + 4 * a2_;
  b4_ = 2 * a4_ + a1_ * a3_;
  b6_ = a3_ * a3_ + 4 * a6_;
  b8_ = (b2_ * b6_ - b4_ * b4_) / 4;
  c4_ = b2_ * b2_ - 24 * b4_;
  c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
  disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
  if (disc_ == 0) throw std::invalid_argument("singular Weierstrass equation");
}

RationalEC RationalEC::from_short(const ShortModel& s) {
  // Scale by u so that u^4 a and u^6 b are integral.
  Int da = s.a.get_den(), db = s.b.get_den();
  Int u = 1;
  Factorization f = factorize(lcm(da, db));
  for (const auto& [q, e] : f.factors) {
    (void)e;
    int va = valuation(da, q), vb = valuation(db, q);
    int need = std::max((va + 3) / 4, (vb + 5) / 6);
    for (int i = 0; i < need; i++) u *= q;
  }
  Rat A = s.a * Rat(u * u * u * u);
  Rat B = s.b * Rat(u * u * u * u * u * u);
  return RationalEC(0, 0, 0, Int(A.get_num()), Int(B.get_num()));
}

RationalEC RationalEC::from_j(const Rat& j) {
  if (j == 0) return RationalEC(0, 0, 0, 0, 1);
  if (j == 1728) return RationalEC(0, 0, 0, 1, 0);
  Rat k = j - 1728;
  return from_short({-3 * j * k, -2 * j * k * k});
}

Rat RationalEC::j() const {
  return Rat(c4_ * c4_ * c4_) / Rat(disc_);
}

ShortModel short_model(const RationalEC& E) {
  Int a = -27 * E.c4(), b = -54 * E.c6();
  Int u = power_content_46(a, b);
  Int u2 = u * u;
  return {Rat(a / (u2 * u2)), Rat(b / (u2 * u2 * u2))};
}

void integral_short(const RationalEC& E, Int& A, Int& B) {
  ShortModel s = short_model(E);
  A = s.a.get_num();
  B = s.b.get_num();
}

namespace {

// Kraus' conditions: (c4, c6) with c4^3 - c6^2 = 1728 D, D != 0, arise from an
// integral model iff v3(c6) != 2 and (c6 = -1 mod 4 or (16 | c4 and c6 mod 32 in {0, 8})).
bool kraus_ok(const Int& c4, const Int& c6) {
  if (c6 != 0 && valuation(c6, 3) == 2) return false;
  Int r4 = ((c6 % 4) + 4) % 4;
  if (r4 == 3) return true;
  if (c4 % 16 != 0) return false;
  Int r32 = ((c6 % 32) + 32) % 32;
  return r32 == 0 || r32 == 8;
}

RationalEC from_c4c6(const Int& c4, const Int& c6) {
  // b2 is the residue of -c6 mod 12 in (-6, 6].
  Int b2 = (-c6) % 12;
  if (b2 > 6) b2 -= 12;
  if (b2 <= -6) b2 += 12;
  Int b4 = (b2 * b2 - c4) / 24;
  Int b6 = (-b2 * b2 * b2 + 36 * b2 * b4 - c6) / 216;
  Int a1 = ((b2 % 2) + 2) % 2;
  Int a2 = (b2 - a1) / 4;
  Int a3 = ((b6 % 2) + 2) % 2;
  Int a4 = (b4 - a1 * a3) / 2;
  Int a6 = (b6 - a3) / 4;
  return RationalEC(a1, a2, a3, a4, a6);
}

}  // namespace

RationalEC minimal_model(const RationalEC& E) {
  Int c4 = E.c4(), c6 = E.c6();
  Int g = gcd(c6 * c6, E.disc());
  Factorization fg = factorize(g);
  Int u = 1;
  for (const auto& [q, e] : fg.factors) {
    int d = e / 12;
    // Unscaling by q may violate integrality at 2 and 3; Kraus' conditions decide.
    if (q <= 3) {
      while (d > 0) {
        Int qd = 1;
        for (int i = 0; i < d; i++) qd *= q;
        Int t4 = qd * qd * qd * qd, t6 = qd * qd * qd * qd * qd * qd;
        if (c4 % t4 == 0 && c6 % t6 == 0 && kraus_ok(c4 / t4, c6 / t6)) break;
        d--;
      }
    }
    Int qd = 1;
    for (int i = 0; i < d; i++) qd *= q;
    u *= qd;
  }
  Int u2 = u * u, u4 = u2 * u2, u6 = u4 * u2;
  return from_c4c6(c4 / u4, c6 / u6);
}

Factorization conductor(const RationalEC& E) {
  RationalEC M = minimal_model(E);
  Factorization fd = factorize(abs(M.disc()));
  Factorization out;
  for (const auto& [q, e] : fd.factors) {
    (void)e;
    ReductionData rd = tate_local(M, q);
    if (rd.cond_exp > 0) out.factors.push_back({q, rd.cond_exp});
  }
  return out;
}

RationalEC quadratic_twist(const RationalEC& E, const Int& d) {
  if (d == 0) throw std::invalid_argument("twist by 0");
  Int ds = squarefree_part(d);
  if (ds == 1) return minimal_model(E);
  Int c4t = ds * ds * E.c4();
  Int c6t = ds * ds * ds * E.c6();
  return minimal_model(RationalEC::from_short({Rat(c4t) / -48, Rat(c6t) / -864}));
}

Rat power_free(const Rat& u, int k) {
  if (u == 0) throw std::invalid_argument("power_free(0)");
  auto strip = [&](const Int& n) {
    Factorization f = factorize(abs(n));
    Int out = n < 0 ? -1 : 1;
    for (const auto& [q, e] : f.factors)
      for (int i = 0; i < e % k; i++) out *= q;
    return out;
  };
  Rat r(strip(u.get_num()), strip(u.get_den()));
  r.canonicalize();
  return r;
}

RationalEC quartic_twist(const Rat& a, const Rat& u) {
  if (a == 0) throw std::invalid_argument("quartic twist needs j = 1728");
  return minimal_model(RationalEC::from_short({a * power_free(u, 4), Rat(0)}));
}

RationalEC sextic_twist(const Rat& b, const Rat& u) {
  if (b == 0) throw std::invalid_argument("sextic twist needs j = 0");
  return minimal_model(RationalEC::from_short({Rat(0), b * power_free(u, 6)}));
}

std::optional<Int> is_cm(const RationalEC& E) {
  static const std::map<Rat, Int> kCmJ = {
      {Rat(0), Int(-3)},
      {Rat(1728), Int(-4)},
      {Rat(-3375), Int(-7)},
      {Rat(8000), Int(-8)},
      {Rat(-32768), Int(-11)},
      {Rat(54000), Int(-12)},
      {Rat(287496), Int(-16)},
      {Rat(-884736), Int(-19)},
      {Rat(-12288000), Int(-27)},
      {Rat(16581375), Int(-28)},
      {Rat(-884736000), Int(-43)},
      {Rat(-147197952000), Int(-67)},
      {Rat("-262537412640768000"), Int(-163)},
  };
  auto it = kCmJ.find(E.j());
  if (it == kCmJ.end()) return std::nullopt;
  return it->second;
}

std::string curve_key(const RationalEC& E) {
  RationalEC M = minimal_model(E);
  std::ostringstream os;
  os << M.a1() << "," << M.a2() << "," << M.a3() << "," << M.a4() << "," << M.a6();
  return os.str();
}

}  // namespace ecsym
