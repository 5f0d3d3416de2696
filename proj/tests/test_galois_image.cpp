#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>

#include "ecsym/curve.hpp"
#include "ecsym/frobenius.hpp"
#include "ecsym/galois.hpp"
#include "ecsym/isogeny.hpp"
#include "curves.hpp"
#include "oracles.hpp"

using namespace ecsym;
using namespace tcurves;

namespace {

TraceVector make_tv(const RationalEC& E) { return trace_vector(E, primes_up_to(1500)); }

TraceVector flat_tv(std::vector<u64> primes, std::vector<i64> traces) {
  TraceVector tv;
  tv.kinds.assign(primes.size(), ReductionKind::Good);
  tv.primes = std::move(primes);
  tv.traces = std::move(traces);
  return tv;
}

}  // namespace

TEST_CASE("fricke parametrization") {
  CHECK(fricke_j(1) == 21609);
  CHECK(fricke_j(-7) == -3375);
  CHECK(fricke_j(7) == 16581375);
  CHECK(fricke_j(Rat(-13, 2)) == e26b1().j());
  CHECK_THROWS_AS(fricke_j(0), std::invalid_argument);

  ZPoly f = fricke_numerator(Rat(21609));
  CHECK(zp_deg(f) == 8);
  CHECK(zp_eval(f, Int(1)) == 0);
  auto roots = zp_rational_roots(f);
  REQUIRE(roots.size() == 1);  // 49 lies over the isogenous j, not this one
  CHECK(roots[0].first == 1);
}

TEST_CASE("rational 7-isogeny detection") {
  auto t = rational_7_isogeny_parameter(from_j(21609));
  REQUIRE(t.has_value());
  CHECK(*t == 1);
  t = rational_7_isogeny_parameter(from_j(-3375));
  REQUIRE(t.has_value());
  CHECK(*t == -7);
  t = rational_7_isogeny_parameter(from_j(16581375));
  REQUIRE(t.has_value());
  CHECK(*t == 7);
  t = rational_7_isogeny_parameter(e26b1());
  REQUIRE(t.has_value());
  CHECK(*t == Rat(-13, 2));

  CHECK(has_rational_7_isogeny(e49a1()));
  CHECK(!has_rational_7_isogeny(e11a1()));
  CHECK(!has_rational_7_isogeny(e37a1()));
  CHECK(!has_rational_7_isogeny(sextic_twist(1, 1)));
}

TEST_CASE("reducibility verdicts") {
  RationalEC E = e11a1();
  TraceVector tv = make_tv(E);

  Reducibility r = reducibility(E, 5, tv);
  CHECK(r.verdict == ReducibilityVerdict::Reducible);
  CHECK(r.exact);
  CHECK(r.witness_ell == 0);

  r = reducibility(E, 7, tv);
  CHECK(r.verdict == ReducibilityVerdict::Irreducible);
  CHECK(r.exact);
  CHECK(r.witness_ell == 2);

  r = reducibility(E, 2, tv);
  CHECK(r.verdict == ReducibilityVerdict::Irreducible);
  CHECK(r.exact);

  // ramified CM prime: every sampled charpoly splits, nothing is proven
  r = reducibility(e121b1(), 11, make_tv(e121b1()));
  CHECK(r.verdict == ReducibilityVerdict::ReducibleCompatible);
  CHECK(!r.exact);

  // split CM prime: inert Frobenius has charpoly x^2 + ell, often irreducible
  RationalEC F = from_j(-3375);
  r = reducibility(F, 11, make_tv(F));
  CHECK(r.verdict == ReducibilityVerdict::Irreducible);
  CHECK(r.exact);
  CHECK(r.witness_ell != 0);

  // ingested isogeny data overrides
  CHECK(reducibility(E, 7, tv, true).verdict == ReducibilityVerdict::Reducible);
  CHECK(reducibility(E, 7, tv, false).verdict == ReducibilityVerdict::Irreducible);

  CHECK_THROWS_AS(reducibility(E, 7, trace_vector(E, primes_up_to(100))),
                  std::invalid_argument);
}

TEST_CASE("irreducibility witnesses satisfy the charpoly test") {
  for (u64 p : {7ull, 11ull, 13ull}) {
    for (const RationalEC& E : {e11a1(), e37a1(), e389a1()}) {
      TraceVector tv = make_tv(E);
      std::optional<bool> known;
      if (p != 7) known = false;  // none of the three admits an 11- or 13-isogeny
      Reducibility r = reducibility(E, p, tv, known);
      if (r.verdict != ReducibilityVerdict::Irreducible || r.witness_ell == 0) continue;
      i64 a = trace_of_frobenius(E, r.witness_ell);
      Int disc = Int(a) * a - 4 * Int((unsigned long)r.witness_ell);
      CHECK(legendre(mpz_fdiv_ui(disc.get_mpz_t(), p), p) == -1);
    }
  }
}

TEST_CASE("rational kernel polynomials") {
  RationalEC E01 = sextic_twist(1, 1);
  auto polys = rational_kernel_polys(E01, 2);
  REQUIRE(polys.size() == 1);
  CHECK(polys[0] == QPoly{1, 1});
  CHECK(rational_kernel_count(E01, 2) == 1);

  CHECK(rational_kernel_count(E01, 3) == 1);
  CHECK(rational_kernel_count(e27a3(), 3) == 2);
  CHECK(rational_kernel_count(RationalEC(0, 0, 0, -4, 0), 2) == 3);

  polys = rational_kernel_polys(e11a1(), 5);
  REQUIRE(polys.size() == 2);
  CHECK(rational_kernel_count(e11a1(), 5) == 2);
  std::set<std::string> quotients;
  for (const QPoly& k : polys) {
    CHECK(k.size() == 3);
    CHECK(k.back() == 1);
    quotients.insert(curve_key(isogenous_curve(e11a1(), k)));
  }
  CHECK(quotients == std::set<std::string>{curve_key(e11a2()), curve_key(e11a3())});

  CHECK(curve_key(isogenous_curve(e32a4(), QPoly{0, 1})) ==
        curve_key(RationalEC(0, 0, 0, -4, 0)));

  auto k7 = rational_kernel_polys(e26b1(), 7);
  REQUIRE(k7.size() == 1);
  CHECK(k7[0].size() == 4);  // monic of degree (7-1)/2
  CHECK(k7[0].back() == 1);
  CHECK(curve_key(isogenous_curve(e26b1(), k7[0])) ==
        curve_key(RationalEC(1, -1, 1, -213, -1257)));
}

TEST_CASE("cartan classification from trace data") {
  CartanClass c = cartan_type(7, Int(-3), flat_tv({13}, {1}));
  CHECK(c.kind == CartanKind::NonSplit);
  CHECK(c.evidence == 1);

  c = cartan_type(7, Int(-3), flat_tv({13}, {5}));
  CHECK(c.kind == CartanKind::Split);
  CHECK(c.evidence == 1);

  c = cartan_type(7, Int(-3), flat_tv({13, 19}, {5, 3}));
  CHECK(c.kind == CartanKind::Undetermined);

  c = cartan_type(7, Int(-3), flat_tv({13}, {0}));
  CHECK(c.kind == CartanKind::Undetermined);
  CHECK(c.evidence == 0);
}

TEST_CASE("trace-zero quadratic characters") {
  auto w = trace_zero_quadratic(e49a1(), 11, make_tv(e49a1()));
  REQUIRE(w.has_value());
  CHECK(w->d == -7);
  CHECK(w->cartan.kind == CartanKind::Split);

  RationalEC E01 = sextic_twist(1, 1);
  w = trace_zero_quadratic(E01, 7, make_tv(E01));
  REQUIRE(w.has_value());
  CHECK(w->d == -3);
  CHECK(w->cartan.kind == CartanKind::Split);

  w = trace_zero_quadratic(e32a4(), 5, make_tv(e32a4()));
  REQUIRE(w.has_value());
  CHECK(w->d == -1);
  CHECK(w->cartan.kind == CartanKind::Split);

  w = trace_zero_quadratic(e121b1(), 5, make_tv(e121b1()));
  REQUIRE(w.has_value());
  CHECK(w->d == -11);
  CHECK(w->cartan.kind == CartanKind::Split);

  w = trace_zero_quadratic(e32a4(), 3, make_tv(e32a4()));
  REQUIRE(w.has_value());
  CHECK(w->d == -1);
  CHECK(w->cartan.kind == CartanKind::NonSplit);

  CHECK(!trace_zero_quadratic(e11a1(), 7, make_tv(e11a1())).has_value());
  CHECK(!trace_zero_quadratic(e37a1(), 7, make_tv(e37a1())).has_value());
  CHECK(!trace_zero_quadratic(e121b1(), 3, make_tv(e121b1())).has_value());
  CHECK(!trace_zero_quadratic(e49a1(), 7, make_tv(e49a1())).has_value());
}

TEST_CASE("condition S") {
  CHECK(!condition_S(e11a1(), 5));   // two independent 5-isogeny kernels
  CHECK(!condition_S(e27a3(), 3));
  CHECK(condition_S(e11a1(), 3));
  CHECK(condition_S(e32a4(), 5));
  CHECK(condition_S(e11a1(), 7));
  CHECK(condition_S(e49a1(), 7));
}
