#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "ecsym/curve.hpp"
#include "ecsym/frobenius.hpp"
#include "ecsym/galois.hpp"
#include "ecsym/twist_congruence.hpp"
#include "curves.hpp"

using namespace ecsym;
using namespace tcurves;

namespace {

TraceVector make_tv(const RationalEC& E) { return trace_vector(E, primes_up_to(1500)); }

DihedralWitness real_witness(const RationalEC& E, u64 p) {
  auto w = trace_zero_quadratic(E, p, make_tv(E));
  REQUIRE(w.has_value());
  return *w;
}

}  // namespace

TEST_CASE("type signs and composition") {
  CHECK(type_sign(SymType::Symplectic) == 1);
  CHECK(type_sign(SymType::Antisymplectic) == -1);
  CHECK(type_sign(SymType::Both) == 0);
  CHECK(type_sign(SymType::Undetermined) == 0);

  CHECK(compose(SymType::Symplectic, SymType::Symplectic) == SymType::Symplectic);
  CHECK(compose(SymType::Symplectic, SymType::Antisymplectic) == SymType::Antisymplectic);
  CHECK(compose(SymType::Antisymplectic, SymType::Antisymplectic) == SymType::Symplectic);
  CHECK(compose(SymType::Both, SymType::Antisymplectic) == SymType::Both);
  CHECK(compose(SymType::Undetermined, SymType::Both) == SymType::Undetermined);
  CHECK(compose(SymType::Symplectic, SymType::Undetermined) == SymType::Undetermined);
}

TEST_CASE("p star") {
  CHECK(p_star(3) == -3);
  CHECK(p_star(5) == 5);
  CHECK(p_star(7) == -7);
  CHECK(p_star(11) == -11);
  CHECK(p_star(13) == 13);
  for (u64 bad : {2ull, 9ull, 15ull, 1ull}) CHECK_THROWS_AS(p_star(bad), std::invalid_argument);
}

TEST_CASE("isogeny criterion") {
  CHECK(isogeny_criterion(2, 7) == SymplecticType{SymType::Symplectic, TypeBasis::IsogenyCriterion});
  CHECK(isogeny_criterion(3, 7).value == SymType::Antisymplectic);
  CHECK(isogeny_criterion(5, 7).value == SymType::Antisymplectic);
  CHECK(isogeny_criterion(2, 5).value == SymType::Antisymplectic);
  CHECK(isogeny_criterion(3, 5).value == SymType::Antisymplectic);
  CHECK(isogeny_criterion(2, 3).value == SymType::Antisymplectic);
  CHECK(isogeny_criterion(3, 11).value == SymType::Symplectic);
  CHECK(isogeny_criterion(7, 3).value == SymType::Symplectic);
  CHECK(isogeny_criterion(4, 7).value == SymType::Symplectic);
  CHECK(isogeny_criterion(4, 3).value == SymType::Symplectic);

  CHECK_THROWS_AS(isogeny_criterion(14, 7), std::invalid_argument);
  CHECK_THROWS_AS(isogeny_criterion(0, 7), std::invalid_argument);
  CHECK_THROWS_AS(isogeny_criterion(3, 4), std::invalid_argument);
}

TEST_CASE("quadratic twist type from the cartan class") {
  CHECK(quadratic_twist_type(CartanClass{CartanKind::NonSplit, 10}, 7).value ==
        SymType::Symplectic);
  CHECK(quadratic_twist_type(CartanClass{CartanKind::Split, 10}, 7).value ==
        SymType::Antisymplectic);
  CHECK(quadratic_twist_type(CartanClass{CartanKind::Split, 10}, 5).value ==
        SymType::Symplectic);
  CHECK(quadratic_twist_type(CartanClass{CartanKind::NonSplit, 10}, 5).value ==
        SymType::Antisymplectic);
  CHECK(quadratic_twist_type(CartanClass{CartanKind::Split, 10}, 7).basis ==
        TypeBasis::QuadraticTwist);
  CHECK(quadratic_twist_type(CartanClass{}, 7) == SymplecticType{});
  CHECK_THROWS_AS(quadratic_twist_type(CartanClass{CartanKind::Split, 1}, 9),
                  std::invalid_argument);
}

TEST_CASE("quadratic twist congruences from a dihedral witness") {
  // CM curve, unramified split p: type comes from the isogeny degree
  auto out = quadratic_twist_congruences(e121b1(), 5, real_witness(e121b1(), 5));
  REQUIRE(out.size() == 1);
  CHECK(out[0].partner == quadratic_twist(e121b1(), -11));
  CHECK(out[0].n == 2);
  CHECK(out[0].u == Rat(-11));
  CHECK(out[0].p == 5);
  CHECK(out[0].type == SymplecticType{SymType::Symplectic, TypeBasis::CMTwist});
  CHECK(out[0].side_ok);

  out = quadratic_twist_congruences(e49a1(), 11, real_witness(e49a1(), 11));
  REQUIRE(out.size() == 1);
  CHECK(out[0].partner == quadratic_twist(e49a1(), -7));
  CHECK(out[0].type == SymplecticType{SymType::Antisymplectic, TypeBasis::CMTwist});

  // j = 1728 and d = -1: the partner is the quartic twist, typed by the 2-isogeny
  for (u64 p : {3ull, 5ull}) {
    out = quadratic_twist_congruences(e32a4(), p, real_witness(e32a4(), p));
    REQUIRE(out.size() == 1);
    CHECK(out[0].partner == RationalEC(0, 0, 0, -4, 0));
    CHECK(out[0].n == 4);
    CHECK(out[0].u == Rat(-4));
    CHECK(out[0].type == SymplecticType{SymType::Antisymplectic, TypeBasis::IsogenyCriterion});
  }

  // projective image D_2: three partners, the p* class symplectic
  DihedralWitness w;
  w.d = -11;
  w.cartan = CartanClass{CartanKind::NonSplit, 40};
  w.projective_order_4 = true;
  w.all_d = {Int(-11), Int(33), Int(-3)};
  out = quadratic_twist_congruences(e121b1(), 3, w);
  REQUIRE(out.size() == 3);
  CHECK(out[0].partner == quadratic_twist(e121b1(), -11));
  CHECK(out[0].type.value == SymType::Antisymplectic);
  CHECK(out[1].partner == quadratic_twist(e121b1(), 33));
  CHECK(out[1].type.value == SymType::Antisymplectic);
  CHECK(out[2].partner == quadratic_twist(e121b1(), -3));
  CHECK(out[2].type == SymplecticType{SymType::Symplectic, TypeBasis::QuadraticTwist});

  // fabricated witnesses cannot survive the CM crosschecks
  DihedralWitness lie;
  lie.d = -11;
  lie.cartan = CartanClass{CartanKind::Split, 40};
  CHECK_THROWS_WITH_AS(quadratic_twist_congruences(e49a1(), 11, lie),
                       doctest::Contains("contradicts CM discriminant"), std::logic_error);
  lie.d = -7;
  lie.cartan = CartanClass{CartanKind::NonSplit, 40};
  CHECK_THROWS_WITH_AS(quadratic_twist_congruences(e49a1(), 11, lie),
                       doctest::Contains("contradicts the CM criterion"), std::logic_error);
}

TEST_CASE("cm twist congruences") {
  TwistCongruence c = cm_twist_congruence(e49a1(), 7, 11);
  CHECK(c.partner == quadratic_twist(e49a1(), -7));
  CHECK(c.n == 2);
  CHECK(c.u == Rat(-7));
  CHECK(c.type == SymplecticType{SymType::Antisymplectic, TypeBasis::CMTwist});
  CHECK(cm_twist_congruence(e49a1(), 7, 23).type.value == SymType::Antisymplectic);
  CHECK(cm_twist_congruence(e49a1(), 7, 29).type.value == SymType::Symplectic);

  c = cm_twist_congruence(e32a4(), 4, 5);
  CHECK(c.partner == RationalEC(0, 0, 0, -4, 0));
  CHECK(c.n == 4);
  CHECK(c.u == Rat(-4));
  CHECK(c.type.value == SymType::Antisymplectic);
  CHECK(c.type.basis == TypeBasis::CMTwist);
  CHECK(cm_twist_congruence(e32a4(), 4, 7).type.value == SymType::Symplectic);

  CHECK(cm_twist_congruence(e121b1(), 11, 5).type.value == SymType::Symplectic);

  CHECK(cm_twist_congruence(e27a3(), 3, 17).type.value == SymType::Antisymplectic);
  CHECK(cm_twist_congruence(e27a3(), 3, 19).type.value == SymType::Antisymplectic);
  CHECK(cm_twist_congruence(e27a3(), 3, 37).type.value == SymType::Symplectic);

  CHECK_THROWS_AS(cm_twist_congruence(e11a1(), 7, 11), std::invalid_argument);
  CHECK_THROWS_AS(cm_twist_congruence(e49a1(), 11, 13), std::invalid_argument);
  CHECK_THROWS_AS(cm_twist_congruence(e121b1(), 11, 3), std::invalid_argument);
  CHECK_THROWS_AS(cm_twist_congruence(e121b1(), 11, 11), std::invalid_argument);
  CHECK_THROWS_AS(cm_twist_congruence(e27a3(), 3, 5), std::invalid_argument);
}

TEST_CASE("higher twist families") {
  // j = 1728, p = 3
  RationalEC E10 = quartic_twist(1, 1);
  auto out = higher_twist_partners(E10, 3);
  REQUIRE(out.size() == 3);
  CHECK(out[0].u == Rat(-1, 3));
  CHECK(out[0].partner == quartic_twist(1, Rat(-1, 3)));
  CHECK(out[0].type == SymplecticType{SymType::Symplectic, TypeBasis::HigherTwist});
  CHECK(out[1].u == Rat(-4));
  CHECK(out[1].type == SymplecticType{SymType::Antisymplectic, TypeBasis::IsogenyCriterion});
  CHECK(out[2].u == Rat(4, 3));
  CHECK(out[2].type == SymplecticType{SymType::Antisymplectic, TypeBasis::HigherTwist});
  for (const auto& t : out) {
    CHECK(t.n == 4);
    CHECK(t.p == 3);
    CHECK(t.side_ok);
  }

  // j = 1728, p = 5
  out = higher_twist_partners(E10, 5);
  REQUIRE(out.size() == 3);
  CHECK(out[0].u == Rat(5));
  CHECK(out[0].type.value == SymType::Symplectic);
  CHECK(out[1].u == Rat(-4));
  CHECK(out[1].type.value == SymType::Antisymplectic);
  CHECK(out[2].u == Rat(-20));
  CHECK(out[2].type.value == SymType::Antisymplectic);
  for (const auto& t : out) CHECK(t.side_ok);

  // a = 2 scales the quartic u values
  out = higher_twist_partners(quartic_twist(2, 1), 3);
  REQUIRE(out.size() == 3);
  CHECK(out[0].u == Rat(-1, 12));
  CHECK(out[1].u == Rat(-4));
  CHECK(out[2].u == Rat(1, 3));

  // j = 0, p = 5
  RationalEC E01 = sextic_twist(1, 1);
  out = higher_twist_partners(E01, 5);
  REQUIRE(out.size() == 3);
  CHECK(out[0].u == Rat(4, 5));
  CHECK(out[0].partner == sextic_twist(1, Rat(4, 5)));
  CHECK(out[0].type == SymplecticType{SymType::Symplectic, TypeBasis::HigherTwist});
  CHECK(out[1].u == Rat(-27));
  CHECK(out[1].type == SymplecticType{SymType::Antisymplectic, TypeBasis::IsogenyCriterion});
  CHECK(out[2].u == Rat(-108, 5));
  CHECK(out[2].type.value == SymType::Antisymplectic);
  for (const auto& t : out) {
    CHECK(t.n == 6);
    CHECK(t.side_ok);
  }

  // j = 0, p = 7
  out = higher_twist_partners(E01, 7);
  REQUIRE(out.size() == 3);
  CHECK(out[0].u == Rat(-28));
  CHECK(out[0].partner == sextic_twist(1, -28));
  CHECK(out[0].type.value == SymType::Symplectic);
  CHECK(out[1].u == Rat(-27));
  CHECK(out[1].type.value == SymType::Antisymplectic);
  CHECK(out[2].u == Rat(756));
  CHECK(out[2].partner == sextic_twist(1, 756));
  CHECK(out[2].type.value == SymType::Antisymplectic);
  for (const auto& t : out) CHECK(t.side_ok);

  CHECK(higher_twist_partners(E01, 3).empty());
  CHECK(higher_twist_partners(E10, 7).empty());
  CHECK(higher_twist_partners(e11a1(), 7).empty());
  CHECK(higher_twist_partners(E01, 11).empty());
}

TEST_CASE("higher twist types and side conditions") {
  bool side = true;
  CHECK(higher_twist_type(3, 2, 3, &side).value == SymType::Antisymplectic);
  CHECK(!side);
  CHECK(higher_twist_type(4, 5, 7, &side).value == SymType::Antisymplectic);
  CHECK(!side);
  CHECK(higher_twist_type(6, -28, 13, &side).value == SymType::Antisymplectic);
  CHECK(!side);
  CHECK(higher_twist_type(4, -3, 3, &side).value == SymType::Symplectic);
  CHECK(side);
  CHECK(higher_twist_type(6, -7, 7, &side).value == SymType::Symplectic);
  CHECK(side);
  CHECK(higher_twist_type(6, 2, 5, &side).value == SymType::Antisymplectic);
  CHECK(side);
  CHECK(higher_twist_type(3, 2, 5).basis == TypeBasis::HigherTwist);

  CHECK_THROWS_AS(higher_twist_type(4, 4, 5), std::invalid_argument);
  CHECK_THROWS_AS(higher_twist_type(4, -4, 5), std::invalid_argument);
  CHECK_THROWS_AS(higher_twist_type(6, -27, 5), std::invalid_argument);
  CHECK_THROWS_AS(higher_twist_type(6, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(higher_twist_type(2, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(higher_twist_type(12, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(higher_twist_type(4, 5, 2), std::invalid_argument);
  CHECK_THROWS_AS(higher_twist_type(4, 5, 9), std::invalid_argument);
}
