#pragma once

#include <optional>
#include <string>

#include "ecsym/arith.hpp"
#include "ecsym/poly.hpp"

namespace ecsym {

// y^2 = x^3 + a x + b with 4a^3 + 27b^2 != 0.
struct ShortModel {
  Rat a, b;
  bool operator==(const ShortModel&) const = default;
};

// Integral long Weierstrass model with cached invariants.
// c4^3 - c6^2 = 1728 disc holds by construction; disc != 0.
class RationalEC {
 public:
  RationalEC(Int a1, Int a2, Int a3, Int a4, Int a6);
  static RationalEC from_short(const ShortModel& s);
  static RationalEC from_j(const Rat& j);  // some curve with the given j

  const Int& a1() const { return a1_; }
  const Int& a2() const { return a2_; }
  const Int& a3() const { return a3_; }
  const Int& a4() const { return a4_; }
  const Int& a6() const { return a6_; }
  const Int& b2() const { return b2_; }
  const Int& b4() const { return b4_; }
  const Int& b6() const { return b6_; }
  const Int& b8() const { return b8_; }
  const Int& c4() const { return c4_; }
  const Int& c6() const { return c6_; }
  const Int& disc() const { return disc_; }
  Rat j() const;

  bool operator==(const RationalEC& o) const {
    return a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ && a4_ == o.a4_ && a6_ == o.a6_;
  }

 private:
  Int a1_, a2_, a3_, a4_, a6_;
  Int b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

// (-27c4, -54c6) reduced by the largest u with u^4 | a and u^6 | b.
ShortModel short_model(const RationalEC& E);
// The reduced short model as integers.
void integral_short(const RationalEC& E, Int& A, Int& B);

// Laska-Kraus-Connell global minimal model, in canonical reduced form
// (a1, a3 in {0,1}, a2 in {-1,0,1}). Idempotent.
RationalEC minimal_model(const RationalEC& E);

enum class ReductionKind { Good, MultiplicativeSplit, MultiplicativeNonSplit, Additive };

struct ReductionData {
  Int q;
  ReductionKind kind;
  int cond_exp;  // conductor exponent f
  int disc_exp;  // v_q of the minimal discriminant
  std::string kodaira;
};

// Tate's algorithm at q. pre: E minimal at q.
ReductionData tate_local(const RationalEC& E, const Int& q);

// Conductor of the minimal model, factored.
Factorization conductor(const RationalEC& E);

// All twist constructors return global minimal models.
RationalEC quadratic_twist(const RationalEC& E, const Int& d);
// E_{au,0} resp. E_{0,bu}; u is normalized 4th- resp. 6th-power-free.
RationalEC quartic_twist(const Rat& a, const Rat& u);
RationalEC sextic_twist(const Rat& b, const Rat& u);

// CM by an order of class number 1: returns the order's discriminant (< 0).
std::optional<Int> is_cm(const RationalEC& E);

// Removes k-th power content from numerator and denominator.
Rat power_free(const Rat& u, int k);

std::string curve_key(const RationalEC& E);  // "a1,a2,a3,a4,a6" of the minimal model

}  // namespace ecsym
