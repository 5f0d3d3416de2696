#include "ecsym/twist_congruence.hpp"

#include <stdexcept>

namespace ecsym {

int type_sign(SymType t) {
  if (t == SymType::Symplectic) return 1;
  if (t == SymType::Antisymplectic) return -1;
  return 0;
}

SymType compose(SymType a, SymType b) {
  if (a == SymType::Undetermined || b == SymType::Undetermined) return SymType::Undetermined;
  if (a == SymType::Both || b == SymType::Both) return SymType::Both;
  return type_sign(a) * type_sign(b) == 1 ? SymType::Symplectic : SymType::Antisymplectic;
}

Int p_star(u64 p) {
  if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("p_star: p must be an odd prime");
  return p % 4 == 1 ? Int(p) : -Int(p);
}

SymplecticType isogeny_criterion(const Int& n, u64 p) {
  if (p < 3 || !is_prime_u64(p))
    throw std::invalid_argument("isogeny_criterion: p must be an odd prime");
  if (n < 1) throw std::invalid_argument("isogeny_criterion: degree must be positive");
  if (n % Int(p) == 0)
    throw std::invalid_argument("isogeny_criterion: degree divisible by p");
  return {kronecker(n, Int(p)) == 1 ? SymType::Symplectic : SymType::Antisymplectic,
          TypeBasis::IsogenyCriterion};
}

SymplecticType quadratic_twist_type(const CartanClass& cartan, u64 p) {
  if (p < 3 || !is_prime_u64(p))
    throw std::invalid_argument("quadratic_twist_type: p must be an odd prime");
  if (cartan.kind == CartanKind::Undetermined) return {};
  bool split = cartan.kind == CartanKind::Split;
  bool sym = split == (p % 4 == 1);
  return {sym ? SymType::Symplectic : SymType::Antisymplectic, TypeBasis::QuadraticTwist};
}

namespace {

TwistCongruence quadratic_partner(const RationalEC& E, u64 p, const Int& d,
                                  const SymplecticType& ty) {
  Int ds = squarefree_part(d);
  if (E.j() == 1728 && ds == -1) {
    // E^{-1} is E itself; the congruent partner is the quartic twist by
    // -4, which is 2-isogenous to E, so its type is the isogeny criterion.
    Int A, B;
    integral_short(E, A, B);
    return {quartic_twist(Rat(A), Rat(-4)), 4, Rat(-4), p, isogeny_criterion(2, p), true};
  }
  return {quadratic_twist(E, ds), 2, Rat(ds), p, ty, true};
}

}  // namespace

std::vector<TwistCongruence> quadratic_twist_congruences(const RationalEC& E, u64 p,
                                                         const DihedralWitness& w) {
  std::vector<TwistCongruence> out;

  if (w.projective_order_4) {
    Int ps = p_star(p);
    bool seen_pstar = false;
    for (const Int& d : w.all_d) seen_pstar = seen_pstar || squarefree_part(d) == ps;
    for (const Int& d : w.all_d) {
      SymplecticType ty;
      if (seen_pstar) {
        // the projective division field contains sqrt(p*), and the twist
        // into that class is the symplectic one
        bool sym = squarefree_part(d) == ps;
        ty = {sym ? SymType::Symplectic : SymType::Antisymplectic, TypeBasis::QuadraticTwist};
      }
      out.push_back(quadratic_partner(E, p, d, ty));
    }
    return out;
  }

  SymplecticType ty = quadratic_twist_type(w.cartan, p);
  if (auto neg_disc = is_cm(E)) {
    Int D = -*neg_disc;
    // The congruence is isogeny-backed for CM curves; a dihedral witness
    // naming a different twist class or type cannot be right.
    if (D != 4 && D % Int(p) != 0 && p >= 5 && (D != 3 || p % 9 == 1 || p % 9 == 8)) {
      if (squarefree_part(w.d) != squarefree_part(Int(-D)))
        throw std::logic_error("quadratic_twist_congruences: dihedral witness " +
                               w.d.get_str() + " contradicts CM discriminant -" + D.get_str());
      SymplecticType cm = cm_twist_congruence(E, D, p).type;
      if (ty.value != SymType::Undetermined && ty.value != cm.value)
        throw std::logic_error(
            "quadratic_twist_congruences: Cartan-based type contradicts the CM criterion");
      ty = cm;
    }
  }
  out.push_back(quadratic_partner(E, p, w.d, ty));
  return out;
}

TwistCongruence cm_twist_congruence(const RationalEC& E, const Int& D, u64 p) {
  auto neg_disc = is_cm(E);
  if (!neg_disc || *neg_disc != -D)
    throw std::invalid_argument("cm_twist_congruence: curve does not have CM discriminant -" +
                                D.get_str());
  if (p < 5 || !is_prime_u64(p))
    throw std::invalid_argument("cm_twist_congruence: p must be a prime >= 5");
  if (D % Int(p) == 0)
    throw std::invalid_argument("cm_twist_congruence: p ramifies in the CM field");
  if (D == 3 && p % 9 != 1 && p % 9 != 8)
    throw std::invalid_argument("cm_twist_congruence: D = 3 requires p = +-1 mod 9");

  Int deg = D == 4 ? Int(2) : D;  // the quartic -4 twist is 2-isogenous
  SymplecticType ty = isogeny_criterion(deg, p);
  ty.basis = TypeBasis::CMTwist;

  if (D == 4) {
    Int A, B;
    integral_short(E, A, B);
    return {quartic_twist(Rat(A), Rat(-4)), 4, Rat(-4), p, ty, true};
  }
  return {quadratic_twist(E, -D), 2, Rat(squarefree_part(Int(-D))), p, ty, true};
}

std::vector<TwistCongruence> higher_twist_partners(const RationalEC& E, u64 p) {
  Rat j = E.j();
  std::vector<TwistCongruence> out;

  if (j == 1728 && (p == 3 || p == 5)) {
    Int A, B;
    integral_short(E, A, B);
    Rat a(A);  // B = 0 since c6 = 0
    std::vector<Rat> us = p == 3 ? std::vector<Rat>{Rat(-1) / (3 * a * a), Rat(-4), Rat(4) / (3 * a * a)}
                                 : std::vector<Rat>{Rat(5) / (a * a), Rat(-4), Rat(-20) / (a * a)};
    for (const Rat& u : us) {
      Rat uf = power_free(u, 4);
      bool side = true;
      SymplecticType ty = squarefree_part(u) == -1 ? isogeny_criterion(2, p)
                                                   : higher_twist_type(4, uf, p, &side);
      out.push_back({quartic_twist(a, uf), 4, uf, p, ty, side});
    }
    return out;
  }

  if (j == 0 && (p == 5 || p == 7)) {
    Int A, B;
    integral_short(E, A, B);
    Rat b(B);  // A = 0 since c4 = 0
    std::vector<Rat> us = p == 5 ? std::vector<Rat>{Rat(4) / (5 * b * b), Rat(-27), Rat(-108) / (5 * b * b)}
                                 : std::vector<Rat>{Rat(-28) / (b * b), Rat(-27), Rat(756) / (b * b)};
    for (const Rat& u : us) {
      Rat uf = power_free(u, 6);
      bool side = true;
      SymplecticType ty = squarefree_part(u) == -3 ? isogeny_criterion(3, p)
                                                   : higher_twist_type(6, uf, p, &side);
      out.push_back({sextic_twist(b, uf), 6, uf, p, ty, side});
    }
    return out;
  }

  return out;
}

SymplecticType higher_twist_type(int n, const Rat& u, u64 p, bool* side_ok) {
  if (p < 3 || !is_prime_u64(p))
    throw std::invalid_argument("higher_twist_type: p must be an odd prime");
  if (n != 3 && n != 4 && n != 6)
    throw std::invalid_argument("higher_twist_type: twist order must be 3, 4 or 6");
  if (u == 0) throw std::invalid_argument("higher_twist_type: u must be nonzero");

  Rat us = squarefree_part(u);
  if (n == 4 && (us == 1 || us == -1))
    throw std::invalid_argument("higher_twist_type: u = +-1 mod squares is excluded (n = 4)");
  if ((n == 3 || n == 6) && (us == 1 || us == -3))
    throw std::invalid_argument("higher_twist_type: u = 1, -3 mod squares is excluded (n = 3, 6)");

  bool ok = true;
  if (n == 3) ok = p != 3;
  if (n == 4) ok = p % 8 == 3 || p % 8 == 5;
  if (n == 6) ok = p % 12 == 5 || p % 12 == 7;
  if (side_ok) *side_ok = ok;

  if (n == 3) return {SymType::Antisymplectic, TypeBasis::HigherTwist};
  bool sym = is_square(u * Rat(p_star(p)));
  return {sym ? SymType::Symplectic : SymType::Antisymplectic, TypeBasis::HigherTwist};
}

}  // namespace ecsym
