#include "ecsym/reducible.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "ecsym/arith.hpp"

namespace ecsym {

namespace {

// Diagonal pairs (a, d) encoded a*p + d; the subgroup H = D U is determined
// by its image D in the torus since an order-p element forces all of U in.
std::vector<u64> torus_closure(u64 p, u64 g1, u64 g2) {
  std::vector<char> seen(p * p, 0);
  std::vector<u64> stack{p + 1};
  seen[p + 1] = 1;
  while (!stack.empty()) {
    u64 h = stack.back();
    stack.pop_back();
    for (u64 g : {g1, g2}) {
      u64 n = (h / p) * (g / p) % p * p + (h % p) * (g % p) % p;
      if (!seen[n]) {
        seen[n] = 1;
        stack.push_back(n);
      }
    }
  }
  std::vector<u64> out;
  for (u64 e = 0; e < p * p; ++e)
    if (seen[e]) out.push_back(e);
  return out;
}

}  // namespace

BorelOracleReport borel_conjugation_oracle(u64 p) {
  if (p > 13 || !is_prime_u64(p))
    throw std::invalid_argument("borel_conjugation_oracle: p must be a prime <= 13");

  std::vector<u64> units;
  for (u64 a = 1; a < p; ++a)
    for (u64 d = 1; d < p; ++d) units.push_back(a * p + d);

  // Subgroups of the torus need at most two generators; keep the first
  // generating pair found for each.
  std::map<std::vector<u64>, std::array<u64, 2>> groups;
  for (u64 g1 : units)
    for (u64 g2 : units) {
      if (g2 < g1) continue;
      groups.emplace(torus_closure(p, g1, g2), std::array<u64, 2>{g1, g2});
    }

  std::size_t total = 0;
  bool all_inner = true;
  for (const auto& [elems, gg] : groups) {
    std::vector<int> idx(p * p, -1);
    for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = int(i);
    const u64 g1 = gg[0], g2 = gg[1];

    // Automorphisms over the quotient are (a,b,d) -> (a, lb + t(a,d), d)
    // with l != 0 free and t satisfying t(hg) = a_h t(g) + t(h) d_g; the
    // scalar l never constrains t, so count t maps and scale by p-1.
    std::size_t valid = 0;
    for (u64 t1 = 0; t1 < p; ++t1)
      for (u64 t2 = 0; t2 < p; ++t2) {
        std::vector<long long> t(elems.size(), -1);
        bool ok = true;
        auto put = [&](u64 e, u64 v) {
          long long& slot = t[std::size_t(idx[e])];
          if (slot < 0) {
            slot = (long long)v;
            return 2;
          }
          return slot == (long long)v ? 1 : 0;
        };
        ok = put(p + 1, 0) != 0 && put(g1, t1) != 0 && put(g2, t2) != 0;
        if (ok) {
          std::vector<u64> stack{p + 1, g1, g2};
          while (ok && !stack.empty()) {
            u64 h = stack.back();
            stack.pop_back();
            u64 th = u64(t[std::size_t(idx[h])]);
            for (u64 g : {g1, g2}) {
              u64 tg = u64(t[std::size_t(idx[g])]);
              u64 n = (h / p) * (g / p) % p * p + (h % p) * (g % p) % p;
              u64 v = ((h / p) * tg + th * (g % p)) % p;
              int r = put(n, v);
              if (r == 0) {
                ok = false;
                break;
              }
              if (r == 2) stack.push_back(n);
            }
          }
        }
        if (ok)
          for (long long v : t)
            if (v < 0) ok = false;
        // twisted-identity check on every pair, not just generator words
        if (ok)
          for (std::size_t i = 0; ok && i < elems.size(); ++i)
            for (std::size_t j = 0; j < elems.size(); ++j) {
              u64 a1 = elems[i] / p, d1 = elems[i] % p;
              u64 a2 = elems[j] / p, d2 = elems[j] % p;
              u64 prod = a1 * a2 % p * p + d1 * d2 % p;
              u64 v = (a1 * u64(t[j]) + u64(t[i]) * d2) % p;
              if (u64(t[std::size_t(idx[prod])]) != v) {
                ok = false;
                break;
              }
            }
        if (!ok) continue;
        ++valid;

        // conjugation by [[alpha, beta], [0, delta]] gives exactly
        // t(a, d) = mu (d - a) with mu = beta/delta, any scalar part
        bool inner = true;
        long long mu = -1;
        for (std::size_t i = 0; i < elems.size() && inner; ++i) {
          u64 a = elems[i] / p, d = elems[i] % p;
          u64 diff = (d + p - a) % p;
          if (diff == 0) {
            if (t[i] != 0) inner = false;
            continue;
          }
          if (mu < 0) mu = (long long)mulmod(u64(t[i]), invmod(diff, p), p);
          if ((long long)mulmod(u64(mu), diff, p) != t[i]) inner = false;
        }
        if (!inner) all_inner = false;
      }
    total += std::size_t(p - 1) * valid;
  }

  BorelOracleReport rep;
  rep.p = p;
  rep.subgroups = groups.size();
  rep.automorphisms = total;
  rep.all_inner = all_inner;
  return rep;
}

}  // namespace ecsym
