#include "ecsym/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ecsym {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  a %= m;
  std::int64_t t = 0, newt = 1;
  u64 r = m, newr = a;
  while (newr != 0) {
    u64 q = r / newr;
    std::int64_t tt = t - (std::int64_t)q * newt;
    t = newt;
    newt = tt;
    u64 rr = r - q * newr;
    r = newr;
    newr = rr;
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  return t < 0 ? (u64)(t + (std::int64_t)m) : (u64)t;
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  u64 r = powmod(a, (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

std::optional<u64> sqrtmod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre(a, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  // Tonelli-Shanks; the non-residue scan is deterministic.
  u64 q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) { q >>= 1; ++s; }
  u64 z = 2;
  while (legendre(z, p) != -1) ++z;
  u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    unsigned i = 0;
    while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
    u64 b = powmod(c, u64(1) << (m - i - 1), p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // Sinclair's deterministic base set for 64-bit inputs.
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 bound) {
  std::vector<u64> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(bound + 1, true);
  sieve[0] = sieve[1] = false;
  for (u64 i = 2; i * i <= bound; ++i)
    if (sieve[i])
      for (u64 j = i * i; j <= bound; j += i) sieve[j] = false;
  for (u64 i = 2; i <= bound; ++i)
    if (sieve[i]) out.push_back(i);
  return out;
}

std::vector<u64> first_n_primes(std::size_t n) {
  std::vector<u64> out;
  out.reserve(n);
  // Over-allocate the sieve bound via n(log n + log log n).
  u64 bound = 32;
  if (n > 5) {
    double nn = (double)n;
    double l = std::log(nn);
    bound = (u64)(nn * (l + std::log(l)) * 1.2) + 16;
  }
  while (true) {
    out = primes_up_to(bound);
    if (out.size() >= n) {
      out.resize(n);
      return out;
    }
    bound *= 2;
  }
}

u64 next_prime_above(u64 n) {
  u64 c = n + 1;
  if (c <= 2) return 2;
  if (c % 2 == 0) {
    if (c == 2) return 2;
    ++c;
  }
  while (!is_prime_u64(c)) c += 2;
  return c;
}

int valuation(const Int& n, const Int& q) {
  if (n == 0) throw std::domain_error("valuation of zero");
  Int r = abs(n);
  int v = 0;
  while (mpz_divisible_p(r.get_mpz_t(), q.get_mpz_t())) {
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
    ++v;
  }
  return v;
}

Int remove_factor(const Int& n, const Int& q, int& val) {
  Int r = n;
  val = 0;
  while (r != 0 && mpz_divisible_p(r.get_mpz_t(), q.get_mpz_t())) {
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
    ++val;
  }
  return r;
}

int kronecker(const Int& a, const Int& b) {
  return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}

Int Factorization::value() const {
  Int v = 1;
  for (const auto& [p, e] : factors)
    for (int i = 0; i < e; ++i) v *= p;
  return v;
}

bool Factorization::has(const Int& p) const {
  for (const auto& [q, e] : factors)
    if (q == p) return true;
  return false;
}

int Factorization::exponent(const Int& p) const {
  for (const auto& [q, e] : factors)
    if (q == p) return e;
  return 0;
}

namespace {

Int pollard_brent(const Int& n, u64 seed) {
  // Brent's cycle variant; returns a nontrivial factor or n on failure.
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Rng rng(seed);
  for (int attempt = 0; attempt < 24; ++attempt) {
    Int y = rng.next() % n, c = rng.next() % n, m = 128;
    if (c == 0) c = 1;
    Int g = 1, r = 1, q = 1, x, ys;
    while (g == 1) {
      x = y;
      for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
      Int k = 0;
      while (k < r && g == 1) {
        ys = y;
        Int lim = r - k;
        if (m < lim) lim = m;
        for (Int i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * (x - y) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
      if (r > 1 << 22) break;
    }
    if (g == n) {
      g = 1;
      long guard = 0;
      while (g == 1 && guard++ < (1 << 22)) {
        ys = (ys * ys + c) % n;
        g = gcd(x - ys, n);
      }
    }
    if (g != n && g > 1) return g;
  }
  return n;
}

void factor_into(Int n, std::vector<std::pair<Int, int>>& out, const std::vector<u64>& small_primes) {
  if (n == 1) return;
  for (u64 p : small_primes) {
    if (n == 1) return;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      int v = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++v;
      }
      out.emplace_back(Int((unsigned long)p), v);
    }
    Int pp = Int((unsigned long)p) * (unsigned long)p;
    if (pp > n) break;
  }
  if (n == 1) return;

  // Recursive split of the remaining cofactor.
  struct Splitter {
    std::vector<std::pair<Int, int>>& out;
    void split(const Int& m, int mult) {
      if (m == 1) return;
      if (mpz_probab_prime_p(m.get_mpz_t(), 40)) {
        out.emplace_back(m, mult);
        return;
      }
      unsigned long k = 2;
      Int root;
      // Perfect-power peeling keeps rho off p^k inputs it handles poorly.
      while (mpz_perfect_power_p(m.get_mpz_t())) {
        bool peeled = false;
        for (k = 2; k <= mpz_sizeinbase(m.get_mpz_t(), 2); ++k) {
          if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
            split(root, mult * (int)k);
            peeled = true;
            break;
          }
        }
        if (peeled) return;
      }
      Int d = pollard_brent(m, splitmix64(mpz_get_ui(m.get_mpz_t()) ^ 0x9e3779b97f4a7c15ull));
      if (d == m || d == 1) throw std::runtime_error("factorize: cofactor resisted factorization");
      split(d, mult);
      split(m / d, mult);
    }
  } splitter{out};
  splitter.split(n, 1);
}

}  // namespace

Factorization factorize(const Int& n) {
  if (n == 0) throw std::domain_error("factorize(0)");
  static const std::vector<u64> small_primes = primes_up_to(100000);
  std::vector<std::pair<Int, int>> raw;
  factor_into(abs(n), raw, small_primes);
  std::sort(raw.begin(), raw.end());
  Factorization f;
  for (auto& [p, e] : raw) {
    if (!f.factors.empty() && f.factors.back().first == p)
      f.factors.back().second += e;
    else
      f.factors.emplace_back(p, e);
  }
  return f;
}

bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

bool is_square(const Rat& r) {
  return is_square(Int(r.get_num())) && is_square(Int(r.get_den()));
}

Int squarefree_part(const Int& n) {
  if (n == 0) throw std::domain_error("squarefree_part(0)");
  Factorization f = factorize(n);
  Int d = n < 0 ? -1 : 1;
  for (const auto& [p, e] : f.factors)
    if (e % 2) d *= p;
  return d;
}

Rat squarefree_part(const Rat& r) {
  if (r == 0) throw std::domain_error("squarefree_part(0)");
  // num/den reduced, so the squarefree part of the product is exact.
  return Rat(squarefree_part(Int(r.get_num() * r.get_den())));
}

Int power_content_46(const Int& a, const Int& b) {
  if (a == 0 && b == 0) throw std::domain_error("power_content_46(0,0)");
  Int u = 1;
  auto content_of = [&](const Int& g, int k) {
    // Largest u with u^k | g, via factorization of the k-th-power-bounded part.
    Int res = 1;
    Factorization f = factorize(g);
    for (const auto& [p, e] : f.factors)
      for (int i = 0; i < e / k; ++i) res *= p;
    return res;
  };
  if (a == 0) return content_of(abs(b), 6);
  if (b == 0) return content_of(abs(a), 4);
  // Any prime in u satisfies p^4 | a and p^6 | b, hence p^4 | gcd(a^3, b^2)^... ;
  // factor the gcd once and read exponents from a and b.
  Int g = gcd(abs(a), abs(b));
  if (g == 1) return 1;
  Factorization f = factorize(g);
  for (const auto& [p, e] : f.factors) {
    int va = valuation(a, p), vb = valuation(b, p);
    int k = std::min(va / 4, vb / 6);
    for (int i = 0; i < k; ++i) u *= p;
  }
  return u;
}

std::optional<Rat> rational_reconstruct(const Int& r, const Int& M,
                                        const Int& bound_n, const Int& bound_d) {
  Int v0 = M, v1 = ((r % M) + M) % M;
  Int t0 = 0, t1 = 1;
  while (v1 > bound_n) {
    Int q = v0 / v1;
    Int v2 = v0 - q * v1;
    Int t2 = t0 - q * t1;
    v0 = v1; v1 = v2;
    t0 = t1; t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  Int num = v1, den = t1;
  if (den < 0) { den = -den; num = -num; }
  if (den > bound_d || gcd(den, M) != 1 || gcd(abs(num), den) != 1) return std::nullopt;
  return Rat(num) / Rat(den);
}

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace ecsym
