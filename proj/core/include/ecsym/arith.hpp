#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace ecsym {

using Int = mpz_class;
using Rat = mpq_class;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// ---- word-size modular arithmetic -----------------------------------------

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

u64 powmod(u64 base, u64 exp, u64 m);
u64 invmod(u64 a, u64 m);            // throws std::domain_error if gcd(a,m) != 1
int legendre(u64 a, u64 p);          // p odd prime; 0 if p | a
// Square root mod an odd prime, or nullopt if a is a non-residue.
std::optional<u64> sqrtmod(u64 a, u64 p);

bool is_prime_u64(u64 n);            // deterministic Miller-Rabin

// ---- primes ----------------------------------------------------------------

// All primes <= bound, ascending.
std::vector<u64> primes_up_to(u64 bound);
// The n smallest primes, ascending.
std::vector<u64> first_n_primes(std::size_t n);
u64 next_prime_above(u64 n);         // smallest prime > n

// ---- big-integer helpers ---------------------------------------------------

int valuation(const Int& n, const Int& q);         // v_q(n), n != 0
Int remove_factor(const Int& n, const Int& q, int& val);

// Kronecker symbol (a|b), extending the Jacobi symbol.
int kronecker(const Int& a, const Int& b);

// prime -> exponent, primes ascending.
struct Factorization {
  std::vector<std::pair<Int, int>> factors;
  Int value() const;
  bool has(const Int& p) const;
  int exponent(const Int& p) const;
};

// Full factorization of |n| (n != 0). Trial division, perfect powers and
// Pollard-Brent rho; throws std::runtime_error if a cofactor resists.
Factorization factorize(const Int& n);

bool is_square(const Int& n);
bool is_square(const Rat& r);
// Largest squarefree d with n = d * s^2 (sign preserved); n != 0.
Int squarefree_part(const Int& n);
Rat squarefree_part(const Rat& r);

// Largest u >= 1 with u^4 | a and u^6 | b (a, b not both zero).
Int power_content_46(const Int& a, const Int& b);

// Rational reconstruction: the unique p/q with r = p/q mod M,
// |p| <= bound_n, 0 < q <= bound_d, gcd(q, M) = 1; nullopt if none.
std::optional<Rat> rational_reconstruct(const Int& r, const Int& M,
                                        const Int& bound_n, const Int& bound_d);

// ---- deterministic seeding -------------------------------------------------

u64 splitmix64(u64 x);

struct Rng {
  u64 state;
  explicit Rng(u64 seed) : state(seed) {}
  u64 next() { return state = splitmix64(state); }
  u64 below(u64 n) { return next() % n; }
};

}  // namespace ecsym
