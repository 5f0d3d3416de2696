#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecsym/curve.hpp"
#include "ecsym/frobenius.hpp"

namespace ecsym {

// Fingerprint of a trace vector mod p: sum of (a_ell mod p) * p^i with
// wrapping 64-bit arithmetic.  The exact integer is carried alongside
// while B * log2(p) stays within 512 bits, so short windows collide only
// on genuine congruences.
struct HashKey {
  u64 value = 0;
  std::optional<Int> exact;

  bool operator==(const HashKey& o) const { return value == o.value; }
};

// Requires good reduction at every prime of the window.
HashKey hash_curve(const TraceVector& tv, u64 p);

// The B smallest primes strictly above bound.
std::vector<u64> build_prime_window(u64 bound, std::size_t B);

struct SieveBucket {
  u64 key = 0;
  std::vector<std::string> members;  // sorted labels
};

// Groups classes by fingerprint.  All buckets are returned, sorted by
// key; callers filter for |members| >= 2.
std::vector<SieveBucket> partition(
    const std::vector<std::pair<std::string, RationalEC>>& classes, u64 p,
    const std::vector<u64>& window, int jobs = 1);

// floor([SL_2(Z) : Gamma_0(N)] / 6).
Int sturm_bound(const Int& N);

struct KOCertificate {
  bool certified = false;
  Int level;    // lcm(N_E, N_Ep) * p^2
  Int bound;    // Sturm bound for that level
  u64 witness = 0;  // first prime with a_ell mismatch mod p, when not certified
};

// Proves or refutes a_ell(E) = a_ell(Ep) mod p for all ell by comparing
// traces at good primes ell <= bound, ell not dividing p N N'.
KOCertificate ko_certify(const RationalEC& E, const RationalEC& Ep, u64 p);

}  // namespace ecsym
