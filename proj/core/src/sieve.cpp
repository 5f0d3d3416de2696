#include "ecsym/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace ecsym {

HashKey hash_curve(const TraceVector& tv, u64 p) {
  if (p < 3) throw std::invalid_argument("hash_curve: p must be an odd prime");
  for (std::size_t i = 0; i < tv.primes.size(); ++i)
    if (tv.kinds[i] != ReductionKind::Good)
      throw std::invalid_argument("hash_curve: bad reduction at window prime " +
                                  std::to_string(tv.primes[i]));

  // 512 bits of exact key is cheap; beyond that the wrapped value alone
  // still leaves collisions too rare to matter before certification.
  bool keep_exact = tv.primes.size() * std::log2(double(p)) <= 512.0;

  HashKey h;
  if (keep_exact) h.exact = Int(0);
  u64 pw = 1;
  Int pw_exact = 1;
  for (std::size_t i = 0; i < tv.primes.size(); ++i) {
    i64 a = tv.traces[i];
    u64 abar = u64(((a % i64(p)) + i64(p)) % i64(p));
    h.value += abar * pw;
    pw *= p;
    if (keep_exact) {
      *h.exact += abar * pw_exact;
      pw_exact *= p;
    }
  }
  return h;
}

std::vector<u64> build_prime_window(u64 bound, std::size_t B) {
  std::vector<u64> out;
  out.reserve(B);
  u64 q = bound;
  while (out.size() < B) {
    q = next_prime_above(q);
    out.push_back(q);
  }
  return out;
}

std::vector<SieveBucket> partition(
    const std::vector<std::pair<std::string, RationalEC>>& classes, u64 p,
    const std::vector<u64>& window, int jobs) {
  std::vector<HashKey> keys(classes.size(), HashKey{});

  auto work = [&](std::size_t lo, std::size_t stride) {
    for (std::size_t i = lo; i < classes.size(); i += stride)
      keys[i] = hash_curve(trace_vector(classes[i].second, window), p);
  };

  if (jobs <= 1 || classes.size() < 2) {
    work(0, 1);
  } else {
    std::size_t n = std::min<std::size_t>(jobs, classes.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(work, t, n);
    for (auto& th : pool) th.join();
  }

  std::map<u64, std::vector<std::string>> buckets;
  for (std::size_t i = 0; i < classes.size(); ++i)
    buckets[keys[i].value].push_back(classes[i].first);

  std::vector<SieveBucket> out;
  out.reserve(buckets.size());
  for (auto& [k, members] : buckets) {
    std::sort(members.begin(), members.end());
    out.push_back(SieveBucket{k, std::move(members)});
  }
  return out;
}

Int sturm_bound(const Int& N) {
  if (N < 1) throw std::invalid_argument("sturm_bound: level must be positive");
  if (N == 1) return 0;
  Int mu = N;
  for (const auto& [q, e] : factorize(N).factors) {
    (void)e;
    mu = mu / q * (q + 1);
  }
  return mu / 6;
}

KOCertificate ko_certify(const RationalEC& E, const RationalEC& Ep, u64 p) {
  Int n1 = conductor(E).value();
  Int n2 = conductor(Ep).value();
  Int lev = n1 / gcd(n1, n2) * n2 * Int(p) * Int(p);

  KOCertificate cert;
  cert.level = lev;
  cert.bound = sturm_bound(lev);

  if (cert.bound > 100000000) {
    throw std::runtime_error("ko_certify: Sturm bound " + cert.bound.get_str() +
                             " exceeds the desk-scale cap of 1e8");
  }

  // every compared ell is prime to p N N', hence good for both curves, so
  // the traces come straight from point counts on the minimal models
  Int skip = n1 * n2 * Int(p);
  RationalEC m1 = minimal_model(E);
  RationalEC m2 = minimal_model(Ep);
  for (u64 ell : primes_up_to(cert.bound.get_ui())) {
    if (mpz_divisible_ui_p(skip.get_mpz_t(), ell)) continue;
    i64 a1 = i64(ell + 1) - i64(point_count(m1, ell));
    i64 a2 = i64(ell + 1) - i64(point_count(m2, ell));
    if ((a1 - a2) % i64(p) != 0) {
      cert.certified = false;
      cert.witness = ell;
      return cert;
    }
  }
  cert.certified = true;
  return cert;
}

}  // namespace ecsym
