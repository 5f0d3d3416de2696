#pragma once

#include <cstdint>
#include <vector>

#include "ecsym/curve.hpp"

namespace ecsym {

using i64 = std::int64_t;

// #E(F_ell) for a curve with good reduction at ell, via the quadratic
// character sum for small ell and baby-step giant-step with quadratic-twist
// disambiguation above. Deterministic.
u64 point_count(const RationalEC& E, u64 ell);

// a_ell of the minimal model: ell + 1 - #E(F_ell) at good primes,
// +1 / -1 at split / non-split multiplicative primes, 0 at additive ones.
i64 trace_of_frobenius(const RationalEC& E, u64 ell);

struct TraceVector {
  std::vector<u64> primes;
  std::vector<i64> traces;
  std::vector<ReductionKind> kinds;
};

// Traces at the given primes, computed on the minimal model once.
// jobs > 1 splits the prime list across threads; output order is fixed.
TraceVector trace_vector(const RationalEC& E, const std::vector<u64>& primes, int jobs = 1);

}  // namespace ecsym
