#include <benchmark/benchmark.h>

#include <string>
#include <utility>
#include <vector>

#include "ecsym/curve.hpp"
#include "ecsym/frobenius.hpp"
#include "ecsym/sieve.hpp"

namespace {

ecsym::RationalEC curve_389a() {
  return ecsym::RationalEC(0, 1, 1, -2, 0);
}

void BM_trace_charsum(benchmark::State& state) {
  auto E = curve_389a();
  ecsym::u64 ell = static_cast<ecsym::u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ecsym::trace_of_frobenius(E, ell));
}

void BM_trace_bsgs(benchmark::State& state) {
  auto E = curve_389a();
  ecsym::u64 ell = static_cast<ecsym::u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ecsym::trace_of_frobenius(E, ell));
}

void BM_trace_vector(benchmark::State& state) {
  auto E = curve_389a();
  auto primes = ecsym::primes_up_to(static_cast<ecsym::u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ecsym::trace_vector(E, primes));
}

void BM_hash_curve(benchmark::State& state) {
  auto E = curve_389a();
  auto window = ecsym::build_prime_window(500000, 50);
  auto tv = ecsym::trace_vector(E, window);
  for (auto _ : state) benchmark::DoNotOptimize(ecsym::hash_curve(tv, 7));
}

void BM_partition(benchmark::State& state) {
  std::vector<std::pair<std::string, ecsym::RationalEC>> classes;
  for (int b = 1; b <= static_cast<int>(state.range(0)); ++b) {
    classes.emplace_back("b" + std::to_string(b),
                         ecsym::RationalEC(0, 0, 0, 0, b));
    classes.emplace_back("c" + std::to_string(b),
                         ecsym::RationalEC(0, 0, 0, 0, -28 * b));
  }
  auto window = ecsym::build_prime_window(500000, 30);
  for (auto _ : state) benchmark::DoNotOptimize(ecsym::partition(classes, 7, window));
}

void BM_ko_certify(benchmark::State& state) {
  ecsym::RationalEC E(0, 0, 0, 0, 1), Ep(0, 0, 0, 0, -28);
  for (auto _ : state) benchmark::DoNotOptimize(ecsym::ko_certify(E, Ep, 7));
}

BENCHMARK(BM_trace_charsum)->Arg(997)->Arg(1999);
BENCHMARK(BM_trace_bsgs)->Arg(10007)->Arg(100003)->Arg(500009);
BENCHMARK(BM_trace_vector)->Arg(1000)->Arg(4000);
BENCHMARK(BM_hash_curve);
BENCHMARK(BM_partition)->Arg(3)->Arg(10);
BENCHMARK(BM_ko_certify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
