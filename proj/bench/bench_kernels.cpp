// Serial reference vs OpenMP path for each sweep kernel. Arg(0) = serial,
// Arg(1) = parallel; compare the pairs.

#include "projdunkl/catalog.hpp"
#include "projdunkl/kernels.hpp"
#include "projdunkl/rootgeom.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

using namespace projdunkl;

namespace {

Execution exec_of(const benchmark::State& st) { return st.range(0) ? Execution::Parallel : Execution::Serial; }

std::vector<CommutatorCase> commutator_cases() {
  std::vector<CommutatorCase> out;
  for (std::size_t N = 2; N <= 4; ++N) {
    std::vector<Rational> k(N / 2, Rational(1, 2));
    auto s = build_subsystem_A(N, k);
    std::vector<RationalVector> roots(s.roots().begin(), s.roots().end());
    std::vector<Rational> kv(s.kappas().begin(), s.kappas().end());
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = a + 1; b < N; ++b) {
        out.push_back(CommutatorCase{roots, kv, kv, RationalVector::unit(N, a), RationalVector::unit(N, b), 4});
      }
    }
  }
  return out;
}

void BM_commutator_sweep(benchmark::State& st) {
  const auto cases = commutator_cases();
  for (auto _ : st) benchmark::DoNotOptimize(commutator_sweep(cases, exec_of(st)));
  st.counters["cases"] = static_cast<double>(cases.size());
}

void BM_intertwining_case(benchmark::State& st) {
  IntertwiningCase c{build_subsystem_B(4, {Rational(1, 2), Rational(1)}, {Rational(3, 2), Rational(2)}),
                     RationalVector::unit(4, 0), 6, Fault::None};
  for (auto _ : st) benchmark::DoNotOptimize(intertwining_case(c, exec_of(st)));
}

void BM_kummer_grid(benchmark::State& st) {
  std::vector<double> lambdas(20), xs(200);
  std::iota(lambdas.begin(), lambdas.end(), 1.0);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -10.0 + 20.0 * i / (xs.size() - 1);
  const std::vector<double> kappas{0.5, 1.0, 2.0};
  for (auto _ : st) benchmark::DoNotOptimize(kummer_grid(kappas, lambdas, xs, exec_of(st)));
  st.counters["points"] = static_cast<double>(kappas.size() * lambdas.size() * xs.size());
}

void BM_transform_grid(benchmark::State& st) {
  TransformRequest r;
  r.kappa = 0.5;
  r.f = catalog_function("bump");
  for (int i = 0; i <= 40; ++i) r.lambda_grid.push_back(0.5 * i);
  for (auto _ : st) benchmark::DoNotOptimize(transform_grid(r, exec_of(st)));
}

}  // namespace

BENCHMARK(BM_commutator_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_intertwining_case)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_kummer_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_transform_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
