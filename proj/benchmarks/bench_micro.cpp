#include <benchmark/benchmark.h>

#include "partidfo/bench.hpp"
#include "partidfo/problems.hpp"
#include "partidfo/solver.hpp"

namespace {

using namespace partidfo;

void BM_MonoOracle(benchmark::State& state) {
  const auto p = make_problem(ProblemId::mono);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.oracle({x}));
    x += 1e-6;
  }
}
BENCHMARK(BM_MonoOracle);

void BM_HeavyMonoObjective(benchmark::State& state) {
  const auto p = make_problem(ProblemId::heavy_mono);
  const Vec y(101, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(p.phi(y));
}
BENCHMARK(BM_HeavyMonoObjective);

void BM_Dim2Oracle(benchmark::State& state) {
  Vec x{1.25, -0.75};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dim2_oracle(x));
    x[0] += 1e-6;
  }
}
BENCHMARK(BM_Dim2Oracle);

void BM_HeavyDim2Oracle(benchmark::State& state) {
  const auto p = make_problem(ProblemId::heavy_dim2);
  Vec x(10, 2.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.oracle(x));
    x[0] += 1e-6;
  }
}
BENCHMARK(BM_HeavyDim2Oracle);

void BM_PositiveBasis(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(random_orthogonal_positive_basis(n, 1.0, rng));
}
BENCHMARK(BM_PositiveBasis)->Arg(2)->Arg(10)->Arg(101);

void BM_CoveringCandidate(benchmark::State& state) {
  const std::size_t hist = static_cast<std::size_t>(state.range(0));
  Rng rng(9);
  History h;
  for (std::size_t i = 0; i < hist; ++i) {
    Vec p(2);
    for (auto& c : p) c = rng.uniform(-2.0, 2.0);
    h.append(std::move(p), ExtendedReal(0.0));
  }
  const Vec x{0.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(covering_candidate(x, h, 1.0, rng, 64));
}
BENCHMARK(BM_CoveringCandidate)->Arg(64)->Arg(512)->Arg(4096);

void BM_SolveMonoFromPi(benchmark::State& state) {
  const auto p = make_problem(ProblemId::mono);
  SolverConfig c;
  c.lambda = 0.5;
  c.upsilon = 1.0;
  c.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_reformulated_from_index(p, {3.14159265358979}, c, CostModel{0.0}, {}));
  }
}
BENCHMARK(BM_SolveMonoFromPi);

}  // namespace

BENCHMARK_MAIN();
