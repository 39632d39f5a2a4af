#include <benchmark/benchmark.h>

#include "asgld/problems/gaussian_variance_mle.hpp"
#include "asgld/problems/quadratic.hpp"

using namespace asgld;

static void BM_MleStochasticGradient(benchmark::State& state) {
  const long batch = state.range(0);
  const problems::GaussianVarianceMle mle(10000, 1);
  Rng rng(7);
  const Vec x{0.5, 5.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mle.stochastic_gradient(x, batch, rng));
  }
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_MleStochasticGradient)->Arg(1)->Arg(10)->Arg(100);

static void BM_SaddleGradientRotated(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto saddle = problems::QuadraticProblem::saddle(d, 1.0, 1.0, 0.5, 3);
  Rng rng(7);
  Vec x(static_cast<std::size_t>(d), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(saddle.stochastic_gradient(x, 1, rng));
  }
  state.SetItemsProcessed(state.iterations() * d);
}
BENCHMARK(BM_SaddleGradientRotated)->Arg(8)->Arg(64)->Arg(512);
