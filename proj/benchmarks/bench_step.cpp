#include <benchmark/benchmark.h>

#include "asgld/preconditioner.hpp"
#include "asgld/rng.hpp"
#include "asgld/step_rules.hpp"

using namespace asgld;

static void BM_PrecondUpdate(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Preconditioner p(d, 0.1);
  Vec g(static_cast<std::size_t>(d));
  Rng rng(1);
  rng.fill_normal(g);
  for (auto _ : state) {
    p.update(g);
    benchmark::DoNotOptimize(p.diag().data());
  }
  state.SetItemsProcessed(state.iterations() * d);
}
BENCHMARK(BM_PrecondUpdate)->Arg(8)->Arg(64)->Arg(512);

static void BM_PrecondPowerHalf(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Preconditioner p(d, 0.1);
  Vec g(static_cast<std::size_t>(d)), out(static_cast<std::size_t>(d));
  Rng rng(1);
  rng.fill_normal(g);
  p.update(g);
  for (auto _ : state) {
    p.power_into(0.5, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * d);
}
BENCHMARK(BM_PrecondPowerHalf)->Arg(8)->Arg(64)->Arg(512);

static void BM_BalancedStep(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  MethodConfig cfg;
  cfg.method = Method::Asgld;
  cfg.alpha = 1.0;
  cfg.beta = 1.0;
  cfg.eta = 0.05;
  Preconditioner p(d, 0.1);
  Stepper stepper(cfg, d);
  Vec x(static_cast<std::size_t>(d), 0.5), g(static_cast<std::size_t>(d)), out(static_cast<std::size_t>(d));
  Rng grad_rng(2), noise_rng(3);
  for (auto _ : state) {
    grad_rng.fill_normal(g);
    stepper.apply(out, x, p, g, &noise_rng, 1);
    p.update(g);
    x.swap(out);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * d);
}
BENCHMARK(BM_BalancedStep)->Arg(8)->Arg(64)->Arg(512);

BENCHMARK_MAIN();
