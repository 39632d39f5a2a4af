#include "asgld/run.hpp"

#include <cassert>
#include <string>
#include <utility>

#include "asgld/errors.hpp"
#include "asgld/preconditioner.hpp"
#include "asgld/step_rules.hpp"

namespace asgld {

long effective_batch(const Problem& problem, const BatchSchedule& schedule, long k) {
  long b = schedule.size_at(k);
  if (const auto n = problem.sample_count()) b = std::min(b, *n);
  return b;
}

namespace {

Vec oracle_gradient(const Problem& problem, const MethodConfig& config, const Vec& x, long batch, Rng& rng) {
  if (config.method == Method::Agld) return problem.full_gradient(x);
  return problem.stochastic_gradient(x, batch, rng);
}

long recorded_batch(const Problem& problem, const MethodConfig& config, long k) {
  if (config.method == Method::Agld) return problem.sample_count().value_or(0);
  return effective_batch(problem, config.batch, k);
}

}  // namespace

RunTrace run(const Problem& problem, const MethodConfig& config, const RunOptions& opts, Seeds seeds) {
  config.validate();
  if (opts.budget < 1) throw ConfigError("run: budget must be >= 1, got " + std::to_string(opts.budget));
  if (opts.metric_every < 1) throw ConfigError("run: metric_every must be >= 1");
  if (opts.record_precond && opts.metric_every != 1) {
    throw ConfigError("run: recording preconditioner diagonals requires metric_every == 1");
  }
  const int d = problem.dimension();
  Vec x = opts.x0.value_or(problem.default_start());
  if (static_cast<int>(x.size()) != d) throw ConfigError("run: x0 dimension mismatch");
  if (problem.has_projection()) x = problem.project(std::move(x));
  if (!all_finite(x)) throw ConfigError("run: x0 must be finite");

  if (const auto ds = problem.dataset_seed()) seeds.dataset = *ds;

  RunTrace trace;
  trace.config = config;
  trace.seeds = seeds;
  trace.budget = opts.budget;
  trace.records.reserve(static_cast<std::size_t>(opts.budget / opts.metric_every + 2));

  Rng oracle_rng(derive_seed(seeds.oracle, /*tag=*/0x04AC1EULL));
  Rng noise_rng(derive_seed(seeds.noise, /*tag=*/0xA015EULL));

  Preconditioner precond(d, config.delta);
  Stepper stepper(config, d);
  Vec xnext(static_cast<std::size_t>(d));

  double min_grad_sq = 0.0;
  const auto record_at = [&](long k, long batch, const Vec* init_diag) {
    const double f = problem.objective(x);
    const Vec grad = problem.full_gradient(x);
    const double gn = norm2(grad);
    min_grad_sq = trace.records.empty() ? gn * gn : std::min(min_grad_sq, gn * gn);
    trace.records.push_back(TraceRecord{k, f, gn, min_grad_sq, batch, problem.error_metric(x)});
    if (opts.record_precond) {
      trace.precond_diags.push_back(init_diag != nullptr ? *init_diag : precond.diag());
    }
  };

  // Pre-step gradient at x0: seeds the accumulator so the first step already
  // uses curvature information, and keeps the delta*k lower bound exact.
  const Vec init_diag = precond.diag();
  record_at(0, recorded_batch(problem, config, 0), &init_diag);
  try {
    const Vec g0 = oracle_gradient(problem, config, x, effective_batch(problem, config.batch, 0), oracle_rng);
    precond.update(g0);
  } catch (const NumericError&) {
    trace.diverged = true;
    trace.diverged_at = 0;
    return trace;
  }

  for (long k = 1; k <= opts.budget; ++k) {
    assert(precond.step_count() == k);
    const long batch = effective_batch(problem, config.batch, k);
    Vec grad;
    try {
      grad = oracle_gradient(problem, config, x, batch, oracle_rng);
    } catch (const NumericError&) {
      trace.diverged = true;
      trace.diverged_at = k;
      break;
    }
    stepper.apply(xnext, x, precond, grad, &noise_rng, k);
    if (problem.has_projection()) xnext = problem.project(std::move(xnext));
    if (!all_finite(xnext)) {
      trace.diverged = true;
      trace.diverged_at = k;
      break;
    }
    const bool will_record = (k % opts.metric_every == 0) || k == opts.budget;
    Vec diag_snapshot;
    if (opts.record_precond && will_record) diag_snapshot = precond.diag();
    try {
      precond.update(grad);
    } catch (const NumericError&) {
      trace.diverged = true;
      trace.diverged_at = k;
      break;
    }
    x.swap(xnext);
    if (will_record) record_at(k, recorded_batch(problem, config, k), opts.record_precond ? &diag_snapshot : nullptr);
  }
  return trace;
}

}  // namespace asgld
