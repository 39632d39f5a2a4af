#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "asgld/method_config.hpp"
#include "asgld/problem.hpp"
#include "asgld/vec.hpp"

namespace asgld {

/// The three independent randomness sources of one run. The dataset seed is
/// informational here (datasets are frozen at problem construction); oracle
/// and noise seed the mini-batch sampling and the injected-noise streams.
struct Seeds {
  std::uint64_t dataset = 0;
  std::uint64_t oracle = 0;
  std::uint64_t noise = 0;

  bool operator==(const Seeds&) const = default;
};

struct RunOptions {
  long budget = 0;
  int metric_every = 1;         // evaluate f and the true gradient every m-th step
  bool record_precond = false;  // requires metric_every == 1
  std::optional<Vec> x0;        // overrides the problem's default start
};

struct TraceRecord {
  long k = 0;
  double f = 0.0;
  double grad_norm = 0.0;
  double min_grad_sq = 0.0;  // running min of |grad f|^2 over evaluated steps
  long batch = 0;            // actual batch used (capped at n); n or 0 for full-gradient methods
  std::optional<double> err_metric;
};

/// Seeded, reproducible record of one optimization run.
struct RunTrace {
  std::vector<TraceRecord> records;
  std::vector<Vec> precond_diags;  // parallel to records when recorded
  MethodConfig config;
  Seeds seeds;
  long budget = 0;
  bool diverged = false;
  long diverged_at = -1;

  const TraceRecord& final_record() const { return records.back(); }
};

/// Executes budget steps of the configured method.
///
/// The loop first evaluates one oracle gradient at x0 to seed the
/// accumulator, so the preconditioner applied at step k is built from the
/// gradients at x0..x_{k-1} and never from the gradient it multiplies.
/// The feasible projection, when the problem defines one, is applied after
/// the full step. The true gradient is evaluated for metrics only and never
/// fed to stochastic methods. A step producing NaN/Inf aborts the run and
/// returns the partial trace flagged as diverged.
RunTrace run(const Problem& problem, const MethodConfig& config, const RunOptions& opts, Seeds seeds);

/// Batch size the oracle actually receives at step k: the schedule value,
/// capped at the dataset size for finite-sample problems.
long effective_batch(const Problem& problem, const BatchSchedule& schedule, long k);

}  // namespace asgld
