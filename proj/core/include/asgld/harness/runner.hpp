#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "asgld/harness/spec.hpp"

namespace asgld::harness {

struct RunnerOptions {
  std::string out_dir;  // already resolved; created if missing
  int jobs = 1;
  std::ostream* log = nullptr;  // warnings and progress; may be null
};

struct ExperimentResult {
  int exit_code = 0;  // nonzero iff any run diverged or any file write failed
  std::string out_dir;
  long traces_written = 0;
  long diverged_runs = 0;
  std::vector<std::string> warnings;
};

/// Runs every (dimension, method, seed) cell of the spec, one trace CSV per
/// run (plus a preconditioner companion when record_precond is set), then a
/// manifest, summary.csv, summary.txt and, for saddle grids, an
/// escape_scaling.csv. Independent runs may execute concurrently (jobs > 1);
/// all aggregation happens after a join in deterministic order, so outputs
/// are identical regardless of job count.
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunnerOptions& opts);

/// Re-runs the summary diagnostics over an existing output directory using
/// its manifest and trace files, rewriting the summary artifacts.
ExperimentResult refit_outputs(const std::string& out_dir, std::ostream* log = nullptr);

/// Out-dir precedence: --out flag, then the spec's [run] out, then the
/// ASGLD_OUT environment variable, then ./asgld_out.
std::string resolve_out_dir(const std::string& cli_out, const ExperimentSpec& spec);

std::string trace_file_name(const std::string& label, int dim, bool multi_dim, std::uint64_t seed);

}  // namespace asgld::harness
