#pragma once

#include <string>
#include <vector>

#include "asgld/harness/spec.hpp"

namespace asgld::harness {

/// Built-in experiment presets:
///   appendix12     - the 12-method comparison on the Gaussian-variance MLE
///   rate_grid      - convergence-rate slopes on a noisy convex quadratic
///   escape_scaling - saddle-escape time vs dimension
///   tracesum_grid  - preconditioner trace-sum growth laws
/// Unknown names raise ConfigError listing the available presets.
ExperimentSpec preset(const std::string& name);

const std::vector<std::string>& preset_names();

}  // namespace asgld::harness
