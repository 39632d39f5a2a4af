#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "asgld/problems/quadratic.hpp"
#include "asgld/run.hpp"

namespace asgld::diag {

/// Outcome of one saddle-escape run.
struct EscapeResult {
  bool escaped = false;
  std::optional<long> escape_step;  // first k >= 1 with f(x_k) <= f(saddle) - delta
  double f_drop_threshold = 0.0;
  int dimension = 0;
  double gamma = 0.0;
  Seeds seeds;
  bool diverged = false;
};

/// Runs the configured method from exactly the saddle point and reports the
/// first step whose objective drops at least delta below the saddle value.
/// Deterministic configurations are rejected (ConfigError): with no injected
/// noise and an exact oracle the saddle is a fixed point.
EscapeResult measure_escape(const problems::QuadraticProblem& problem, const MethodConfig& config, long budget,
                            double delta, Seeds seeds);

/// Saddle family and protocol for the dimension-scaling experiment.
struct EscapeScalingOptions {
  double gamma = 1.0;
  double positive_eig = 1.0;
  double eig_decay = 0.0;  // positive spectrum l_j = positive_eig * j^(-eig_decay)
  double noise_std = 1.0;
  long budget = 10000;
  double delta = 0.1;
  int replicates = 20;
  std::uint64_t base_seed = 1;
  std::optional<std::uint64_t> rotation_seed;
};

struct ScalingLogFit {
  double a = 0.0;  // T ~ a + b log d
  double b = 0.0;
  double rms = 0.0;
};

struct ScalingPowerFit {
  double c = 0.0;  // T ~ c d^p, fitted in log-log space
  double p = 0.0;
  double rms = 0.0;
};

/// Both candidate models are always reported together with their residuals;
/// this function never picks a winner. Residuals are root-mean-square errors
/// in escape-step units for both models, so they are directly comparable.
struct ScalingFit {
  std::vector<int> dims;               // dims that entered the fit
  std::vector<double> median_escape;   // per entered dim
  std::vector<int> excluded_dims;      // dims with a non-escaped replicate
  std::vector<std::vector<long>> escape_steps;  // raw steps per entered dim
  ScalingLogFit log_fit;
  ScalingPowerFit power_fit;
};

/// Fits median escape step against dimension for both models. Exposed
/// separately so planted synthetic data can exercise the fitting alone.
void fit_scaling_models(const std::vector<double>& dims, const std::vector<double>& medians, ScalingLogFit& log_fit,
                        ScalingPowerFit& power_fit);

/// Runs replicated escape experiments over the dimension list (which must
/// span at least 4 octaves) and fits the median escape step against both
/// models. A dimension with any non-escaped replicate is excluded from the
/// fits and reported in excluded_dims.
ScalingFit escape_scaling(const std::vector<int>& dims, const MethodConfig& config,
                          const EscapeScalingOptions& opts);

double median(std::vector<double> values);

}  // namespace asgld::diag
