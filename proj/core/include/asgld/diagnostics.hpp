#pragma once

#include <vector>

#include "asgld/problem.hpp"
#include "asgld/run.hpp"

namespace asgld::diag {

/// Least-squares line fit. r_squared is defined as 1 when the response is
/// exactly constant (zero total variance).
struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// Convergence-rate fit of seed-averaged running-min |grad f|^2.
struct RateFit {
  double window = 0.5;  // fraction of the trace used, from the tail
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  long points = 0;
};

/// Averages the running min of |grad f|^2 across seeds at each recorded k,
/// then fits log(mean) against log(k) over the tail window. All traces must
/// share one config and an identical record grid (>= 3 traces).
RateFit fit_rate(const std::vector<RunTrace>& traces, double window = 0.5);

/// Growth of the cumulative preconditioner trace sums
///   S_k = sum over records j <= k of Tr(diag_j^(-phi)),
/// seed-averaged. The direct exponent fits log S vs log k over the tail
/// half; for summable cases (phi > 1) the dyadic increment exponent, fitted
/// on S_{2k} - S_k, is the informative one (it tracks k^(1-phi) for every
/// phi). log_fit_r2 reports how well S_k ~ a + c log k fits, the phi = 1
/// growth law.
struct TraceSumReport {
  double phi = 0.0;
  std::vector<long> ks;
  std::vector<double> sums;
  double exponent = 0.0;
  double increment_exponent = 0.0;
  double log_fit_r2 = 0.0;
};

/// Requires traces recorded with record_precond (ContractError otherwise).
TraceSumReport trace_sums(const std::vector<RunTrace>& traces, double phi);

/// Empirical convergence-bound decomposition per step k:
///   initial-gap term    (2/eta) (f(x_0) - mean f(x_k)) / W_k
///   oracle-variance     M eta C sum_j B_j^{-1} Tr(diag_j^{-alpha}) / W_k
///   injected-noise      2 M s2 sum_j Tr(diag_j^{-beta}) / W_k
/// with W_k = sum_{j<k} Tr(diag_j^{-alpha/2}), sums over records j < k and
/// expectations estimated by seed averages. M and C default to 1 when the
/// metadata does not supply them; the report is then flagged unnormalized.
/// Exact-oracle methods use C = 0 and no-noise methods contribute zero
/// injected-noise term. The initial-gap term is clamped at zero.
struct DecompositionReport {
  std::vector<long> ks;
  std::vector<double> initial_gap;
  std::vector<double> oracle_variance;
  std::vector<double> injected_noise;
  bool normalized = false;
  double lipschitz_M = 1.0;
  double grad_var_C = 1.0;
};

DecompositionReport decomposition(const std::vector<RunTrace>& traces, const ProblemMetadata& meta);

}  // namespace asgld::diag
