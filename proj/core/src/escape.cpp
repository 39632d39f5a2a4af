#include "asgld/escape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asgld/diagnostics.hpp"
#include "asgld/errors.hpp"

namespace asgld::diag {

double median(std::vector<double> values) {
  if (values.empty()) throw ContractError("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

EscapeResult measure_escape(const problems::QuadraticProblem& problem, const MethodConfig& config, long budget,
                            double delta, Seeds seeds) {
  config.validate();
  if (!problem.metadata().saddle_gamma.has_value()) {
    throw ContractError("measure_escape: problem is not a strict saddle");
  }
  if (!(delta >= 0.0)) throw ConfigError("measure_escape: delta must be >= 0");
  const bool injected = config.has_noise_term() && config.sigma2 > 0.0;
  const bool oracle_noise = config.uses_stochastic_oracle() && problem.noise_std() > 0.0;
  if (!injected && !oracle_noise) {
    throw ConfigError(
        "measure_escape: deterministic method started at an exact stationary point is a fixed point; "
        "give it injected noise or a stochastic oracle");
  }

  const int d = problem.dimension();
  RunOptions opts;
  opts.budget = budget;
  opts.metric_every = 1;
  opts.x0 = zeros(static_cast<std::size_t>(d));  // exactly the saddle
  const double f_saddle = problem.objective(*opts.x0);

  const RunTrace trace = run(problem, config, opts, seeds);

  EscapeResult result;
  result.f_drop_threshold = delta;
  result.dimension = d;
  result.gamma = *problem.metadata().saddle_gamma;
  result.seeds = trace.seeds;
  result.diverged = trace.diverged;
  for (const auto& rec : trace.records) {
    if (rec.k >= 1 && rec.f <= f_saddle - delta) {
      result.escaped = true;
      result.escape_step = rec.k;
      break;
    }
  }
  return result;
}

namespace {

/// Sum of squares for T ~ c d^p with the optimal c eliminated in closed form.
double power_ss_at(const std::vector<double>& dims, const std::vector<double>& medians, double p, double* c_out) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const double dp = std::pow(dims[i], p);
    num += medians[i] * dp;
    den += dp * dp;
  }
  const double c = den > 0.0 ? num / den : 0.0;
  if (c_out != nullptr) *c_out = c;
  double ss = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const double r = medians[i] - c * std::pow(dims[i], p);
    ss += r * r;
  }
  return ss;
}

}  // namespace

void fit_scaling_models(const std::vector<double>& dims, const std::vector<double>& medians, ScalingLogFit& log_fit,
                        ScalingPowerFit& power_fit) {
  if (dims.size() != medians.size() || dims.size() < 2) {
    throw ContractError("fit_scaling_models: need >= 2 (dim, median) pairs");
  }
  std::vector<double> log_d(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!(dims[i] > 0.0) || !(medians[i] > 0.0)) {
      throw ContractError("fit_scaling_models: dims and medians must be positive");
    }
    log_d[i] = std::log(dims[i]);
  }

  // Both models are fitted by least squares on the escape steps themselves,
  // so the two rms residuals are directly comparable.
  const LinFit lin = least_squares(log_d, medians);
  log_fit.a = lin.intercept;
  log_fit.b = lin.slope;

  // Power model: 1-d search over the exponent (c closed-form), refined by
  // golden-section around the best grid point.
  double best_p = 0.0, best_ss = power_ss_at(dims, medians, 0.0, nullptr);
  for (double p = -2.0; p <= 2.0 + 1e-9; p += 0.02) {
    const double ss = power_ss_at(dims, medians, p, nullptr);
    if (ss < best_ss) {
      best_ss = ss;
      best_p = p;
    }
  }
  double lo = best_p - 0.02, hi = best_p + 0.02;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
  double f1 = power_ss_at(dims, medians, x1, nullptr), f2 = power_ss_at(dims, medians, x2, nullptr);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = power_ss_at(dims, medians, x1, nullptr);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = power_ss_at(dims, medians, x2, nullptr);
    }
  }
  power_fit.p = 0.5 * (lo + hi);
  const double ss_pow = power_ss_at(dims, medians, power_fit.p, &power_fit.c);

  double ss_log = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const double r_log = medians[i] - (log_fit.a + log_fit.b * log_d[i]);
    ss_log += r_log * r_log;
  }
  log_fit.rms = std::sqrt(ss_log / static_cast<double>(dims.size()));
  power_fit.rms = std::sqrt(ss_pow / static_cast<double>(dims.size()));
}

ScalingFit escape_scaling(const std::vector<int>& dims, const MethodConfig& config,
                          const EscapeScalingOptions& opts) {
  if (dims.size() < 2) throw ContractError("escape_scaling: need >= 2 dimensions");
  const auto [lo, hi] = std::minmax_element(dims.begin(), dims.end());
  if (*lo < 2) throw ContractError("escape_scaling: dimensions must be >= 2");
  if (std::log2(static_cast<double>(*hi) / static_cast<double>(*lo)) < 4.0) {
    throw ContractError("escape_scaling: dimension list must span at least 4 octaves");
  }
  if (opts.replicates < 1) throw ConfigError("escape_scaling: replicates must be >= 1");

  ScalingFit fit;
  std::vector<double> fit_dims, fit_medians;
  for (const int d : dims) {
    auto problem = problems::QuadraticProblem::saddle(
        d, opts.gamma, opts.positive_eig, opts.noise_std,
        opts.rotation_seed ? std::optional<std::uint64_t>(derive_seed(*opts.rotation_seed, static_cast<std::uint64_t>(d)))
                           : std::nullopt,
        opts.eig_decay);
    std::vector<long> steps;
    bool all_escaped = true;
    for (int r = 0; r < opts.replicates; ++r) {
      const std::uint64_t s = opts.base_seed + static_cast<std::uint64_t>(r);
      const EscapeResult res = measure_escape(problem, config, opts.budget, opts.delta, Seeds{0, s, s});
      if (!res.escaped) {
        all_escaped = false;
        break;
      }
      steps.push_back(*res.escape_step);
    }
    if (!all_escaped) {
      fit.excluded_dims.push_back(d);
      continue;
    }
    fit.dims.push_back(d);
    fit.escape_steps.push_back(steps);
    std::vector<double> as_double(steps.begin(), steps.end());
    const double med = median(std::move(as_double));
    fit.median_escape.push_back(med);
    fit_dims.push_back(static_cast<double>(d));
    fit_medians.push_back(med);
  }
  if (fit_dims.size() >= 2) {
    fit_scaling_models(fit_dims, fit_medians, fit.log_fit, fit.power_fit);
  }
  return fit;
}

}  // namespace asgld::diag
