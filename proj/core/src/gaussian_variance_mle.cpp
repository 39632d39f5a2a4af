#include "asgld/problems/gaussian_variance_mle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asgld/errors.hpp"

namespace asgld::problems {

GaussianVarianceMle::GaussianVarianceMle(long n, std::uint64_t dataset_seed, double floor)
    : n_(n), seed_(dataset_seed), floor_(floor) {
  if (n < 1) throw ConfigError("GaussianVarianceMle: need n >= 1, got " + std::to_string(n));
  Rng rng(derive_seed(dataset_seed, /*tag=*/0xDA7A));
  const double sd1 = std::sqrt(kTrueVar1);
  const double sd2 = std::sqrt(kTrueVar2);
  y1sq_.resize(static_cast<std::size_t>(n));
  y2sq_.resize(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double y1 = sd1 * rng.normal();
    const double y2 = sd2 * rng.normal();
    y1sq_[static_cast<std::size_t>(i)] = y1 * y1;
    y2sq_[static_cast<std::size_t>(i)] = y2 * y2;
  }
  finish_setup();
}

GaussianVarianceMle::GaussianVarianceMle(std::vector<std::pair<double, double>> samples, double floor)
    : n_(static_cast<long>(samples.size())), floor_(floor) {
  if (samples.empty()) throw ConfigError("GaussianVarianceMle: need at least one sample");
  y1sq_.reserve(samples.size());
  y2sq_.reserve(samples.size());
  for (const auto& [y1, y2] : samples) {
    y1sq_.push_back(y1 * y1);
    y2sq_.push_back(y2 * y2);
  }
  finish_setup();
}

void GaussianVarianceMle::finish_setup() {
  if (!(floor_ > 0.0)) throw ConfigError("GaussianVarianceMle: floor must be positive");
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < y1sq_.size(); ++i) {
    s1 += y1sq_[i];
    s2 += y2sq_[i];
  }
  const double inv_n = 1.0 / static_cast<double>(n_);
  moments_ = {s1 * inv_n, s2 * inv_n};
  metadata_.optimum = moments_;
  // Degenerate all-zero datasets (possible via the explicit-sample ctor)
  // have no interior minimizer; skip the optimum value then.
  if (moments_[0] > 0.0 && moments_[1] > 0.0) {
    metadata_.optimum_value = objective(moments_);
  } else {
    metadata_.optimum.reset();
  }
  metadata_.grad_var_C.reset();  // depends on x; no uniform bound is claimed
  metadata_.notes =
      "Gradient Lipschitz constant is unbounded near the positive-orthant "
      "boundary, so no global M is recorded.";
}

void GaussianVarianceMle::check_domain(const Vec& x) const {
  if (x.size() != 2) throw ContractError("GaussianVarianceMle: expected dimension 2");
  if (!(x[0] > 0.0) || !(x[1] > 0.0)) {
    throw DomainError("GaussianVarianceMle: objective requires x > 0 (project first)");
  }
}

double GaussianVarianceMle::objective(const Vec& x) const {
  check_domain(x);
  return std::log(x[0]) + std::log(x[1]) + moments_[0] / x[0] + moments_[1] / x[1];
}

Vec GaussianVarianceMle::full_gradient(const Vec& x) const {
  check_domain(x);
  return {1.0 / x[0] - moments_[0] / (x[0] * x[0]), 1.0 / x[1] - moments_[1] / (x[1] * x[1])};
}

Vec GaussianVarianceMle::stochastic_gradient(const Vec& x, long batch, Rng& rng) const {
  check_domain(x);
  if (batch < 1 || batch > n_) {
    throw ConfigError("GaussianVarianceMle: batch must lie in [1, " + std::to_string(n_) + "], got " +
                      std::to_string(batch));
  }
  if (batch == n_) return full_gradient(x);
  const auto idx = sample_without_replacement(static_cast<std::uint64_t>(n_), static_cast<std::uint64_t>(batch), rng);
  double s1 = 0.0, s2 = 0.0;
  for (const auto i : idx) {
    s1 += y1sq_[static_cast<std::size_t>(i)];
    s2 += y2sq_[static_cast<std::size_t>(i)];
  }
  const double inv_b = 1.0 / static_cast<double>(batch);
  const double b1 = s1 * inv_b;
  const double b2 = s2 * inv_b;
  return {1.0 / x[0] - b1 / (x[0] * x[0]), 1.0 / x[1] - b2 / (x[1] * x[1])};
}

Vec GaussianVarianceMle::project(Vec x) const {
  for (double& v : x) v = std::max(v, floor_);
  return x;
}

std::optional<double> GaussianVarianceMle::error_metric(const Vec& x) const {
  const double d1 = x[0] - kTrueVar1;
  const double d2 = x[1] - kTrueVar2;
  return d1 * d1 + d2 * d2;
}

}  // namespace asgld::problems
