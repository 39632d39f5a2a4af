#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "asgld/problem.hpp"

namespace asgld::problems {

/// Maximum-likelihood estimation of the two variances of a diagonal Gaussian.
///
/// The dataset is n i.i.d. pairs (y1, y2) ~ N(0, diag(0.1, 10)), drawn once
/// at construction and frozen, so every method in a comparison sees the same
/// samples. The objective is the per-sample average negative log-likelihood
/// (up to constants)
///
///   f(x) = log x1 + log x2 + mean(y1^2)/x1 + mean(y2^2)/x2,
///
/// which is non-convex, minimized at x = (mean(y1^2), mean(y2^2)), and only
/// defined on the positive orthant. Iterates are kept feasible by clamping
/// to a small positive floor after every step.
class GaussianVarianceMle final : public Problem {
 public:
  static constexpr double kTrueVar1 = 0.1;
  static constexpr double kTrueVar2 = 10.0;

  GaussianVarianceMle(long n, std::uint64_t dataset_seed, double floor = 1e-6);

  /// Builds the problem from explicit samples (used by tests).
  GaussianVarianceMle(std::vector<std::pair<double, double>> samples, double floor = 1e-6);

  int dimension() const override { return 2; }
  double objective(const Vec& x) const override;
  Vec full_gradient(const Vec& x) const override;
  Vec stochastic_gradient(const Vec& x, long batch, Rng& rng) const override;
  const ProblemMetadata& metadata() const override { return metadata_; }
  std::optional<long> sample_count() const override { return n_; }
  std::optional<std::uint64_t> dataset_seed() const override { return seed_; }

  bool has_projection() const override { return true; }
  Vec project(Vec x) const override;

  /// Squared distance to the data-generating variances (0.1, 10).
  std::optional<double> error_metric(const Vec& x) const override;

  Vec default_start() const override { return {1.0, 1.0}; }

  double floor() const { return floor_; }
  /// Sample second moments (mean of y1^2, mean of y2^2); the minimizer.
  const Vec& sample_moments() const { return moments_; }

 private:
  void finish_setup();
  void check_domain(const Vec& x) const;

  long n_ = 0;
  std::optional<std::uint64_t> seed_;
  double floor_ = 1e-6;
  std::vector<double> y1sq_;
  std::vector<double> y2sq_;
  Vec moments_;
  ProblemMetadata metadata_;
};

}  // namespace asgld::problems
