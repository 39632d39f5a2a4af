#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "asgld/rng.hpp"
#include "asgld/vec.hpp"

namespace asgld {

/// Known facts about a problem, used for diagnostics normalization and
/// harness warnings. All fields are optional; absent values are reported as
/// unknown rather than guessed.
struct ProblemMetadata {
  std::optional<Vec> optimum;
  std::optional<double> optimum_value;
  std::optional<double> lipschitz_M;   // gradient Lipschitz constant
  std::optional<double> grad_var_C;    // stochastic-gradient variance bound
  std::optional<double> saddle_gamma;  // strict-saddle parameter
  std::string notes;                   // documentation-only constants live here
};

/// Objective with a full gradient and a mini-batch stochastic gradient.
///
/// Implementations are immutable after construction and safe to share across
/// concurrent runs; all randomness comes from the caller's Rng.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual int dimension() const = 0;
  virtual double objective(const Vec& x) const = 0;
  virtual Vec full_gradient(const Vec& x) const = 0;

  /// Unbiased mini-batch gradient estimate. batch == sample_count() must
  /// return exactly full_gradient(x).
  virtual Vec stochastic_gradient(const Vec& x, long batch, Rng& rng) const = 0;

  virtual const ProblemMetadata& metadata() const = 0;

  /// Number of samples for empirical-risk problems; nullopt when the
  /// stochastic oracle is synthetic (no finite dataset).
  virtual std::optional<long> sample_count() const { return std::nullopt; }

  virtual std::optional<std::uint64_t> dataset_seed() const { return std::nullopt; }

  virtual bool has_projection() const { return false; }
  virtual Vec project(Vec x) const { return x; }

  /// Scalar progress measure recorded in traces when defined.
  virtual std::optional<double> error_metric(const Vec&) const { return std::nullopt; }

  virtual Vec default_start() const = 0;
};

}  // namespace asgld
