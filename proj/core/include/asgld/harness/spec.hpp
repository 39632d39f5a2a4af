#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asgld/method_config.hpp"
#include "asgld/problem.hpp"
#include "asgld/vec.hpp"

namespace asgld::harness {

enum class ProblemKind { GaussianMle, QuadraticBowl, QuadraticSaddle };

const char* problem_kind_name(ProblemKind k);
std::optional<ProblemKind> problem_kind_from_name(const std::string& name);

/// Problem block of an experiment spec. Only the fields relevant to the
/// kind are serialized; the rest keep their defaults.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::GaussianMle;
  std::uint64_t dataset_seed = 1;
  // gaussian_mle
  long n = 10000;
  double floor = 1e-6;
  // quadratics
  std::vector<int> dims = {2};
  double noise_std = 1.0;
  bool rotate = false;
  // quadratic_saddle
  double gamma = 1.0;
  double positive_eig = 1.0;
  double eig_decay = 0.0;
  // quadratic_bowl
  double eig_min = 0.1;
  double eig_max = 1.0;
  double start_radius = 3.0;

  bool operator==(const ProblemSpec&) const = default;
};

struct LabeledMethod {
  std::string label;
  MethodConfig config;

  bool operator==(const LabeledMethod&) const = default;
};

struct RunSection {
  long budget = 0;
  std::vector<std::uint64_t> seeds;
  int metric_every = 1;
  bool record_precond = false;
  std::string out;  // empty: resolved from --out, the env var, then ./asgld_out
  std::optional<Vec> x0;
  std::optional<double> escape_delta;  // saddle problems; defaults to 0.1 * gamma
  double rate_window = 0.5;

  bool operator==(const RunSection&) const = default;
};

struct ExperimentSpec {
  ProblemSpec problem;
  RunSection run;
  std::vector<LabeledMethod> methods;

  bool operator==(const ExperimentSpec&) const = default;

  /// Structural checks: at least one method, unique labels, positive budget,
  /// non-empty seed list, coherent problem parameters, per-method
  /// MethodConfig::validate(). Throws ConfigError.
  void validate() const;
};

/// Instantiates the problem for one dimension entry of the spec.
std::shared_ptr<const Problem> make_problem(const ProblemSpec& spec, int dim);

}  // namespace asgld::harness
