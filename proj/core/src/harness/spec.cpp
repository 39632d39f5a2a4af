#include "asgld/harness/spec.hpp"

#include <set>
#include <string>

#include "asgld/errors.hpp"
#include "asgld/problems/gaussian_variance_mle.hpp"
#include "asgld/problems/quadratic.hpp"

namespace asgld::harness {

const char* problem_kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::GaussianMle: return "gaussian_mle";
    case ProblemKind::QuadraticBowl: return "quadratic_bowl";
    case ProblemKind::QuadraticSaddle: return "quadratic_saddle";
  }
  return "?";
}

std::optional<ProblemKind> problem_kind_from_name(const std::string& name) {
  if (name == "gaussian_mle") return ProblemKind::GaussianMle;
  if (name == "quadratic_bowl") return ProblemKind::QuadraticBowl;
  if (name == "quadratic_saddle") return ProblemKind::QuadraticSaddle;
  return std::nullopt;
}

void ExperimentSpec::validate() const {
  if (methods.empty()) throw ConfigError("spec: at least one [method] section is required");
  std::set<std::string> labels;
  for (const auto& m : methods) {
    if (m.label.empty()) throw ConfigError("spec: method labels must be non-empty");
    for (const char c : m.label) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                      c == '-' || c == '.';
      if (!ok) throw ConfigError("spec: method label '" + m.label + "' contains characters unsafe for file names");
    }
    if (!labels.insert(m.label).second) throw ConfigError("spec: duplicate method label '" + m.label + "'");
    m.config.validate();
  }
  if (run.budget < 1) throw ConfigError("spec: [run] budget must be >= 1");
  if (run.seeds.empty()) throw ConfigError("spec: [run] seeds must be non-empty");
  if (run.metric_every < 1) throw ConfigError("spec: [run] metric_every must be >= 1");
  if (run.record_precond && run.metric_every != 1) {
    throw ConfigError("spec: record_precond requires metric_every = 1");
  }
  if (!(run.rate_window > 0.0) || run.rate_window > 1.0) {
    throw ConfigError("spec: rate_window must lie in (0, 1]");
  }
  if (run.escape_delta && problem.kind != ProblemKind::QuadraticSaddle) {
    throw ConfigError("spec: escape_delta applies to quadratic_saddle problems only");
  }
  if (run.escape_delta && !(*run.escape_delta >= 0.0)) {
    throw ConfigError("spec: escape_delta must be >= 0");
  }

  if (problem.dims.empty()) throw ConfigError("spec: problem needs at least one dimension");
  if (problem.dims.size() > 1 && problem.kind != ProblemKind::QuadraticSaddle) {
    throw ConfigError("spec: a dimension grid (dims) is supported for quadratic_saddle only");
  }
  switch (problem.kind) {
    case ProblemKind::GaussianMle:
      if (problem.n < 1) throw ConfigError("spec: gaussian_mle needs n >= 1");
      if (!(problem.floor > 0.0)) throw ConfigError("spec: gaussian_mle floor must be positive");
      break;
    case ProblemKind::QuadraticBowl:
      if (problem.dims[0] < 1) throw ConfigError("spec: quadratic_bowl needs dim >= 1");
      if (!(problem.eig_min > 0.0) || !(problem.eig_max >= problem.eig_min)) {
        throw ConfigError("spec: quadratic_bowl needs 0 < eig_min <= eig_max");
      }
      if (!(problem.start_radius > 0.0)) throw ConfigError("spec: start_radius must be positive");
      break;
    case ProblemKind::QuadraticSaddle:
      for (const int d : problem.dims) {
        if (d < 2) throw ConfigError("spec: quadratic_saddle needs dims >= 2");
      }
      if (!(problem.gamma > 0.0)) throw ConfigError("spec: gamma must be positive");
      if (!(problem.positive_eig > 0.0)) throw ConfigError("spec: positive_eig must be positive");
      if (!(problem.eig_decay >= 0.0)) throw ConfigError("spec: eig_decay must be >= 0");
      break;
  }
  if (!(problem.noise_std >= 0.0)) throw ConfigError("spec: noise_std must be >= 0");

  if (run.x0) {
    if (problem.dims.size() > 1) throw ConfigError("spec: x0 cannot be set on a dimension grid");
    const std::size_t d = problem.kind == ProblemKind::GaussianMle ? 2u : static_cast<std::size_t>(problem.dims[0]);
    if (run.x0->size() != d) throw ConfigError("spec: x0 has the wrong dimension");
  }
}

std::shared_ptr<const Problem> make_problem(const ProblemSpec& spec, int dim) {
  switch (spec.kind) {
    case ProblemKind::GaussianMle:
      return std::make_shared<problems::GaussianVarianceMle>(spec.n, spec.dataset_seed, spec.floor);
    case ProblemKind::QuadraticBowl:
      return std::make_shared<problems::QuadraticProblem>(problems::QuadraticProblem::bowl(
          dim, spec.eig_min, spec.eig_max, spec.noise_std, spec.start_radius, spec.dataset_seed,
          spec.rotate ? std::optional<std::uint64_t>(derive_seed(spec.dataset_seed, 0x07A7E)) : std::nullopt));
    case ProblemKind::QuadraticSaddle:
      return std::make_shared<problems::QuadraticProblem>(problems::QuadraticProblem::saddle(
          dim, spec.gamma, spec.positive_eig, spec.noise_std,
          spec.rotate ? std::optional<std::uint64_t>(
                            derive_seed(spec.dataset_seed, 0x07A7E + static_cast<std::uint64_t>(dim)))
                      : std::nullopt,
          spec.eig_decay));
  }
  throw ConfigError("make_problem: unknown problem kind");
}

}  // namespace asgld::harness
