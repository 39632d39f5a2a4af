#include "asgld/harness/presets.hpp"

#include <sstream>

#include "asgld/errors.hpp"

namespace asgld::harness {

namespace {

MethodConfig base(Method m) {
  MethodConfig c;
  c.method = m;
  c.eta = 0.01;
  c.delta = 0.1;
  c.sigma2 = 1.0;
  c.alpha = 0.0;
  c.beta.reset();
  return c;
}

MethodConfig sgld(double u, long batch) {
  MethodConfig c = base(Method::Sgld);
  c.temperature_u = u;
  c.batch = BatchSchedule::constant(batch);
  return c;
}

MethodConfig asgld(double alpha, double beta, BatchSchedule batch) {
  MethodConfig c = base(Method::Asgld);
  c.alpha = alpha;
  c.beta = beta;
  c.batch = batch;
  return c;
}

MethodConfig agld(double alpha, double beta) {
  MethodConfig c = base(Method::Agld);
  c.alpha = alpha;
  c.beta = beta;
  return c;
}

MethodConfig asg(double alpha, long batch) {
  MethodConfig c = base(Method::Asg);
  c.alpha = alpha;
  c.sigma2 = 1.0;
  c.batch = BatchSchedule::constant(batch);
  return c;
}

std::vector<std::uint64_t> seed_range(std::uint64_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::uint64_t i = 0; i < count; ++i) seeds[i] = i + 1;
  return seeds;
}

ExperimentSpec appendix12() {
  ExperimentSpec spec;
  spec.problem.kind = ProblemKind::GaussianMle;
  spec.problem.n = 10000;
  spec.problem.dataset_seed = 1;
  spec.run.budget = 20000;
  spec.run.seeds = seed_range(3);

  spec.methods.push_back({"SGLD", sgld(1.0, 1)});
  spec.methods.push_back({"SGLD_B", sgld(1.0, 10)});
  MethodConfig sgld_a = sgld(1.0, 10);
  sgld_a.eta = 1.0;  // eta_t = (1 + t)^-1
  sgld_a.decay = StepDecay::InverseT;
  spec.methods.push_back({"SGLD_A", sgld_a});
  spec.methods.push_back({"ASGLD", asgld(1.0, 1.0, BatchSchedule::constant(1))});
  spec.methods.push_back({"ASGLD_B", asgld(1.0, 1.0, BatchSchedule::constant(10))});
  spec.methods.push_back({"ASGLD_I", asgld(0.0, 1.0, BatchSchedule::linear(1.0))});
  spec.methods.push_back({"ASGLD2", asgld(1.0, 2.0, BatchSchedule::constant(10))});
  spec.methods.push_back({"ASGLD3", asgld(1.0, 0.3, BatchSchedule::constant(10))});
  spec.methods.push_back({"ASG", asg(1.0, 1)});
  spec.methods.push_back({"AGLD", agld(0.0, 1.0)});
  spec.methods.push_back({"AGLD2", agld(0.0, 2.0)});
  spec.methods.push_back({"AGLD3", agld(0.0, 0.3)});
  return spec;
}

ExperimentSpec rate_grid() {
  ExperimentSpec spec;
  spec.problem.kind = ProblemKind::QuadraticBowl;
  spec.problem.dims = {64};
  spec.problem.eig_min = 0.25;
  spec.problem.eig_max = 1.0;
  spec.problem.noise_std = 1.0;
  spec.problem.start_radius = 3.0;
  spec.problem.dataset_seed = 1;
  spec.run.budget = 100000;
  spec.run.seeds = seed_range(10);
  spec.run.metric_every = 1;
  spec.run.rate_window = 0.9;

  MethodConfig a = asg(1.0, 1);
  a.eta = 0.1;
  spec.methods.push_back({"ASG", a});
  MethodConfig b = asgld(1.0, 1.0, BatchSchedule::constant(1));
  b.eta = 0.1;
  spec.methods.push_back({"ASGLD_balanced", b});
  MethodConfig c = agld(0.0, 1.0);
  c.eta = 0.1;
  spec.methods.push_back({"AGLD_balanced", c});
  return spec;
}

ExperimentSpec escape_scaling_preset() {
  ExperimentSpec spec;
  spec.problem.kind = ProblemKind::QuadraticSaddle;
  spec.problem.dims = {2, 8, 32, 128, 512};
  spec.problem.gamma = 1.0;
  // Harmonically decaying positive spectrum: the bath energy then grows
  // like log d instead of linearly in d, keeping the escape-time trend in
  // the dimension range where the log model is informative.
  spec.problem.positive_eig = 2.0;
  spec.problem.eig_decay = 1.0;
  spec.problem.noise_std = 0.05;
  spec.problem.dataset_seed = 1;
  spec.run.budget = 10000;
  spec.run.seeds = seed_range(20);
  spec.run.escape_delta = 0.006;

  MethodConfig m = asgld(1.0, 1.0, BatchSchedule::constant(1));
  m.eta = 0.1;
  m.sigma2 = 0.01;
  m.delta = 0.5;
  spec.methods.push_back({"ASGLD_balanced", m});
  return spec;
}

ExperimentSpec tracesum_grid() {
  ExperimentSpec spec;
  spec.problem.kind = ProblemKind::GaussianMle;
  spec.problem.n = 10000;
  spec.problem.dataset_seed = 1;
  spec.run.budget = 10000;
  spec.run.seeds = seed_range(10);
  spec.run.record_precond = true;
  spec.run.x0 = Vec{0.1, 10.0};  // stationary start isolates the growth law

  MethodConfig m = asg(1.0, 1);
  m.eta = 0.05;
  spec.methods.push_back({"ASG", m});
  return spec;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"appendix12", "rate_grid", "escape_scaling", "tracesum_grid"};
  return names;
}

ExperimentSpec preset(const std::string& name) {
  if (name == "appendix12") return appendix12();
  if (name == "rate_grid") return rate_grid();
  if (name == "escape_scaling") return escape_scaling_preset();
  if (name == "tracesum_grid") return tracesum_grid();
  std::ostringstream msg;
  msg << "unknown preset '" << name << "'; available:";
  for (const auto& n : preset_names()) msg << " " << n;
  throw ConfigError(msg.str());
}

}  // namespace asgld::harness
