#include "asgld/harness/self_check.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "asgld/gradient_check.hpp"
#include "asgld/harness/parse.hpp"
#include "asgld/harness/presets.hpp"
#include "asgld/preconditioner.hpp"
#include "asgld/problems/gaussian_variance_mle.hpp"
#include "asgld/problems/quadratic.hpp"
#include "asgld/run.hpp"

namespace asgld::harness {

namespace {

bool bits_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool traces_identical(const RunTrace& a, const RunTrace& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& ra = a.records[i];
    const auto& rb = b.records[i];
    if (ra.k != rb.k || ra.batch != rb.batch) return false;
    if (!bits_equal(ra.f, rb.f) || !bits_equal(ra.grad_norm, rb.grad_norm) ||
        !bits_equal(ra.min_grad_sq, rb.min_grad_sq)) {
      return false;
    }
    if (ra.err_metric.has_value() != rb.err_metric.has_value()) return false;
    if (ra.err_metric && !bits_equal(*ra.err_metric, *rb.err_metric)) return false;
  }
  return true;
}

MethodConfig lattice_base(Method m) {
  MethodConfig c;
  c.method = m;
  c.eta = 0.01;
  c.delta = 0.1;
  c.alpha = 0.0;
  c.beta.reset();
  c.batch = BatchSchedule::constant(1);
  return c;
}

}  // namespace

int run_self_check(std::ostream& out) {
  int failures = 0;
  const auto check = [&](const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string extra;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      extra = e.what();
    }
    out << (ok ? "ok   " : "FAIL ") << name;
    if (!ok && !extra.empty()) out << " (" << extra << ")";
    out << "\n";
    if (!ok) ++failures;
  };

  check("preconditioner accumulation rule", [] {
    Preconditioner p(2, 0.1);
    p.update(Vec{1.0, 2.0});
    return std::abs(p.diag()[0] - 1.2) < 1e-15 && std::abs(p.diag()[1] - 4.2) < 1e-15 && p.step_count() == 1;
  });

  check("preconditioner power algebra", [] {
    Preconditioner p(3, 0.5);
    p.update(Vec{1.0, -2.0, 0.5});
    p.update(Vec{0.1, 3.0, -1.0});
    const auto a = p.power(0.3);
    const auto b = p.power(0.9);
    const auto ab = p.power(1.2);
    for (int i = 0; i < 3; ++i) {
      if (std::abs(a[i] * b[i] - ab[i]) > 1e-12 * std::abs(ab[i])) return false;
    }
    return true;
  });

  check("batch schedules", [] {
    return BatchSchedule::constant(10).size_at(123) == 10 && BatchSchedule::linear(1.0).size_at(7) == 8 &&
           BatchSchedule::power_law(1.0, 0.5).size_at(99) == 10;
  });

  const problems::GaussianVarianceMle mle(200, 7);
  check("mle full-batch gradient is exact", [&] {
    const Vec x{0.7, 4.0};
    Rng rng(3);
    const Vec g = mle.stochastic_gradient(x, 200, rng);
    const Vec full = mle.full_gradient(x);
    return bits_equal(g[0], full[0]) && bits_equal(g[1], full[1]);
  });

  check("finite differences match gradients", [&] {
    const auto saddle = problems::QuadraticProblem::saddle(5, 1.0, 1.0, 0.0, 11);
    return fd_gradient_check(mle, Vec{1.0, 5.0}, 1e-6) < 1e-4 &&
           fd_gradient_check(saddle, Vec{0.3, -0.2, 0.9, 0.1, -0.5}, 1e-5) < 1e-6;
  });

  RunOptions ro;
  ro.budget = 300;
  const Seeds seeds{1, 5, 9};

  check("reduction: ASGLD(sigma2=0) equals ASG", [&] {
    MethodConfig asgld_cfg = lattice_base(Method::Asgld);
    asgld_cfg.alpha = 1.0;
    asgld_cfg.beta = 1.0;
    asgld_cfg.sigma2 = 0.0;
    MethodConfig asg_cfg = lattice_base(Method::Asg);
    asg_cfg.alpha = 1.0;
    return traces_identical(run(mle, asgld_cfg, ro, seeds), run(mle, asg_cfg, ro, seeds));
  });

  check("reduction: ASG(alpha=0) equals SGD", [&] {
    MethodConfig asg_cfg = lattice_base(Method::Asg);
    MethodConfig sgd_cfg = lattice_base(Method::Sgd);
    return traces_identical(run(mle, asg_cfg, ro, seeds), run(mle, sgd_cfg, ro, seeds));
  });

  check("reduction: AGLD equals ASGLD at full batch", [&] {
    MethodConfig agld_cfg = lattice_base(Method::Agld);
    agld_cfg.alpha = 1.0;
    agld_cfg.beta = 1.0;
    agld_cfg.sigma2 = 1.0;
    agld_cfg.batch = BatchSchedule{};
    MethodConfig asgld_cfg = lattice_base(Method::Asgld);
    asgld_cfg.alpha = 1.0;
    asgld_cfg.beta = 1.0;
    asgld_cfg.sigma2 = 1.0;
    asgld_cfg.batch = BatchSchedule::constant(200);
    return traces_identical(run(mle, agld_cfg, ro, seeds), run(mle, asgld_cfg, ro, seeds));
  });

  check("reduction: ASGLD(alpha=0, beta=0) equals SGLD", [&] {
    const double u = 3.0;
    MethodConfig sgld_cfg = lattice_base(Method::Sgld);
    sgld_cfg.sigma2 = 1.0;
    sgld_cfg.temperature_u = u;
    MethodConfig asgld_cfg = lattice_base(Method::Asgld);
    asgld_cfg.alpha = 0.0;
    asgld_cfg.beta = 0.0;
    asgld_cfg.sigma2 = sgld_cfg.sigma2 / u;
    return traces_identical(run(mle, sgld_cfg, ro, seeds), run(mle, asgld_cfg, ro, seeds));
  });

  check("determinism: identical seeds give identical traces", [&] {
    MethodConfig cfg = lattice_base(Method::Asgld);
    cfg.alpha = 1.0;
    cfg.beta = 1.0;
    return traces_identical(run(mle, cfg, ro, seeds), run(mle, cfg, ro, seeds));
  });

  check("spec round-trip", [] {
    for (const auto& name : preset_names()) {
      const ExperimentSpec spec = preset(name);
      if (parse_spec(serialize_spec(spec)) != spec) return false;
    }
    return true;
  });

  out << (failures == 0 ? "all checks passed\n" : "CHECKS FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace asgld::harness
