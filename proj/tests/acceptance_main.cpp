// Acceptance suite: one self-contained check per shipped guarantee, each
// printing a PASS/FAIL line. Exit status is nonzero if any check fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "asgld/diagnostics.hpp"
#include "asgld/errors.hpp"
#include "asgld/escape.hpp"
#include "asgld/gradient_check.hpp"
#include "asgld/harness/presets.hpp"
#include "asgld/harness/runner.hpp"
#include "asgld/harness/self_check.hpp"
#include "asgld/problems/gaussian_variance_mle.hpp"
#include "asgld/problems/quadratic.hpp"
#include "asgld/run.hpp"

using namespace asgld;
using problems::GaussianVarianceMle;
using problems::QuadraticProblem;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int num, const std::string& name, bool pass, const std::string& detail, double seconds) {
  std::printf("[%d] %-28s %s  (%.1fs)%s%s\n", num, name.c_str(), pass ? "PASS" : "FAIL", seconds,
              detail.empty() ? "" : "  ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename F>
void criterion(int num, const std::string& name, F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(num, name, pass, detail, secs);
}

bool bits_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

bool traces_bit_identical(const RunTrace& a, const RunTrace& b) {
  if (a.records.size() != b.records.size() || a.diverged != b.diverged) return false;
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

MethodConfig base_config(Method m) {
  MethodConfig c;
  c.method = m;
  c.eta = 0.01;
  c.delta = 0.1;
  c.alpha = 0.0;
  c.beta.reset();
  c.sigma2 = 1.0;
  c.batch = BatchSchedule::constant(1);
  return c;
}

// ---------------------------------------------------------------------------
// 1. Reduction lattice: the family's exact specializations coincide
//    bit-for-bit over 10^3 steps on the MLE problem, 3 seeds each.
bool c1_reduction_lattice(std::string& detail) {
  const GaussianVarianceMle mle(10000, 1);
  RunOptions opts;
  opts.budget = 1000;

  const auto pair_identical = [&](const MethodConfig& lhs, const MethodConfig& rhs) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const Seeds seeds{1, s, s};
      if (!traces_bit_identical(run(mle, lhs, opts, seeds), run(mle, rhs, opts, seeds))) return false;
    }
    return true;
  };

  MethodConfig asgld_quiet = base_config(Method::Asgld);
  asgld_quiet.alpha = 1.0;
  asgld_quiet.beta = 1.0;
  asgld_quiet.sigma2 = 0.0;
  MethodConfig asg = base_config(Method::Asg);
  asg.alpha = 1.0;
  const bool r1 = pair_identical(asgld_quiet, asg);

  MethodConfig asg0 = base_config(Method::Asg);
  const bool r2 = pair_identical(asg0, base_config(Method::Sgd));

  MethodConfig agld = base_config(Method::Agld);
  agld.alpha = 1.0;
  agld.beta = 1.0;
  agld.batch = BatchSchedule{};
  MethodConfig asgld_full = base_config(Method::Asgld);
  asgld_full.alpha = 1.0;
  asgld_full.beta = 1.0;
  asgld_full.batch = BatchSchedule::constant(10000);
  const bool r3 = pair_identical(agld, asgld_full);

  const double u = 3.0;
  MethodConfig sgld = base_config(Method::Sgld);
  sgld.temperature_u = u;
  MethodConfig asgld_sgld = base_config(Method::Asgld);
  asgld_sgld.alpha = 0.0;
  asgld_sgld.beta = 0.0;
  asgld_sgld.sigma2 = sgld.sigma2 / u;
  const bool r4 = pair_identical(sgld, asgld_sgld);

  std::ostringstream d;
  d << "ASGLD=ASG:" << (r1 ? "ok" : "FAIL") << " ASG=SGD:" << (r2 ? "ok" : "FAIL")
    << " AGLD=ASGLD(B=n):" << (r3 ? "ok" : "FAIL") << " ASGLD=SGLD:" << (r4 ? "ok" : "FAIL");
  detail = d.str();
  return r1 && r2 && r3 && r4;
}

// ---------------------------------------------------------------------------
// 2. Gradient-oracle correctness: finite differences, unbiasedness at
//    N = 10^4 draws, and the 1/B variance law across B in {1, 10, 100}.
bool c2_oracles(std::string& detail) {
  const GaussianVarianceMle mle(10000, 1);
  const auto saddle = QuadraticProblem::saddle(6, 1.0, 1.0, 0.0, /*rotation_seed=*/7);

  Rng point_rng(2024);
  double worst_mle = 0.0, worst_saddle = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Vec x{0.05 + 1.95 * point_rng.uniform01(), 0.5 + 19.5 * point_rng.uniform01()};
    worst_mle = std::max(worst_mle, fd_gradient_check(mle, x, 1e-6));
    Vec y(6);
    point_rng.fill_normal(y);
    worst_saddle = std::max(worst_saddle, fd_gradient_check(saddle, y, 1e-5));
  }
  const bool fd_ok = worst_mle < 1e-4 && worst_saddle < 1e-6;

  // Unbiasedness at 3 standard errors over 10^4 single-sample draws.
  const int n_draws = 10000;
  const Vec x{0.5, 5.0};
  const Vec full = mle.full_gradient(x);
  Rng rng(17);
  Vec mean(2, 0.0), m2(2, 0.0);
  for (int i = 0; i < n_draws; ++i) {
    const Vec g = mle.stochastic_gradient(x, 1, rng);
    for (int c = 0; c < 2; ++c) {
      const double d = g[c] - mean[c];
      mean[c] += d / (i + 1);
      m2[c] += d * (g[c] - mean[c]);
    }
  }
  bool unbiased = true;
  for (int c = 0; c < 2; ++c) {
    const double se = std::sqrt(m2[c] / (n_draws - 1)) / std::sqrt(static_cast<double>(n_draws));
    if (std::abs(mean[c] - full[c]) > 3.0 * se) unbiased = false;
  }

  // Variance-vs-batch ratio law with the without-replacement correction.
  bool variance_ok = true;
  double var1[2] = {0.0, 0.0};
  for (const long B : {1L, 10L, 100L}) {
    Vec vmean(2, 0.0), vm2(2, 0.0);
    for (int i = 0; i < n_draws; ++i) {
      const Vec g = mle.stochastic_gradient(x, B, rng);
      for (int c = 0; c < 2; ++c) {
        const double d = g[c] - vmean[c];
        vmean[c] += d / (i + 1);
        vm2[c] += d * (g[c] - vmean[c]);
      }
    }
    for (int c = 0; c < 2; ++c) {
      const double var = vm2[c] / (n_draws - 1);
      if (B == 1) {
        var1[c] = var;
      } else {
        const double correction = static_cast<double>(10000 - B) / static_cast<double>(10000 - 1);
        const double ratio = var / (var1[c] / static_cast<double>(B) * correction);
        if (ratio < 0.7 || ratio > 1.3) variance_ok = false;
      }
    }
  }

  std::ostringstream d;
  d << "fd mle " << worst_mle << ", fd saddle " << worst_saddle << ", unbiased:" << (unbiased ? "ok" : "FAIL")
    << ", var law:" << (variance_ok ? "ok" : "FAIL");
  detail = d.str();
  return fd_ok && unbiased && variance_ok;
}

// ---------------------------------------------------------------------------
// 3. Trace-sum growth laws for ASG(alpha=1) on the MLE problem.
bool c3_trace_sums(std::string& detail) {
  const GaussianVarianceMle mle(10000, 1);
  MethodConfig asg = base_config(Method::Asg);
  asg.alpha = 1.0;
  asg.eta = 0.05;
  RunOptions opts;
  opts.budget = 10000;
  opts.record_precond = true;
  opts.x0 = Vec{0.1, 10.0};
  std::vector<RunTrace> traces;
  for (std::uint64_t s = 1; s <= 10; ++s) traces.push_back(run(mle, asg, opts, Seeds{1, s, s}));

  const auto half = diag::trace_sums(traces, 0.5);
  const auto one = diag::trace_sums(traces, 1.0);
  const auto two = diag::trace_sums(traces, 2.0);

  const bool ok_half = half.exponent > 0.4 && half.exponent < 0.6;
  const bool ok_two = two.increment_exponent > -1.1 && two.increment_exponent < -0.9;
  const bool ok_one = one.log_fit_r2 > 0.95;

  std::ostringstream d;
  d << "phi=0.5 exponent " << half.exponent << ", phi=2 increment exponent " << two.increment_exponent
    << ", phi=1 log-fit r2 " << one.log_fit_r2;
  detail = d.str();
  return ok_half && ok_two && ok_one;
}

// ---------------------------------------------------------------------------
// 4. Convergence-rate slopes on a noisy convex quadratic.
bool c4_rates(std::string& detail) {
  const auto bowl = QuadraticProblem::bowl(64, 0.25, 1.0, 1.0, 3.0, 1);

  const auto fit_for = [&](const MethodConfig& cfg) {
    std::vector<RunTrace> traces;
    for (std::uint64_t s = 1; s <= 10; ++s) {
      RunOptions opts;
      opts.budget = 100000;
      traces.push_back(run(bowl, cfg, opts, Seeds{1, s, s}));
    }
    return diag::fit_rate(traces, 0.9);
  };

  MethodConfig asg = base_config(Method::Asg);
  asg.alpha = 1.0;
  asg.eta = 0.1;
  MethodConfig asgld = base_config(Method::Asgld);
  asgld.alpha = 1.0;
  asgld.beta = 1.0;
  asgld.eta = 0.1;
  MethodConfig agld = base_config(Method::Agld);
  agld.alpha = 0.0;
  agld.beta = 1.0;
  agld.eta = 0.1;
  agld.batch = BatchSchedule{};

  const double s_asg = fit_for(asg).slope;
  const double s_asgld = fit_for(asgld).slope;
  const double s_agld = fit_for(agld).slope;

  const bool ok = s_asg > -0.65 && s_asg < -0.35 && s_asgld > -0.65 && s_asgld < -0.35 && s_agld > -1.2 &&
                  s_agld < -0.8;
  std::ostringstream d;
  d << "ASG " << s_asg << ", balanced ASGLD " << s_asgld << " (target [-0.65,-0.35]); AGLD " << s_agld
    << " (target [-1.2,-0.8])";
  detail = d.str();
  return ok;
}

// ---------------------------------------------------------------------------
// 5. SGLD non-convergence contrast on the MLE problem at matched eta and
//    sigma2: the adaptive noise decays, the SGLD noise floor does not.
bool c5_sgld_contrast(std::string& detail) {
  const GaussianVarianceMle mle(10000, 1);
  MethodConfig sgld = base_config(Method::Sgld);
  sgld.sigma2 = 0.04;
  sgld.temperature_u = 2.56;
  sgld.batch = BatchSchedule::constant(10000);
  MethodConfig asgld = base_config(Method::Asgld);
  asgld.alpha = 1.0;
  asgld.beta = 1.0;
  asgld.sigma2 = 0.04;
  asgld.batch = BatchSchedule::constant(10);

  int wins = 0;
  double worst_ratio = 1e300;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    RunOptions opts;
    opts.budget = 20000;
    opts.x0 = Vec{0.2, 8.0};
    const RunTrace ts = run(mle, sgld, opts, Seeds{1, s, s});
    const RunTrace ta = run(mle, asgld, opts, Seeds{1, s, s});
    std::vector<double> gs, ga;
    for (const auto& r : ts.records) {
      if (r.k > 18000) gs.push_back(r.grad_norm);
    }
    for (const auto& r : ta.records) {
      if (r.k > 18000) ga.push_back(r.grad_norm);
    }
    const double ratio = diag::median(gs) / diag::median(ga);
    worst_ratio = std::min(worst_ratio, ratio);
    if (ratio >= 5.0) ++wins;
  }
  std::ostringstream d;
  d << wins << "/10 seeds with ratio >= 5 (min ratio " << worst_ratio << ")";
  detail = d.str();
  return wins >= 8;
}

// ---------------------------------------------------------------------------
// 6. Saddle-escape scaling across dimensions.
bool c6_escape_scaling(std::string& detail) {
  MethodConfig cfg = base_config(Method::Asgld);
  cfg.alpha = 1.0;
  cfg.beta = 1.0;
  cfg.eta = 0.1;
  cfg.sigma2 = 0.01;
  cfg.delta = 0.5;

  diag::EscapeScalingOptions opts;
  opts.gamma = 1.0;
  opts.positive_eig = 2.0;
  opts.eig_decay = 1.0;
  opts.noise_std = 0.05;
  opts.budget = 10000;
  opts.delta = 0.006;
  opts.replicates = 20;
  opts.base_seed = 1;

  const auto fit = diag::escape_scaling({2, 8, 32, 128, 512}, cfg, opts);
  const bool all_fitted = fit.excluded_dims.empty() && fit.dims.size() == 5;
  const bool p_ok = fit.power_fit.p < 0.3;
  const bool log_ok = fit.log_fit.rms <= fit.power_fit.rms;

  std::ostringstream d;
  d << "p = " << fit.power_fit.p << ", log rms " << fit.log_fit.rms << " vs power rms " << fit.power_fit.rms
    << "; medians";
  for (std::size_t i = 0; i < fit.dims.size(); ++i) d << " d" << fit.dims[i] << "=" << fit.median_escape[i];
  detail = d.str();
  return all_fitted && p_ok && log_ok;
}

// ---------------------------------------------------------------------------
// 7. Fixed-point sanity for the deterministic method.
bool c7_fixed_points(std::string& detail) {
  const auto saddle = QuadraticProblem::saddle(4, 1.0, 1.0, 0.0);
  MethodConfig agld = base_config(Method::Agld);
  agld.alpha = 0.0;
  agld.beta = 1.0;
  agld.sigma2 = 0.0;
  agld.batch = BatchSchedule{};

  bool rejected = false;
  try {
    diag::measure_escape(saddle, agld, 100, 0.1, Seeds{});
  } catch (const ConfigError&) {
    rejected = true;
  }

  const auto bowl = QuadraticProblem::bowl(4, 0.25, 1.0, 0.0, 1.0, 3);
  RunOptions opts;
  opts.budget = 1000;
  opts.x0 = zeros(4);  // the exact minimum
  const RunTrace t = run(bowl, agld, opts, Seeds{});
  bool stays = !t.diverged && t.records.size() == 1001;
  for (const auto& rec : t.records) {
    // |x - x*| <= |grad| / lambda_min; require it below 1e-12.
    if (!(rec.grad_norm / 0.25 <= 1e-12)) stays = false;
  }

  std::ostringstream d;
  d << "deterministic saddle start rejected:" << (rejected ? "ok" : "FAIL")
    << ", minimum held for 10^3 steps:" << (stays ? "ok" : "FAIL");
  detail = d.str();
  return rejected && stays;
}

// ---------------------------------------------------------------------------
// 8. Harness determinism: byte-identical rerun of presets (reduced budgets)
//    including parallel execution, and a clean self-check.
bool c8_harness_determinism(std::string& detail) {
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const fs::path root = fs::temp_directory_path() / "asgld_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);

  bool all_identical = true;
  int spec_idx = 0;
  for (const auto& name : harness::preset_names()) {
    harness::ExperimentSpec spec = harness::preset(name);
    spec.run.budget = std::min<long>(spec.run.budget, 300);
    spec.run.seeds.resize(std::min<std::size_t>(spec.run.seeds.size(), 2));
    if (spec.problem.kind == harness::ProblemKind::QuadraticSaddle) {
      spec.problem.dims = {2, 8, 32};  // keep the rerun fast
    }
    const fs::path dir_a = root / ("a" + std::to_string(spec_idx));
    const fs::path dir_b = root / ("b" + std::to_string(spec_idx));
    ++spec_idx;
    harness::RunnerOptions ra;
    ra.out_dir = dir_a.string();
    ra.jobs = 1;
    harness::RunnerOptions rb;
    rb.out_dir = dir_b.string();
    rb.jobs = 4;
    const auto res_a = harness::run_experiment(spec, ra);
    const auto res_b = harness::run_experiment(spec, rb);
    if (res_a.exit_code != 0 || res_b.exit_code != 0) {
      all_identical = false;
      continue;
    }
    for (const auto& entry : fs::directory_iterator(dir_a)) {
      const auto other = dir_b / entry.path().filename();
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) all_identical = false;
    }
  }

  std::ostringstream devnull;
  const int check_rc = harness::run_self_check(devnull);
  fs::remove_all(root);

  std::ostringstream d;
  d << "preset reruns byte-identical (jobs 1 vs 4):" << (all_identical ? "ok" : "FAIL")
    << ", check exit " << check_rc;
  detail = d.str();
  return all_identical && check_rc == 0;
}

}  // namespace

int main() {
  std::printf("asgld acceptance suite\n");
  criterion(1, "reduction lattice", c1_reduction_lattice);
  criterion(2, "gradient oracles", c2_oracles);
  criterion(3, "trace-sum growth", c3_trace_sums);
  criterion(4, "convergence rates", c4_rates);
  criterion(5, "SGLD noise-floor contrast", c5_sgld_contrast);
  criterion(6, "saddle-escape scaling", c6_escape_scaling);
  criterion(7, "fixed-point sanity", c7_fixed_points);
  criterion(8, "harness determinism", c8_harness_determinism);
  std::printf(failures == 0 ? "all criteria passed\n" : "%d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
