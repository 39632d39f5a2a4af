#include "asgld/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asgld/errors.hpp"

namespace asgld::diag {

LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ContractError("least_squares: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ContractError("least_squares: regressor is constant");
  LinFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy <= 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

namespace {

void check_aligned(const std::vector<RunTrace>& traces, std::size_t min_count, const char* who) {
  if (traces.size() < min_count) {
    throw ContractError(std::string(who) + ": need >= " + std::to_string(min_count) + " traces");
  }
  const auto& first = traces.front();
  for (const auto& t : traces) {
    if (t.config != first.config) throw ContractError(std::string(who) + ": traces have mismatched configs");
    if (t.records.size() != first.records.size()) {
      throw ContractError(std::string(who) + ": traces have mismatched record counts");
    }
    for (std::size_t i = 0; i < t.records.size(); ++i) {
      if (t.records[i].k != first.records[i].k) {
        throw ContractError(std::string(who) + ": traces have mismatched record grids");
      }
    }
  }
}

double trace_power_sum(const Vec& diag, double phi) {
  double s = 0.0;
  if (phi == 0.0) {
    s = static_cast<double>(diag.size());
  } else if (phi == 1.0) {
    for (double v : diag) s += 1.0 / v;
  } else {
    for (double v : diag) s += std::pow(v, -phi);
  }
  return s;
}

}  // namespace

RateFit fit_rate(const std::vector<RunTrace>& traces, double window) {
  check_aligned(traces, 3, "fit_rate");
  if (!(window > 0.0) || window > 1.0) throw ContractError("fit_rate: window must lie in (0, 1]");

  const auto& grid = traces.front().records;
  const long k_max = grid.back().k;
  const long k_min = std::max<long>(1, static_cast<long>(std::ceil((1.0 - window) * static_cast<double>(k_max))));

  std::vector<double> log_k, log_mean;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long k = grid[i].k;
    if (k < k_min) continue;
    double m = 0.0;
    for (const auto& t : traces) m += t.records[i].min_grad_sq;
    m /= static_cast<double>(traces.size());
    if (!(m > 0.0)) continue;  // exact stationary points carry no slope information
    log_k.push_back(std::log(static_cast<double>(k)));
    log_mean.push_back(std::log(m));
  }
  const LinFit fit = least_squares(log_k, log_mean);
  RateFit out;
  out.window = window;
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.r_squared = fit.r_squared;
  out.points = static_cast<long>(log_k.size());
  return out;
}

TraceSumReport trace_sums(const std::vector<RunTrace>& traces, double phi) {
  check_aligned(traces, 1, "trace_sums");
  for (const auto& t : traces) {
    if (t.precond_diags.size() != t.records.size()) {
      throw ContractError("trace_sums: traces were recorded without preconditioner diagonals");
    }
  }
  const auto& grid = traces.front().records;
  const std::size_t m = grid.size();

  TraceSumReport report;
  report.phi = phi;
  report.ks.reserve(m);
  report.sums.assign(m, 0.0);
  for (const auto& rec : grid) report.ks.push_back(rec.k);
  for (const auto& t : traces) {
    double running = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      running += trace_power_sum(t.precond_diags[i], phi);
      report.sums[i] += running;
    }
  }
  for (double& s : report.sums) s /= static_cast<double>(traces.size());

  // Direct growth exponent over the tail half.
  const long k_max = report.ks.back();
  std::vector<double> log_k, log_s, tail_logk, tail_s;
  for (std::size_t i = 0; i < m; ++i) {
    const long k = report.ks[i];
    if (k < std::max<long>(1, k_max / 2)) continue;
    log_k.push_back(std::log(static_cast<double>(k)));
    log_s.push_back(std::log(report.sums[i]));
    tail_logk.push_back(std::log(static_cast<double>(k)));
    tail_s.push_back(report.sums[i]);
  }
  report.exponent = least_squares(log_k, log_s).slope;
  report.log_fit_r2 = least_squares(tail_logk, tail_s).r_squared;

  // Dyadic increment exponent: S_{2k} - S_k across octaves.
  std::vector<double> inc_logk, inc_logd;
  for (long base = k_max / 2; base >= 8; base /= 2) {
    const long lo = base, hi = 2 * base;
    std::size_t ilo = m, ihi = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (report.ks[i] == lo) ilo = i;
      if (report.ks[i] == hi) ihi = i;
    }
    if (ilo == m || ihi == m) continue;
    const double d = report.sums[ihi] - report.sums[ilo];
    if (!(d > 0.0)) continue;
    inc_logk.push_back(std::log(static_cast<double>(lo)));
    inc_logd.push_back(std::log(d));
  }
  report.increment_exponent = inc_logk.size() >= 2 ? least_squares(inc_logk, inc_logd).slope : 0.0;
  return report;
}

DecompositionReport decomposition(const std::vector<RunTrace>& traces, const ProblemMetadata& meta) {
  check_aligned(traces, 1, "decomposition");
  for (const auto& t : traces) {
    if (t.precond_diags.size() != t.records.size()) {
      throw ContractError("decomposition: traces were recorded without preconditioner diagonals");
    }
  }
  const MethodConfig& cfg = traces.front().config;
  const std::size_t m = traces.front().records.size();
  const double n_traces = static_cast<double>(traces.size());

  DecompositionReport report;
  report.normalized = meta.lipschitz_M.has_value() && (meta.grad_var_C.has_value() || cfg.method == Method::Agld);
  report.lipschitz_M = meta.lipschitz_M.value_or(1.0);
  report.grad_var_C = cfg.method == Method::Agld ? 0.0 : meta.grad_var_C.value_or(1.0);

  const double alpha = cfg.method == Method::Sgld || cfg.method == Method::Sgd ? 0.0 : cfg.alpha;
  const bool noisy = cfg.has_noise_term() && cfg.sigma2 > 0.0;
  const double beta = cfg.method == Method::Sgld ? 0.0 : (cfg.beta ? *cfg.beta : 0.0);
  const double sigma2_eff = cfg.method == Method::Sgld ? cfg.sigma2 / cfg.temperature_u : cfg.sigma2;

  // Seed-averaged per-record quantities.
  std::vector<double> tr_half(m, 0.0), tr_alpha(m, 0.0), tr_beta(m, 0.0), f_mean(m, 0.0);
  for (const auto& t : traces) {
    for (std::size_t i = 0; i < m; ++i) {
      tr_half[i] += trace_power_sum(t.precond_diags[i], alpha / 2.0);
      tr_alpha[i] += trace_power_sum(t.precond_diags[i], alpha);
      if (noisy) tr_beta[i] += trace_power_sum(t.precond_diags[i], beta);
      f_mean[i] += t.records[i].f;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    tr_half[i] /= n_traces;
    tr_alpha[i] /= n_traces;
    tr_beta[i] /= n_traces;
    f_mean[i] /= n_traces;
  }

  const double f0 = f_mean[0];
  double denom = 0.0, var_sum = 0.0, noise_sum = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    const long batch_prev = traces.front().records[i - 1].batch;
    denom += tr_half[i - 1];
    if (batch_prev > 0) var_sum += tr_alpha[i - 1] / static_cast<double>(batch_prev);
    if (noisy) noise_sum += tr_beta[i - 1];
    const long k = traces.front().records[i].k;
    report.ks.push_back(k);
    report.initial_gap.push_back(std::max(0.0, (2.0 / cfg.eta) * (f0 - f_mean[i]) / denom));
    report.oracle_variance.push_back(report.grad_var_C == 0.0
                                         ? 0.0
                                         : report.lipschitz_M * cfg.eta * report.grad_var_C * var_sum / denom);
    report.injected_noise.push_back(noisy ? 2.0 * report.lipschitz_M * sigma2_eff * noise_sum / denom : 0.0);
  }
  return report;
}

}  // namespace asgld::diag
