#include "asgld/harness/runner.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "asgld/diagnostics.hpp"
#include "asgld/errors.hpp"
#include "asgld/escape.hpp"
#include "asgld/harness/csv.hpp"
#include "asgld/harness/parse.hpp"
#include "asgld/version.hpp"

namespace fs = std::filesystem;

namespace asgld::harness {

std::string resolve_out_dir(const std::string& cli_out, const ExperimentSpec& spec) {
  if (!cli_out.empty()) return cli_out;
  if (!spec.run.out.empty()) return spec.run.out;
  if (const char* env = std::getenv("ASGLD_OUT"); env != nullptr && env[0] != '\0') return env;
  return "asgld_out";
}

std::string trace_file_name(const std::string& label, int dim, bool multi_dim, std::uint64_t seed) {
  std::ostringstream name;
  name << label;
  if (multi_dim) name << "_d" << dim;
  name << "_seed" << seed << ".csv";
  return name.str();
}

namespace {

std::string precond_file_name(const std::string& trace_name) {
  return trace_name.substr(0, trace_name.size() - 4) + "_precond.csv";
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  out.flush();
  return static_cast<bool>(out);
}

struct CellSummary {
  std::string label;
  int dim = 0;
  long seeds = 0;
  long diverged = 0;
  double final_f_median = 0.0;
  double final_grad_median = 0.0;
  std::optional<double> final_err_median;
  std::optional<double> rate_slope;
  std::optional<double> rate_r2;
  std::optional<double> escape_frac;
  std::optional<double> escape_median;
};

std::optional<long> first_escape_step(const RunTrace& trace, double delta) {
  const double f0 = trace.records.front().f;
  for (const auto& rec : trace.records) {
    if (rec.k >= 1 && rec.f <= f0 - delta) return rec.k;
  }
  return std::nullopt;
}

bool looks_diverged(const RunTrace& trace, long budget) {
  return trace.diverged || trace.records.back().k < budget;
}

std::string opt_field(const std::optional<double>& v) { return v ? format_csv_double(*v) : std::string(); }

/// Everything after the runs: summary.csv, summary.txt, escape_scaling.csv.
/// traces are indexed [dim][method][seed].
void summarize(const ExperimentSpec& spec, const std::vector<std::vector<std::vector<RunTrace>>>& traces,
               const fs::path& dir, ExperimentResult& result) {
  const bool saddle = spec.problem.kind == ProblemKind::QuadraticSaddle;
  const bool escape_wanted = saddle && !spec.run.x0.has_value();
  const double escape_delta = spec.run.escape_delta.value_or(0.1 * spec.problem.gamma);
  const bool multi_dim = spec.problem.dims.size() > 1;

  std::vector<CellSummary> cells;
  // Per-label escape medians across the dimension grid.
  struct EscapeRow {
    std::vector<double> dims;
    std::vector<double> medians;
    std::vector<int> excluded;
  };
  std::vector<EscapeRow> escape_rows(spec.methods.size());

  for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
    for (std::size_t di = 0; di < spec.problem.dims.size(); ++di) {
      const auto& runs = traces[di][mi];
      CellSummary cell;
      cell.label = spec.methods[mi].label;
      cell.dim = spec.problem.kind == ProblemKind::GaussianMle ? 2 : spec.problem.dims[di];
      cell.seeds = static_cast<long>(runs.size());

      std::vector<double> fin_f, fin_g, fin_err;
      std::vector<RunTrace> healthy;
      for (const auto& t : runs) {
        if (looks_diverged(t, spec.run.budget)) {
          ++cell.diverged;
          continue;
        }
        healthy.push_back(t);
        fin_f.push_back(t.final_record().f);
        fin_g.push_back(t.final_record().grad_norm);
        if (t.final_record().err_metric) fin_err.push_back(*t.final_record().err_metric);
      }
      result.diverged_runs += cell.diverged;
      if (!fin_f.empty()) {
        cell.final_f_median = diag::median(fin_f);
        cell.final_grad_median = diag::median(fin_g);
        if (fin_err.size() == fin_f.size()) cell.final_err_median = diag::median(fin_err);
      }
      if (healthy.size() >= 3) {
        try {
          const auto fit = diag::fit_rate(healthy, spec.run.rate_window);
          cell.rate_slope = fit.slope;
          cell.rate_r2 = fit.r_squared;
        } catch (const ContractError&) {
          // Rate fit is best-effort in the summary (e.g. flat traces).
        }
      }
      if (escape_wanted) {
        std::vector<double> steps;
        long escaped = 0;
        for (const auto& t : runs) {
          if (const auto k = first_escape_step(t, escape_delta)) {
            ++escaped;
            steps.push_back(static_cast<double>(*k));
          }
        }
        cell.escape_frac = runs.empty() ? 0.0 : static_cast<double>(escaped) / static_cast<double>(runs.size());
        if (!steps.empty()) cell.escape_median = diag::median(steps);
        auto& row = escape_rows[mi];
        if (escaped == static_cast<long>(runs.size()) && !steps.empty()) {
          row.dims.push_back(static_cast<double>(spec.problem.dims[di]));
          row.medians.push_back(diag::median(steps));
        } else {
          row.excluded.push_back(spec.problem.dims[di]);
        }
      }
      cells.push_back(std::move(cell));
    }
  }

  // summary.csv
  {
    std::ostringstream out;
    out << "label,dim,seeds,diverged,final_f_median,final_grad_norm_median,final_err_median,"
           "rate_slope,rate_r2,escape_frac,escape_median\n";
    for (const auto& c : cells) {
      out << c.label << ',' << c.dim << ',' << c.seeds << ',' << c.diverged << ',' << format_csv_double(c.final_f_median)
          << ',' << format_csv_double(c.final_grad_median) << ',' << opt_field(c.final_err_median) << ','
          << opt_field(c.rate_slope) << ',' << opt_field(c.rate_r2) << ',' << opt_field(c.escape_frac) << ','
          << opt_field(c.escape_median) << '\n';
    }
    if (!write_file(dir / "summary.csv", out.str())) {
      result.exit_code = 1;
      result.warnings.push_back("failed to write summary.csv");
    }
  }

  // escape_scaling.csv: both fitted models, never just one.
  if (escape_wanted && multi_dim) {
    std::ostringstream out;
    out << "label,model,param_a,param_b,rms_residual,excluded_dims\n";
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      const auto& row = escape_rows[mi];
      if (row.dims.size() < 2) continue;
      diag::ScalingLogFit log_fit;
      diag::ScalingPowerFit power_fit;
      diag::fit_scaling_models(row.dims, row.medians, log_fit, power_fit);
      std::ostringstream excluded;
      for (std::size_t i = 0; i < row.excluded.size(); ++i) excluded << (i > 0 ? " " : "") << row.excluded[i];
      out << spec.methods[mi].label << ",log," << format_csv_double(log_fit.a) << ',' << format_csv_double(log_fit.b)
          << ',' << format_csv_double(log_fit.rms) << ',' << excluded.str() << '\n';
      out << spec.methods[mi].label << ",power," << format_csv_double(power_fit.c) << ','
          << format_csv_double(power_fit.p) << ',' << format_csv_double(power_fit.rms) << ',' << excluded.str()
          << '\n';
    }
    if (!write_file(dir / "escape_scaling.csv", out.str())) {
      result.exit_code = 1;
      result.warnings.push_back("failed to write escape_scaling.csv");
    }
  }

  // Config sanity notes.
  std::optional<double> lipschitz_M;
  if (spec.problem.kind != ProblemKind::GaussianMle) {
    lipschitz_M = make_problem(spec.problem, spec.problem.dims[0])->metadata().lipschitz_M;
  }
  for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
    const auto& m = spec.methods[mi];
    if (!m.config.in_convergence_region()) {
      result.warnings.push_back("method " + m.label + " is outside the convergence region (alpha/beta combination)");
    }
    if (lipschitz_M && m.config.eta >= 1.0 / *lipschitz_M) {
      std::ostringstream w;
      w << "method " << m.label << ": eta = " << format_double_short(m.config.eta)
        << " >= 1/M = " << format_double_short(1.0 / *lipschitz_M) << " (smoothness condition violated)";
      result.warnings.push_back(w.str());
    }
  }

  // summary.txt: the human-readable block.
  {
    std::ostringstream out;
    out << kLibraryName << " " << kLibraryVersion << " summary\n";
    out << "problem: " << problem_kind_name(spec.problem.kind) << ", budget " << spec.run.budget << ", "
        << spec.run.seeds.size() << " seed(s)\n\n";
    for (const auto& c : cells) {
      out << c.label;
      if (multi_dim) out << " (d=" << c.dim << ")";
      out << ": final f median " << format_double_short(c.final_f_median) << ", |grad f| median "
          << format_double_short(c.final_grad_median);
      if (c.final_err_median) out << ", err median " << format_double_short(*c.final_err_median);
      if (c.rate_slope) {
        out << ", rate slope " << format_double_short(*c.rate_slope) << " (r2 "
            << format_double_short(c.rate_r2.value_or(0.0)) << ")";
      }
      if (c.escape_frac) {
        out << ", escaped " << format_double_short(100.0 * *c.escape_frac) << "%";
        if (c.escape_median) out << " (median step " << format_double_short(*c.escape_median) << ")";
      }
      if (c.diverged > 0) out << ", DIVERGED " << c.diverged << "/" << c.seeds;
      out << "\n";
    }
    if (escape_wanted && multi_dim) {
      out << "\nescape scaling (median escape step vs dimension):\n";
      for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
        const auto& row = escape_rows[mi];
        if (row.dims.size() < 2) continue;
        diag::ScalingLogFit log_fit;
        diag::ScalingPowerFit power_fit;
        diag::fit_scaling_models(row.dims, row.medians, log_fit, power_fit);
        out << "  " << spec.methods[mi].label << ": log model T = " << format_double_short(log_fit.a) << " + "
            << format_double_short(log_fit.b) << " ln d (rms " << format_double_short(log_fit.rms) << "); power model T = "
            << format_double_short(power_fit.c) << " d^" << format_double_short(power_fit.p) << " (rms "
            << format_double_short(power_fit.rms) << ")\n";
        if (!row.excluded.empty()) {
          out << "    excluded dims (non-escaped replicates):";
          for (const int d : row.excluded) out << " " << d;
          out << "\n";
        }
      }
    }
    if (!result.warnings.empty()) {
      out << "\nwarnings:\n";
      for (const auto& w : result.warnings) out << "  " << w << "\n";
    }
    if (!write_file(dir / "summary.txt", out.str())) {
      result.exit_code = 1;
      result.warnings.push_back("failed to write summary.txt");
    }
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunnerOptions& opts) {
  spec.validate();
  ExperimentResult result;
  const fs::path dir(opts.out_dir.empty() ? "asgld_out" : opts.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    result.exit_code = 1;
    result.warnings.push_back("cannot create output directory '" + dir.string() + "': " + ec.message());
    return result;
  }
  result.out_dir = dir.string();

  const bool multi_dim = spec.problem.dims.size() > 1;
  std::vector<std::shared_ptr<const Problem>> problems;
  problems.reserve(spec.problem.dims.size());
  for (const int d : spec.problem.dims) problems.push_back(make_problem(spec.problem, d));

  struct Task {
    std::size_t di, mi, si;
  };
  std::vector<Task> tasks;
  for (std::size_t di = 0; di < spec.problem.dims.size(); ++di) {
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      for (std::size_t si = 0; si < spec.run.seeds.size(); ++si) tasks.push_back({di, mi, si});
    }
  }

  std::vector<std::vector<std::vector<RunTrace>>> traces(spec.problem.dims.size());
  for (auto& per_dim : traces) {
    per_dim.resize(spec.methods.size());
    for (auto& per_method : per_dim) per_method.resize(spec.run.seeds.size());
  }
  std::vector<std::string> task_errors(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> io_failed{false};

  const auto worker = [&]() {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      const Task t = tasks[idx];
      try {
        RunOptions ro;
        ro.budget = spec.run.budget;
        ro.metric_every = spec.run.metric_every;
        ro.record_precond = spec.run.record_precond;
        ro.x0 = spec.run.x0;
        const std::uint64_t seed = spec.run.seeds[t.si];
        RunTrace trace = run(*problems[t.di], spec.methods[t.mi].config, ro, Seeds{spec.problem.dataset_seed, seed, seed});

        const std::string name = trace_file_name(spec.methods[t.mi].label, spec.problem.dims[t.di], multi_dim, seed);
        std::ostringstream body;
        write_trace_csv(body, trace);
        if (!write_file(dir / name, body.str())) {
          io_failed.store(true);
          task_errors[idx] = "failed to write " + name;
        }
        if (spec.run.record_precond) {
          std::ostringstream pbody;
          write_precond_csv(pbody, trace);
          if (!write_file(dir / precond_file_name(name), pbody.str())) {
            io_failed.store(true);
            task_errors[idx] = "failed to write " + precond_file_name(name);
          }
        }
        traces[t.di][t.mi][t.si] = std::move(trace);
      } catch (const std::exception& e) {
        task_errors[idx] = e.what();
      }
    }
  };

  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!task_errors[i].empty()) {
      result.exit_code = 1;
      result.warnings.push_back(spec.methods[tasks[i].mi].label + ": " + task_errors[i]);
    }
  }
  if (io_failed.load()) result.exit_code = 1;
  result.traces_written = static_cast<long>(tasks.size());

  // Manifest: version plus the fully resolved spec; everything in the CSVs
  // is reproducible from this file alone.
  {
    std::ostringstream manifest;
    manifest << "version = " << kLibraryName << " " << kLibraryVersion << "\n\n";
    manifest << serialize_spec(spec);
    if (!write_file(dir / "manifest.txt", manifest.str())) {
      result.exit_code = 1;
      result.warnings.push_back("failed to write manifest.txt");
    }
  }

  summarize(spec, traces, dir, result);
  if (result.diverged_runs > 0) result.exit_code = 1;
  if (opts.log != nullptr) {
    for (const auto& w : result.warnings) *opts.log << "warning: " << w << "\n";
    *opts.log << "wrote " << result.traces_written << " trace file(s) to " << dir.string() << "\n";
  }
  return result;
}

ExperimentResult refit_outputs(const std::string& out_dir, std::ostream* log) {
  ExperimentResult result;
  const fs::path dir(out_dir);
  std::ifstream manifest(dir / "manifest.txt");
  if (!manifest) {
    result.exit_code = 1;
    result.warnings.push_back("cannot open " + (dir / "manifest.txt").string());
    return result;
  }
  std::ostringstream buf;
  buf << manifest.rdbuf();
  const std::string text = buf.str();
  const auto first_section = text.find('[');
  if (first_section == std::string::npos) {
    result.exit_code = 1;
    result.warnings.push_back("manifest.txt holds no spec sections");
    return result;
  }
  const ExperimentSpec spec = parse_spec(text.substr(first_section));
  result.out_dir = dir.string();

  const bool multi_dim = spec.problem.dims.size() > 1;
  std::vector<std::vector<std::vector<RunTrace>>> traces(spec.problem.dims.size());
  for (std::size_t di = 0; di < spec.problem.dims.size(); ++di) {
    traces[di].resize(spec.methods.size());
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      for (const auto seed : spec.run.seeds) {
        const std::string name = trace_file_name(spec.methods[mi].label, spec.problem.dims[di], multi_dim, seed);
        std::ifstream in(dir / name);
        if (!in) {
          result.exit_code = 1;
          result.warnings.push_back("missing trace file " + name);
          continue;
        }
        RunTrace trace = read_trace_csv(in);
        trace.config = spec.methods[mi].config;
        trace.budget = spec.run.budget;
        trace.seeds = Seeds{spec.problem.dataset_seed, seed, seed};
        if (spec.run.record_precond) {
          std::ifstream pin(dir / precond_file_name(name));
          if (pin) read_precond_csv(pin, trace);
        }
        traces[di][mi].push_back(std::move(trace));
      }
    }
  }
  summarize(spec, traces, dir, result);
  if (log != nullptr) {
    for (const auto& w : result.warnings) *log << "warning: " << w << "\n";
    *log << "refit summary written to " << dir.string() << "\n";
  }
  return result;
}

}  // namespace asgld::harness
