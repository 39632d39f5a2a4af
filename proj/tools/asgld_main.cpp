#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "asgld/errors.hpp"
#include "asgld/harness/parse.hpp"
#include "asgld/harness/presets.hpp"
#include "asgld/harness/runner.hpp"
#include "asgld/harness/self_check.hpp"
#include "asgld/version.hpp"

using namespace asgld;

int main(int argc, char** argv) {
  CLI::App app{std::string(kLibraryName) + " " + kLibraryVersion +
               " - adaptive Langevin optimizers and experiment harness"};
  app.require_subcommand(1);

  std::string spec_path, out_dir, preset_name, preset_out, summary_path;
  int jobs = 1;

  auto* run_cmd = app.add_subcommand("run", "Run an experiment spec file");
  run_cmd->add_option("spec", spec_path, "Experiment spec file")->required();
  run_cmd->add_option("--jobs", jobs, "Concurrent runs (seed-level parallelism)")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", out_dir, "Output directory (overrides the spec and ASGLD_OUT)");

  auto* preset_cmd = app.add_subcommand("preset", "Write a built-in experiment preset as a spec file");
  preset_cmd->add_option("name", preset_name, "Preset name")->required();
  preset_cmd->add_option("--out", preset_out, "Destination file (default: stdout)");

  auto* check_cmd = app.add_subcommand("check", "Run the invariant self-test suite");

  auto* fit_cmd = app.add_subcommand("fit", "Recompute summary diagnostics from existing outputs");
  fit_cmd->add_option("summary", summary_path, "Path to a summary.csv (its directory is refit)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const harness::ExperimentSpec spec = harness::parse_spec_file(spec_path);
      harness::RunnerOptions opts;
      opts.out_dir = harness::resolve_out_dir(out_dir, spec);
      opts.jobs = jobs;
      opts.log = &std::cerr;
      const auto result = harness::run_experiment(spec, opts);
      return result.exit_code;
    }
    if (preset_cmd->parsed()) {
      const std::string text = harness::serialize_spec(harness::preset(preset_name));
      if (preset_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(preset_out, std::ios::binary);
        if (!out) {
          std::cerr << "error: cannot write " << preset_out << "\n";
          return 1;
        }
        out << text;
      }
      return 0;
    }
    if (check_cmd->parsed()) {
      return harness::run_self_check(std::cout);
    }
    if (fit_cmd->parsed()) {
      std::string dir = summary_path;
      const auto slash = dir.find_last_of('/');
      dir = slash == std::string::npos ? std::string(".") : dir.substr(0, slash);
      const auto result = harness::refit_outputs(dir, &std::cerr);
      return result.exit_code;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
