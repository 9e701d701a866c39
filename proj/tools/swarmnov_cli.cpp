// swarmnov: evolve, resume, post-evaluate and export swarm controller experiments.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "swarmnov/errors.hpp"
#include "swarmnov/experiment/config.hpp"
#include "swarmnov/experiment/runner.hpp"

namespace ex = swarmnov::experiment;

namespace {

ex::RunOptions run_options(unsigned workers, bool quiet) {
  ex::RunOptions o;
  o.workers = workers;
  o.log = quiet ? nullptr : &std::cerr;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neuroevolution of swarm controllers with novelty search"};
  app.require_subcommand(1);

  unsigned workers = 0;
  bool quiet = false;
  app.add_option("-j,--workers", workers, "Evaluation threads (default: SWARMNOV_WORKERS or all cores)");
  app.add_flag("-q,--quiet", quiet, "Suppress progress output");

  std::string config_path;
  bool force = false;
  std::size_t max_generations = 0;
  auto* evolve = app.add_subcommand("evolve", "Start an experiment from a JSON config");
  evolve->add_option("config", config_path, "Experiment config")->required();
  evolve->add_flag("--force", force, "Discard an existing experiment in the output directory");
  evolve->add_option("--max-generations", max_generations, "Stop after this many generations (resumable)");

  std::string manifest_path;
  auto* resume = app.add_subcommand("resume", "Continue an interrupted experiment");
  resume->add_option("manifest", manifest_path, "manifest.json of the experiment")->required();
  resume->add_option("--max-generations", max_generations, "Stop after this many generations (resumable)");

  auto* posteval = app.add_subcommand("posteval", "Re-evaluate every generation's champion");
  posteval->add_option("manifest", manifest_path, "manifest.json of the experiment")->required();

  std::string what;
  std::string out_dir;
  ex::ExportOptions export_options;
  auto* exp = app.add_subcommand("export", "Write analysis artifacts");
  exp->add_option("manifest", manifest_path, "manifest.json of the experiment")->required();
  exp->add_option("what", what, "trajectories | trajectory-curves | som | density | complexity")->required();
  exp->add_option("-o,--output", out_dir, "Output directory (default: <experiment>/exports)");
  exp->add_option("--x", export_options.density_x, "Density: descriptor component on the x axis");
  exp->add_option("--y", export_options.density_y, "Density: descriptor component on the y axis");
  exp->add_option("--bins", export_options.density_bins, "Density: bins per axis");
  exp->add_option("--levels", export_options.complexity_levels, "Complexity: fitness levels");
  exp->add_option("--som-width", export_options.som.width, "SOM grid width");
  exp->add_option("--som-height", export_options.som.height, "SOM grid height");
  exp->add_option("--som-epochs", export_options.som.epochs, "SOM training epochs");
  exp->add_option("--som-samples", export_options.som.max_training_samples, "SOM training sample cap (0: all)");

  auto* validate = app.add_subcommand("validate", "Check a config and print it with defaults filled in");
  validate->add_option("config", config_path, "Experiment config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    auto options = run_options(workers, quiet);
    if (max_generations > 0) options.max_generations = max_generations;
    if (*evolve) {
      options.force = force;
      const auto config = ex::load_config(config_path);
      const auto m = ex::run_experiment(config, config_path, options);
      std::cout << m.path.string() << (m.complete() ? "" : " (incomplete, resume to continue)") << '\n';
    } else if (*resume) {
      const auto m = ex::resume_experiment(manifest_path, options);
      std::cout << m.path.string() << (m.complete() ? "" : " (incomplete, resume to continue)") << '\n';
    } else if (*posteval) {
      ex::post_evaluate_runs(manifest_path, options);
    } else if (*exp) {
      const auto kind = ex::parse_export_kind(what);
      if (!out_dir.empty()) export_options.output_dir = out_dir;
      for (const auto& path : ex::export_artifacts(manifest_path, kind, export_options)) {
        std::cout << path.string() << '\n';
      }
    } else if (*validate) {
      const auto config = ex::load_config(config_path);
      std::cout << ex::to_json(config).dump(2) << '\n' << "hash " << ex::config_hash(config) << '\n';
    }
  } catch (const swarmnov::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
