#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "swarmnov/analysis/analysis.hpp"
#include "swarmnov/errors.hpp"
#include "swarmnov/experiment/config.hpp"
#include "swarmnov/experiment/evolution.hpp"
#include "swarmnov/experiment/persistence.hpp"
#include "swarmnov/experiment/runner.hpp"
#include "swarmnov/neat/genome.hpp"
#include "swarmnov/neat/innovation.hpp"
#include "swarmnov/neat/network.hpp"
#include "swarmnov/novelty.hpp"
#include "swarmnov/selection.hpp"
#include "swarmnov/tasks/evaluate.hpp"
#include "swarmnov/tasks/functions.hpp"

namespace py = pybind11;
namespace sn = swarmnov;
namespace ex = swarmnov::experiment;

namespace {

ex::ExperimentConfig config_from(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw sn::ConfigError(e.what());
  }
  return ex::parse_config(doc);
}

ex::RunOptions run_options(unsigned workers, std::optional<std::size_t> max_generations) {
  ex::RunOptions o;
  o.workers = workers;
  o.max_generations = max_generations;
  return o;
}

py::dict genome_summary(const sn::neat::Genome& g) {
  py::dict d;
  d["id"] = g.id;
  d["complexity"] = g.complexity();
  d["inputs"] = g.input_count();
  d["outputs"] = g.output_count();
  d["hidden"] = g.hidden_count();
  d["connections"] = g.connections.size();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Swarm controller neuroevolution with novelty search";

  py::register_exception<sn::ConfigError>(m, "ConfigError", PyExc_ValueError);
  auto failure = py::register_exception<sn::RuntimeFailure>(m, "RuntimeFailure", PyExc_RuntimeError);
  py::register_exception<sn::RunIncomplete>(m, "RunIncomplete", failure.ptr());

  m.def("normalize_config", [](const std::string& text) { return ex::to_json(config_from(text)).dump(); },
        py::arg("config_json"), "Validate a JSON config and return it with defaults filled in.");
  m.def("config_hash", [](const std::string& text) { return ex::config_hash(config_from(text)); },
        py::arg("config_json"));

  m.def(
      "evolve",
      [](const std::string& text, const std::string& config_path, unsigned workers,
         std::optional<std::size_t> max_generations, bool force) {
        auto o = run_options(workers, max_generations);
        o.force = force;
        py::gil_scoped_release release;
        return ex::run_experiment(config_from(text), config_path, o).path;
      },
      py::arg("config_json"), py::arg("config_path") = "", py::arg("workers") = 0,
      py::arg("max_generations") = py::none(), py::arg("force") = false,
      "Start an experiment; returns the manifest path.");
  m.def(
      "resume",
      [](const std::filesystem::path& manifest, unsigned workers, std::optional<std::size_t> max_generations) {
        py::gil_scoped_release release;
        return ex::resume_experiment(manifest, run_options(workers, max_generations)).complete();
      },
      py::arg("manifest"), py::arg("workers") = 0, py::arg("max_generations") = py::none(),
      "Continue an experiment; returns True once every run is complete.");
  m.def(
      "posteval",
      [](const std::filesystem::path& manifest, unsigned workers) {
        py::gil_scoped_release release;
        ex::post_evaluate_runs(manifest, run_options(workers, std::nullopt));
      },
      py::arg("manifest"), py::arg("workers") = 0);
  m.def(
      "export",
      [](const std::filesystem::path& manifest, const std::string& what,
         std::optional<std::filesystem::path> output_dir, std::size_t bins) {
        ex::ExportOptions o;
        o.output_dir = output_dir;
        o.density_bins = bins;
        const auto kind = ex::parse_export_kind(what);
        py::gil_scoped_release release;
        return ex::export_artifacts(manifest, kind, o);
      },
      py::arg("manifest"), py::arg("what"), py::arg("output_dir") = py::none(), py::arg("bins") = 20);

  m.def(
      "load_run",
      [](const std::filesystem::path& run_dir) {
        const auto r = ex::load_run({run_dir});
        py::dict d;
        std::vector<double> best;
        std::vector<double> mean;
        std::vector<std::size_t> species;
        for (const auto& g : r.generations) {
          best.push_back(g.best_fitness);
          mean.push_back(g.mean_fitness);
          species.push_back(g.species_count);
        }
        d["best_fitness"] = best;
        d["mean_fitness"] = mean;
        d["species_count"] = species;
        d["archive_size"] = r.archive.size();
        d["individuals"] = r.individuals.size();
        std::vector<std::size_t> complexity;
        for (const auto& c : r.champions) complexity.push_back(c.complexity());
        d["champion_complexity"] = complexity;
        return d;
      },
      py::arg("run_dir"), "Summary of a persisted run.");

  m.def(
      "initial_genome",
      [](const std::string& task, std::uint64_t seed) {
        const auto cfg = sn::tasks::TaskConfig::defaults(
            sn::tasks::parse_task(task), task == "aggregation" ? sn::tasks::Characterisation::kBcmcl
                                                               : sn::tasks::Characterisation::kBsimple);
        sn::neat::InnovationTracker tracker(static_cast<int>(cfg.input_count() + cfg.output_count()));
        sn::Rng rng(seed);
        const auto g = sn::neat::make_initial_genome(static_cast<int>(cfg.input_count()),
                                                     static_cast<int>(cfg.output_count()), tracker, rng, 1.0);
        return sn::neat::to_text(g);
      },
      py::arg("task"), py::arg("seed") = 1, "Text form of a fully connected initial genome.");
  m.def(
      "genome_summary", [](const std::string& text) { return genome_summary(sn::neat::genome_from_text(text)); },
      py::arg("genome_text"));
  m.def(
      "activate",
      [](const std::string& text, const std::vector<std::vector<double>>& inputs) {
        const sn::neat::Network net(sn::neat::genome_from_text(text));
        auto state = net.make_state();
        std::vector<std::vector<double>> out;
        for (const auto& x : inputs) out.push_back(sn::neat::activate(net, state, x));
        return out;
      },
      py::arg("genome_text"), py::arg("inputs"), "Feeds a sequence of input vectors through one network state.");
  m.def(
      "evaluate",
      [](const std::string& text, const std::string& config_json, const std::vector<std::uint64_t>& seeds) {
        const auto cfg = config_from(config_json);
        const auto g = sn::neat::genome_from_text(text);
        sn::tasks::EvaluationResult r;
        {
          py::gil_scoped_release release;
          r = sn::tasks::evaluate(g, cfg.task, seeds);
        }
        py::dict d;
        d["fitness"] = r.fitness;
        d["descriptor"] = r.descriptor;
        d["trial_fitnesses"] = r.trial_fitnesses;
        d["diverged"] = r.diverged;
        return d;
      },
      py::arg("genome_text"), py::arg("config_json"), py::arg("seeds"),
      "Evaluates a genome on the task of an experiment config.");

  using Vec = std::vector<double>;
  m.def(
      "sparseness",
      [](const Vec& x, const std::vector<Vec>& refs, std::size_t k) { return sn::novelty::sparseness(x, refs, k); },
      py::arg("x"), py::arg("references"), py::arg("k") = 15);
  m.def(
      "nearest_rank_percentile",
      [](const Vec& v, double p) { return sn::selection::nearest_rank_percentile(v, p); }, py::arg("values"),
      py::arg("p"));
  m.def(
      "update_criterion",
      [](double mc, const std::vector<double>& fitnesses, double percentile, double smoothing) {
        sn::selection::PmcnsState s{mc, percentile, smoothing};
        return sn::selection::update_criterion(s, fitnesses);
      },
      py::arg("mc"), py::arg("fitnesses"), py::arg("percentile") = 0.5, py::arg("smoothing") = 0.25);
  m.def(
      "score_pmcns",
      [](const std::vector<double>& fitnesses, const std::vector<double>& novelties, double mc) {
        return sn::selection::score_pmcns(fitnesses, novelties, {mc, 0.5, 0.25});
      },
      py::arg("fitnesses"), py::arg("novelties"), py::arg("mc"));
  m.def(
      "score_scalarized",
      [](const Vec& f, const Vec& n, double rho) { return sn::selection::score_scalarized(f, n, rho); },
      py::arg("fitnesses"), py::arg("novelties"), py::arg("rho") = 0.75);
  m.def(
      "combine_harmonic", [](const Vec& v) { return sn::tasks::combine_harmonic(v); }, py::arg("values"));
  m.def(
      "fitness_aggregation",
      [](const std::vector<std::pair<double, double>>& positions, double d_max) {
        std::vector<sn::sim::Vec2> p;
        for (const auto& [x, y] : positions) p.push_back({x, y});
        return sn::tasks::fitness_aggregation_trial(p, d_max);
      },
      py::arg("positions"), py::arg("d_max"));
  m.def(
      "count_clusters",
      [](const std::vector<std::pair<double, double>>& positions, double range) {
        std::vector<sn::sim::Vec2> p;
        for (const auto& [x, y] : positions) p.push_back({x, y});
        return sn::tasks::count_clusters(p, range);
      },
      py::arg("positions"), py::arg("range") = 0.25);
}
