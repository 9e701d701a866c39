#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swarmnov/errors.hpp"
#include "swarmnov/experiment/config.hpp"
#include "swarmnov/experiment/evolution.hpp"
#include "swarmnov/experiment/persistence.hpp"
#include "swarmnov/experiment/runner.hpp"
#include "swarmnov/io.hpp"

using namespace swarmnov;
using namespace swarmnov::experiment;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json tiny_doc(const fs::path& out, const std::string& policy = "novelty") {
  return json{{"task", "aggregation"},
              {"characterisation", "bcm"},
              {"selection", {{"policy", policy}}},
              {"novelty", {{"k", 3}, {"archive_probability", 0.3}}},
              {"evolution", {{"population_size", 10}, {"generations", 4}}},
              {"sim", {{"steps", 100}}},
              {"trials", 2},
              {"posteval_trials", 2},
              {"runs", 2},
              {"seed", 5},
              {"output_dir", out.string()}};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("swarmnov_exp_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every file under a run directory, relative path -> bytes.
std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = slurp(e.path());
  return out;
}

std::map<std::string, std::string> runs_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : tree(root))
    if (k.rfind("run_", 0) == 0) out[k] = v;
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(json{{"task", "resource"}});
  CHECK(c.task.task == tasks::Task::kResourceSharing);
  CHECK(c.task.characterisation == tasks::Characterisation::kBsimple);
  CHECK(c.evolution.generations == 400);
  CHECK(c.task.sim.swarm_size == 5);
  CHECK(parse_config(json{{"task", "aggregation"}}).evolution.generations == 250);

  const auto full = to_json(c);
  const auto again = parse_config(full);
  CHECK(to_json(again) == full);
  CHECK(config_hash(again) == config_hash(c));
  CHECK(config_hash(c).size() == 16);
  CHECK(config_hash(parse_config(json{{"task", "resource"}, {"seed", 2}})) != config_hash(c));

  SUBCASE("every offending field is named") {
    json bad{{"task", "aggregation"},
             {"characterisation", "bsimple"},
             {"trials", -1},
             {"evolution", {{"population_size", "many"}}},
             {"selection", {{"policy", "pmcns"}, {"percentile", 1.5}}},
             {"colour", "blue"}};
    try {
      parse_config(bad);
      FAIL("accepted");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("characterisation") != std::string::npos);
      CHECK(msg.find("trials") != std::string::npos);
      CHECK(msg.find("evolution.population_size") != std::string::npos);
      CHECK(msg.find("selection.percentile") != std::string::npos);
      CHECK(msg.find("colour") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(parse_config(json{{"task", "swim"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("seeds") {
  CHECK(run_seed(1, 0) != run_seed(1, 1));
  CHECK(run_seed(1, 0) == run_seed(1, 0));
  const auto a = trial_seeds(9, 3, 10);
  CHECK(a.size() == 10);
  CHECK(a == trial_seeds(9, 3, 10));
  CHECK(a != trial_seeds(9, 4, 10));
}

TEST_CASE("generation csv round trip") {
  analysis::GenerationStats s{7, 0.1 + 0.2, 1.0 / 3.0, 4, 12, 0.123456789012345, 99, 80};
  const auto back = parse_generation_row(generation_row(s));
  CHECK(back.generation == 7);
  CHECK(back.best_fitness == s.best_fitness);
  CHECK(back.mean_fitness == s.mean_fitness);
  CHECK(back.mc == s.mc);
  CHECK(back.champion_id == 99);
  CHECK(back.champion_complexity == 80);
}

TEST_CASE("evolution run checkpoint continues identically") {
  auto cfg = parse_config(tiny_doc("unused", "pmcns"));
  EvolutionRun straight(cfg, 0);
  for (int g = 0; g < 2; ++g) straight.step(1);
  const auto cp = straight.checkpoint();
  EvolutionRun resumed(cfg, cp, straight.archive());
  const auto a = straight.step(1), b = resumed.step(1);
  CHECK(a.stats.best_fitness == b.stats.best_fitness);
  CHECK(a.stats.mc == b.stats.mc);
  CHECK(straight.checkpoint() == resumed.checkpoint());
  CHECK(a.individuals.size() == 10);
}

TEST_CASE("experiment determinism, resume and export") {
  const auto base = scratch("e2e");
  const auto cfg_a = parse_config(tiny_doc(base / "a"));
  const auto cfg_b = parse_config(tiny_doc(base / "b"));

  const auto ma = run_experiment(cfg_a, "", {.workers = 1});
  CHECK(ma.complete());
  REQUIRE(ma.runs.size() == 2);
  CHECK(ma.runs[0].generations_completed == 4);

  // Interrupted after three generations, then resumed.
  const auto partial = run_experiment(cfg_b, "", {.workers = 1, .max_generations = 3});
  CHECK_FALSE(partial.complete());
  const auto mb = resume_experiment(partial.path, {.workers = 1});
  CHECK(mb.complete());
  CHECK(runs_tree(base / "a") == runs_tree(base / "b"));

  CHECK_THROWS_AS(run_experiment(cfg_a, "", {.workers = 1}), ConfigError);

  const auto rec = load_run(ma.run_paths(0));
  CHECK(rec.generations.size() == 4);
  CHECK(rec.individuals.size() == 40);
  CHECK(rec.champions.size() == 4);
  for (std::size_t g = 0; g < 4; ++g) CHECK(rec.generations[g].generation == g);

  SUBCASE("exports") {
    ExportOptions eo;
    eo.som.width = 3;
    eo.som.height = 3;
    eo.som.epochs = 3;
    for (auto kind : {ExportKind::kTrajectoryCurves, ExportKind::kTrajectories, ExportKind::kSom,
                      ExportKind::kDensity, ExportKind::kComplexity}) {
      CAPTURE(to_string(kind));
      const auto files = export_artifacts(ma.path, kind, eo);
      REQUIRE_FALSE(files.empty());
      std::vector<std::string> first;
      for (const auto& f : files) first.push_back(slurp(f));
      const auto files2 = export_artifacts(ma.path, kind, eo);
      REQUIRE(files2.size() == files.size());
      for (std::size_t i = 0; i < files.size(); ++i) CHECK(slurp(files2[i]) == first[i]);
    }
    const auto curves = slurp(base / "a" / "exports" / "trajectory_curves.csv");
    CHECK(std::count(curves.begin(), curves.end(), '\n') == 1 + 4 * 2);
    CHECK(parse_export_kind("som") == ExportKind::kSom);
    CHECK_THROWS_AS(parse_export_kind("video"), ConfigError);
  }
  SUBCASE("post evaluation") {
    post_evaluate_runs(ma.path, {.workers = 1});
    const auto pe = slurp(ma.run_paths(1).posteval());
    CHECK(std::count(pe.begin(), pe.end(), '\n') == 1 + 4);
  }
  fs::remove_all(base);
}

TEST_CASE("resume refuses a changed config") {
  const auto base = scratch("hash");
  const auto path = base / "config.json";
  auto doc = tiny_doc(base / "out");
  { std::ofstream(path) << doc.dump(); }
  const auto m = run_experiment(load_config(path), path, {.workers = 1, .max_generations = 1});
  doc["seed"] = 6;
  { std::ofstream(path) << doc.dump(); }
  CHECK_THROWS_AS(resume_experiment(m.path, {.workers = 1}), ConfigError);
  fs::remove_all(base);
}

TEST_CASE("empty and incomplete experiments") {
  const auto base = scratch("empty");
  auto doc = tiny_doc(base / "zero");
  doc["runs"] = 0;
  const auto m = run_experiment(parse_config(doc), "", {.workers = 1});
  CHECK(m.runs.empty());
  CHECK(m.complete());
  CHECK_THROWS_AS(export_artifacts(m.path, ExportKind::kTrajectoryCurves), RunIncomplete);

  auto doc2 = tiny_doc(base / "none");
  const auto m2 = run_experiment(parse_config(doc2), "", {.workers = 1, .max_generations = 0});
  CHECK_THROWS_AS(export_artifacts(m2.path, ExportKind::kComplexity), RunIncomplete);
  CHECK_THROWS_AS(load_run(m2.run_paths(0)), RunIncomplete);
  fs::remove_all(base);
}
