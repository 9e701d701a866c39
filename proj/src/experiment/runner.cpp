#include "swarmnov/experiment/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <thread>

#include "swarmnov/errors.hpp"
#include "swarmnov/experiment/evolution.hpp"
#include "swarmnov/io.hpp"
#include "swarmnov/neat/network.hpp"
#include "swarmnov/sim/trajectory_log.hpp"
#include "swarmnov/tasks/evaluate.hpp"

namespace swarmnov::experiment {

using nlohmann::json;

namespace {

void log_line(const RunOptions& o, const std::string& line) {
  if (o.log) *o.log << line << '\n' << std::flush;
}

unsigned worker_count(const RunOptions& o) { return o.workers ? o.workers : tasks::default_workers(); }

std::string run_directory(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%03zu", index);
  return buf;
}

RunStatus parse_status(const std::string& s) {
  if (s == "pending") return RunStatus::kPending;
  if (s == "running") return RunStatus::kRunning;
  if (s == "complete") return RunStatus::kComplete;
  throw ConfigError("unknown run status '" + s + "'");
}

// Calls fn(i) for i in [0, n) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn fn) {
  const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += threads) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void persist_generation(const RunPaths& p, const GenerationReport& r, const EvolutionRun& run,
                        const ExperimentConfig& config) {
  const std::size_t g = r.stats.generation;
  fs::create_directories(p.evaluations_dir());
  fs::create_directories(p.champions_dir());
  io::write_atomic(p.evaluations(g), evaluations_csv(r.individuals, config.trials, config.task.descriptor_length()));
  io::write_atomic(p.champion(g), neat::to_text(r.champion));
  std::string table = fs::exists(p.generations()) ? io::read_file(p.generations()) : generations_header();
  table += generation_row(r.stats);
  io::write_atomic(p.generations(), table);
  if (!r.archived.empty() || !fs::exists(p.archive())) io::write_atomic(p.archive(), run.archive().to_csv());
  // Written last: a checkpoint marks the generation as complete.
  io::write_atomic(p.checkpoint(), run.checkpoint().dump());
}

// Advances unfinished runs in order. Returns false if the generation budget ran out.
bool drive(Manifest& m, const RunOptions& o) {
  const unsigned workers = worker_count(o);
  std::size_t done = 0;
  for (std::size_t i = 0; i < m.runs.size(); ++i) {
    auto& entry = m.runs[i];
    if (entry.status == RunStatus::kComplete) continue;
    const RunPaths paths = m.run_paths(i);
    fs::create_directories(paths.root);

    std::optional<EvolutionRun> run;
    if (fs::exists(paths.checkpoint())) {
      json cp;
      try {
        cp = json::parse(io::read_file(paths.checkpoint()));
      } catch (const json::parse_error& e) {
        throw RuntimeFailure(paths.checkpoint().string() + ": " + e.what());
      }
      novelty::Archive archive;
      if (fs::exists(paths.archive())) archive = novelty::Archive::from_csv(io::read_file(paths.archive()));
      run.emplace(m.config, cp, archive);
      if (run->seed() != entry.seed) throw RuntimeFailure("checkpoint seed does not match manifest for run " + std::to_string(i));
    } else {
      run.emplace(m.config, i);
    }
    truncate_run(paths, run->generation());
    entry.status = RunStatus::kRunning;
    entry.generations_completed = run->generation();
    save_manifest(m);

    while (!run->finished()) {
      if (o.max_generations && done >= *o.max_generations) return false;
      const auto report = run->step(workers);
      persist_generation(paths, report, *run, m.config);
      ++done;
      entry.generations_completed = run->generation();
      save_manifest(m);
      log_line(o, "run " + std::to_string(i) + " generation " + std::to_string(report.stats.generation) +
                      " best " + io::format_double(report.stats.best_fitness) + " mean " +
                      io::format_double(report.stats.mean_fitness) + " species " +
                      std::to_string(report.stats.species_count));
    }
    entry.status = RunStatus::kComplete;
    save_manifest(m);
  }
  return true;
}

std::vector<analysis::RunRecord> load_all(const Manifest& m) {
  if (m.runs.empty()) throw RunIncomplete("manifest lists no runs");
  std::vector<analysis::RunRecord> records;
  for (std::size_t i = 0; i < m.runs.size(); ++i) records.push_back(load_run(m.run_paths(i)));
  return records;
}

std::vector<novelty::Descriptor> all_descriptors(const std::vector<analysis::RunRecord>& runs,
                                                 std::vector<double>* fitnesses = nullptr) {
  std::vector<novelty::Descriptor> out;
  for (const auto& r : runs) {
    for (const auto& ind : r.individuals) {
      out.push_back(ind.descriptor);
      if (fitnesses) fitnesses->push_back(ind.fitness);
    }
  }
  return out;
}

json number_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kPending: return "pending";
    case RunStatus::kRunning: return "running";
    case RunStatus::kComplete: return "complete";
  }
  return "pending";
}

bool Manifest::complete() const {
  return std::all_of(runs.begin(), runs.end(), [](const RunEntry& r) { return r.status == RunStatus::kComplete; });
}

json to_json(const Manifest& m) {
  json runs = json::array();
  for (const auto& r : m.runs) {
    const std::string dir = r.directory;
    runs.push_back({{"index", r.index},
                    {"seed", r.seed},
                    {"status", std::string(to_string(r.status))},
                    {"generations_completed", r.generations_completed},
                    {"directory", dir},
                    {"artifacts",
                     {{"generations", dir + "/generations.csv"},
                      {"evaluations", dir + "/evaluations"},
                      {"champions", dir + "/champions"},
                      {"archive", dir + "/archive.csv"},
                      {"checkpoint", dir + "/checkpoint.json"},
                      {"posteval", dir + "/posteval.csv"}}}});
  }
  return {{"schema_version", kSchemaVersion},
          {"config_path", m.config_path},
          {"config_hash", m.config_hash},
          {"config", to_json(m.config)},
          {"runs", runs}};
}

void save_manifest(const Manifest& m) { io::write_atomic(m.path, to_json(m).dump(2) + "\n"); }

Manifest load_manifest(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("manifest not found: " + path.string());
  Manifest m;
  m.path = path;
  try {
    const json j = json::parse(io::read_file(path));
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw ConfigError("unsupported manifest version");
    m.config_path = j.at("config_path").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.config = parse_config(j.at("config"));
    for (const auto& r : j.at("runs")) {
      RunEntry e;
      e.index = r.at("index").get<std::size_t>();
      e.seed = r.at("seed").get<std::uint64_t>();
      e.status = parse_status(r.at("status").get<std::string>());
      e.generations_completed = r.at("generations_completed").get<std::size_t>();
      e.directory = r.at("directory").get<std::string>();
      m.runs.push_back(e);
    }
  } catch (const json::exception& e) {
    throw ConfigError("malformed manifest " + path.string() + ": " + e.what());
  }
  return m;
}

Manifest run_experiment(const ExperimentConfig& config, const fs::path& config_path, const RunOptions& options) {
  validate(config);
  const fs::path root = config.output_dir;
  Manifest m;
  m.path = root / "manifest.json";
  if (fs::exists(m.path)) {
    if (!options.force) {
      throw ConfigError(m.path.string() + " already exists; use resume to continue or --force to start over");
    }
    for (const auto& entry : fs::directory_iterator(root)) {
      const auto name = entry.path().filename().string();
      if (name.starts_with("run_") || name == "exports") fs::remove_all(entry.path());
    }
    fs::remove(m.path);
  }
  fs::create_directories(root);
  m.config_path = config_path.empty() ? std::string() : fs::absolute(config_path).lexically_normal().string();
  m.config_hash = config_hash(config);
  m.config = config;
  for (std::size_t i = 0; i < config.runs; ++i) {
    m.runs.push_back({i, run_seed(config.seed, i), RunStatus::kPending, 0, run_directory(i)});
  }
  save_manifest(m);
  log_line(options, "experiment " + m.config_hash + ": " + std::to_string(m.runs.size()) + " runs in " + root.string());
  drive(m, options);
  return m;
}

Manifest resume_experiment(const fs::path& manifest_path, const RunOptions& options) {
  Manifest m = load_manifest(manifest_path);
  if (!m.config_path.empty()) {
    const ExperimentConfig current = load_config(m.config_path);
    const std::string hash = config_hash(current);
    if (hash != m.config_hash) {
      throw ConfigError("config " + m.config_path + " changed since the experiment started (hash " + hash +
                        ", manifest " + m.config_hash + "); refusing to resume");
    }
  } else if (config_hash(m.config) != m.config_hash) {
    throw ConfigError("embedded config does not match the manifest hash; refusing to resume");
  }
  drive(m, options);
  return m;
}

void post_evaluate_runs(const fs::path& manifest_path, const RunOptions& options) {
  const Manifest m = load_manifest(manifest_path);
  if (m.runs.empty()) throw RunIncomplete("manifest lists no runs");
  const unsigned workers = worker_count(options);
  for (std::size_t i = 0; i < m.runs.size(); ++i) {
    const RunPaths paths = m.run_paths(i);
    if (!fs::exists(paths.generations())) throw RunIncomplete(paths.root.string() + " has no completed generations");
    std::vector<analysis::GenerationStats> gens;
    {
      const auto text = io::read_file(paths.generations());
      bool header = true;
      for (auto line : io::split(text, '\n')) {
        if (line.empty()) continue;
        if (header) {
          header = false;
          continue;
        }
        gens.push_back(parse_generation_row(line));
      }
    }
    if (gens.empty()) throw RunIncomplete(paths.root.string() + " has no completed generations");
    std::vector<double> post(gens.size());
    parallel_for(gens.size(), workers, [&](std::size_t g) {
      const auto champion = neat::genome_from_text(io::read_file(paths.champion(g)));
      const auto seed = derive_seed(m.runs[i].seed, Stream::kPostEval, g);
      post[g] = analysis::post_evaluate(champion, m.config.task, m.config.posteval_trials, seed);
    });
    std::string out = "generation,champion_id,fitness,posteval_fitness\n";
    for (std::size_t g = 0; g < gens.size(); ++g) {
      out += std::to_string(g) + ',' + std::to_string(gens[g].champion_id) + ',' +
             io::format_double(gens[g].best_fitness) + ',' + io::format_double(post[g]) + '\n';
    }
    io::write_atomic(paths.posteval(), out);
    log_line(options, "run " + std::to_string(i) + ": post-evaluated " + std::to_string(gens.size()) + " champions");
  }
}

std::string_view to_string(ExportKind k) {
  switch (k) {
    case ExportKind::kTrajectories: return "trajectories";
    case ExportKind::kTrajectoryCurves: return "trajectory-curves";
    case ExportKind::kSom: return "som";
    case ExportKind::kDensity: return "density";
    case ExportKind::kComplexity: return "complexity";
  }
  return "trajectories";
}

ExportKind parse_export_kind(std::string_view name) {
  for (auto k : {ExportKind::kTrajectories, ExportKind::kTrajectoryCurves, ExportKind::kSom, ExportKind::kDensity,
                 ExportKind::kComplexity}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown export '" + std::string(name) +
                    "' (expected trajectories, trajectory-curves, som, density or complexity)");
}

std::vector<fs::path> export_artifacts(const fs::path& manifest_path, ExportKind kind, const ExportOptions& options) {
  const Manifest m = load_manifest(manifest_path);
  const auto runs = load_all(m);
  const fs::path out_dir = options.output_dir ? *options.output_dir : m.root() / "exports";
  fs::create_directories(out_dir);
  std::vector<fs::path> written;

  switch (kind) {
    case ExportKind::kTrajectoryCurves: {
      std::string rows = "run,generation,best_fitness,best_so_far\n";
      std::vector<std::vector<double>> bests;
      for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto best = runs[r].best_per_generation();
        const auto so_far = analysis::running_max(best);
        for (std::size_t g = 0; g < best.size(); ++g) {
          rows += std::to_string(r) + ',' + std::to_string(g) + ',' + io::format_double(best[g]) + ',' +
                  io::format_double(so_far[g]) + '\n';
        }
        bests.push_back(best);
      }
      const auto mean = analysis::fitness_trajectory(bests);
      std::string curve = "generation,mean_best_so_far\n";
      for (std::size_t g = 0; g < mean.size(); ++g) curve += std::to_string(g) + ',' + io::format_double(mean[g]) + '\n';
      written = {out_dir / "trajectory_curves.csv", out_dir / "trajectory_mean.csv"};
      io::write_atomic(written[0], rows);
      io::write_atomic(written[1], curve);
      break;
    }
    case ExportKind::kTrajectories: {
      const fs::path dir = out_dir / "trajectories";
      fs::create_directories(dir);
      std::string index = "run,generation,champion_id,fitness,trial_seed,file\n";
      for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto best = runs[r].best_per_generation();
        const auto g = static_cast<std::size_t>(std::max_element(best.begin(), best.end()) - best.begin());
        const auto& champion = runs[r].champions[g];
        const auto seed = derive_seed(m.runs[r].seed, Stream::kAnalysis, 1);
        const fs::path file = dir / (run_directory(r) + ".csv.gz");
        {
          sim::TrajectoryLog log(file);
          const neat::Network net(champion);
          tasks::run_trial(net, m.config.task, seed, &log);
          log.close();
        }
        index += std::to_string(r) + ',' + std::to_string(g) + ',' + std::to_string(champion.id) + ',' +
                 io::format_double(best[g]) + ',' + std::to_string(seed) + ',' + file.filename().string() + '\n';
        written.push_back(file);
      }
      io::write_atomic(dir / "index.csv", index);
      written.push_back(dir / "index.csv");
      break;
    }
    case ExportKind::kSom: {
      std::vector<double> fitness;
      const auto data = all_descriptors(runs, &fitness);
      const auto grid = analysis::train_som(data, options.som, derive_seed(m.config.seed, Stream::kAnalysis, 0));
      const auto cells = analysis::map_behaviours(grid, data, fitness);
      json prototypes = json::array();
      for (const auto& p : grid.prototypes) prototypes.push_back(number_array(p));
      json cell_json = json::array();
      for (std::size_t c = 0; c < cells.size(); ++c) {
        cell_json.push_back({{"x", c % grid.width}, {"y", c / grid.width}, {"count", cells[c].count},
                             {"mean_fitness", cells[c].mean_fitness}});
      }
      const json doc = {{"width", grid.width},
                        {"height", grid.height},
                        {"epochs", options.som.epochs},
                        {"samples", data.size()},
                        {"quantization_errors", number_array(grid.quantization_errors)},
                        {"prototypes", prototypes},
                        {"cells", cell_json}};
      written = {out_dir / "som.json"};
      io::write_atomic(written[0], doc.dump() + "\n");
      break;
    }
    case ExportKind::kDensity: {
      const auto data = all_descriptors(runs);
      const auto hist = analysis::density_2d(data, options.density_x, options.density_y, options.density_bins);
      json counts = json::array();
      for (std::size_t ix = 0; ix < hist.bins; ++ix) {
        json row = json::array();
        for (std::size_t iy = 0; iy < hist.bins; ++iy) row.push_back(hist.at(ix, iy));
        counts.push_back(row);
      }
      const json doc = {{"bins", hist.bins},
                        {"x_component", hist.x_component},
                        {"y_component", hist.y_component},
                        {"samples", data.size()},
                        {"counts", counts}};
      written = {out_dir / "density.json"};
      io::write_atomic(written[0], doc.dump() + "\n");
      break;
    }
    case ExportKind::kComplexity: {
      const auto table = analysis::complexity_table(runs, options.complexity_levels);
      std::string out = "level,runs_qualifying,mean_generation,mean_complexity\n";
      for (const auto& row : table) {
        out += io::format_double(row.level) + ',' + std::to_string(row.runs_qualifying) + ',' +
               io::format_double(row.mean_generation) + ',' + io::format_double(row.mean_complexity) + '\n';
      }
      written = {out_dir / "complexity.csv"};
      io::write_atomic(written[0], out);
      break;
    }
  }
  return written;
}

}  // namespace swarmnov::experiment
