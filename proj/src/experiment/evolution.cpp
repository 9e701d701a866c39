#include "swarmnov/experiment/evolution.hpp"

#include <algorithm>
#include <numeric>

#include "swarmnov/errors.hpp"
#include "swarmnov/io.hpp"
#include "swarmnov/tasks/evaluate.hpp"

namespace swarmnov::experiment {

using nlohmann::json;

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run_index) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(Stream::kRun), static_cast<std::uint64_t>(run_index));
}

std::vector<std::uint64_t> trial_seeds(std::uint64_t seed, std::size_t generation, std::size_t trials) {
  std::vector<std::uint64_t> seeds(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    seeds[t] = derive_seed(seed, static_cast<std::uint64_t>(Stream::kTrial), static_cast<std::uint64_t>(generation),
                           static_cast<std::uint64_t>(t));
  }
  return seeds;
}

namespace {

Rng stream(std::uint64_t seed, Stream s) { return Rng(derive_seed(seed, static_cast<std::uint64_t>(s))); }

selection::PmcnsState pmcns_from(const SelectionConfig& s) {
  selection::PmcnsState st;
  st.percentile = s.percentile;
  st.smoothing = s.smoothing;
  return st;
}

json species_to_json(const neat::Species& s) {
  return {{"id", s.id},
          {"staleness", s.staleness},
          {"best_score", io::format_double(s.best_score)},
          {"representative", neat::to_text(s.representative)}};
}

json innovations_to_json(const neat::InnovationTracker::State& st) {
  json conns = json::array();
  for (const auto& [key, inn] : st.connections) conns.push_back({key.first, key.second, inn});
  json splits = json::array();
  for (const auto& [inn, node] : st.splits) splits.push_back({inn, node});
  return {{"next_innovation", st.next_innovation},
          {"next_node_id", st.next_node_id},
          {"connections", conns},
          {"splits", splits}};
}

neat::InnovationTracker::State innovations_from_json(const json& j) {
  neat::InnovationTracker::State st;
  st.next_innovation = j.at("next_innovation").get<int>();
  st.next_node_id = j.at("next_node_id").get<int>();
  for (const auto& c : j.at("connections")) st.connections.push_back({{c.at(0).get<int>(), c.at(1).get<int>()}, c.at(2).get<int>()});
  for (const auto& s : j.at("splits")) st.splits.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
  return st;
}

}  // namespace

EvolutionRun::EvolutionRun(const ExperimentConfig& config, std::size_t run_index)
    : config_(config),
      seed_(run_seed(config.seed, run_index)),
      evolution_rng_(stream(seed_, Stream::kEvolution)),
      archive_rng_(stream(seed_, Stream::kArchive)),
      random_rng_(stream(seed_, Stream::kRandomScores)),
      pmcns_(pmcns_from(config.selection)) {
  population_.emplace(config_.evolution, static_cast<int>(config_.task.input_count()),
                      static_cast<int>(tasks::TaskConfig::output_count()), evolution_rng_);
}

EvolutionRun::EvolutionRun(const ExperimentConfig& config, const json& cp, const novelty::Archive& archive)
    : config_(config), pmcns_(pmcns_from(config.selection)) {
  try {
    seed_ = cp.at("seed").get<std::uint64_t>();
    evolution_rng_ = load_rng(cp.at("rng").at("evolution").get<std::string>());
    archive_rng_ = load_rng(cp.at("rng").at("archive").get<std::string>());
    random_rng_ = load_rng(cp.at("rng").at("random").get<std::string>());
    pmcns_.mc = io::parse_double(cp.at("mc").get<std::string>());

    neat::Population::State st;
    st.generation = cp.at("generation").get<std::size_t>();
    st.threshold = io::parse_double(cp.at("threshold").get<std::string>());
    st.next_genome_id = cp.at("next_genome_id").get<neat::GenomeId>();
    st.next_species_id = cp.at("next_species_id").get<int>();
    st.genomes = neat::genomes_from_text(cp.at("genomes").get<std::string>());
    for (const auto& s : cp.at("species")) {
      neat::Species sp;
      sp.id = s.at("id").get<int>();
      sp.staleness = s.at("staleness").get<int>();
      sp.best_score = io::parse_double(s.at("best_score").get<std::string>());
      sp.representative = neat::genome_from_text(s.at("representative").get<std::string>());
      st.species.push_back(std::move(sp));
    }
    st.innovations = innovations_from_json(cp.at("innovations"));
    const std::size_t gen = st.generation;
    population_.emplace(config_.evolution, std::move(st));
    for (const auto& e : archive.entries()) {
      if (e.generation < gen) archive_.add(e.generation, e.descriptor);
    }
    if (archive_.size() != cp.at("archive_size").get<std::size_t>()) {
      throw ConfigError("archive does not match checkpoint (" + std::to_string(archive_.size()) + " entries, expected " +
                        cp.at("archive_size").dump() + ")");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what());
  }
}

json EvolutionRun::checkpoint() const {
  const auto st = population_->state();
  std::string genomes;
  for (const auto& g : st.genomes) genomes += neat::to_text(g);
  json species = json::array();
  for (const auto& s : st.species) species.push_back(species_to_json(s));
  // Archive contents live in archive.csv; only generation counters are kept here.
  return {{"generation", st.generation},
          {"seed", seed_},
          {"threshold", io::format_double(st.threshold)},
          {"next_genome_id", st.next_genome_id},
          {"next_species_id", st.next_species_id},
          {"mc", io::format_double(pmcns_.mc)},
          {"archive_size", archive_.size()},
          {"rng", {{"evolution", save_rng(evolution_rng_)}, {"archive", save_rng(archive_rng_)},
                   {"random", save_rng(random_rng_)}}},
          {"innovations", innovations_to_json(st.innovations)},
          {"species", species},
          {"genomes", genomes}};
}

GenerationReport EvolutionRun::step(unsigned workers) {
  if (finished()) throw RuntimeFailure("run already finished");
  const std::size_t gen = generation();
  const auto& genomes = population_->genomes();
  const std::size_t n = genomes.size();

  const auto seeds = trial_seeds(seed_, gen, config_.trials);
  const auto results = tasks::evaluate_population(genomes, config_.task, seeds, workers);

  std::vector<double> fitness(n);
  for (std::size_t i = 0; i < n; ++i) fitness[i] = results[i].fitness;

  const auto policy = config_.selection.policy;
  std::vector<double> novelty_scores;
  const std::size_t archive_before = archive_.size();
  if (selection::needs_novelty(policy)) {
    std::vector<novelty::Descriptor> descriptors(n);
    for (std::size_t i = 0; i < n; ++i) descriptors[i] = results[i].descriptor;
    novelty_scores = novelty::score_generation(descriptors, archive_, config_.novelty, archive_rng_, gen);
  }

  std::vector<double> scores;
  switch (policy) {
    case selection::Policy::kFitness: scores = selection::score_fitness(fitness); break;
    case selection::Policy::kRandom: scores = selection::score_random(n, random_rng_); break;
    case selection::Policy::kNovelty: scores = novelty_scores; break;
    case selection::Policy::kPmcns:
      selection::update_criterion(pmcns_, fitness);
      scores = selection::score_pmcns(fitness, novelty_scores, pmcns_);
      break;
    case selection::Policy::kScalarization:
      scores = selection::score_scalarized(fitness, novelty_scores, config_.selection.rho);
      break;
  }

  GenerationReport report;
  const auto best = static_cast<std::size_t>(std::max_element(fitness.begin(), fitness.end()) - fitness.begin());
  report.champion = genomes[best];
  report.individuals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    analysis::IndividualRecord r;
    r.generation = gen;
    r.id = genomes[i].id;
    r.complexity = genomes[i].complexity();
    r.fitness = fitness[i];
    r.score = scores[i];
    r.diverged = results[i].diverged;
    r.trial_fitnesses = results[i].trial_fitnesses;
    r.descriptor = results[i].descriptor;
    report.individuals.push_back(std::move(r));
  }
  for (std::size_t i = archive_before; i < archive_.size(); ++i) report.archived.push_back(archive_.entries()[i]);

  population_->epoch(scores, evolution_rng_);

  auto& s = report.stats;
  s.generation = gen;
  s.best_fitness = fitness[best];
  s.mean_fitness = std::accumulate(fitness.begin(), fitness.end(), 0.0) / static_cast<double>(n);
  s.species_count = population_->last_speciation().size();
  s.archive_size = archive_.size();
  s.mc = policy == selection::Policy::kPmcns ? pmcns_.mc : 0.0;
  s.champion_id = report.champion.id;
  s.champion_complexity = report.champion.complexity();
  return report;
}

}  // namespace swarmnov::experiment
