#include "swarmnov/experiment/persistence.hpp"

#include <cstdio>
#include <sstream>

#include "swarmnov/errors.hpp"
#include "swarmnov/io.hpp"
#include "swarmnov/neat/genome.hpp"

namespace swarmnov::experiment {

namespace {

std::string numbered(const char* prefix, std::size_t generation, const char* suffix) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%04zu%s", prefix, generation, suffix);
  return buf;
}

std::vector<std::string_view> lines_of(const std::string& text) {
  std::vector<std::string_view> out;
  for (auto line : io::split(text, '\n')) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}
std::vector<std::string_view> lines_of(std::string&&) = delete;

std::size_t to_size(std::string_view s) {
  const long long v = io::parse_int(s);
  if (v < 0) throw RuntimeFailure("negative count in record: " + std::string(s));
  return static_cast<std::size_t>(v);
}

}  // namespace

fs::path RunPaths::evaluations(std::size_t generation) const {
  return evaluations_dir() / numbered("gen_", generation, ".csv");
}

fs::path RunPaths::champion(std::size_t generation) const {
  return champions_dir() / numbered("gen_", generation, ".genome");
}

std::string generations_header() {
  return "generation,best_fitness,mean_fitness,species_count,archive_size,mc,champion_id,champion_complexity\n";
}

std::string generation_row(const analysis::GenerationStats& s) {
  std::ostringstream out;
  out << s.generation << ',' << io::format_double(s.best_fitness) << ',' << io::format_double(s.mean_fitness) << ','
      << s.species_count << ',' << s.archive_size << ',' << io::format_double(s.mc) << ',' << s.champion_id << ','
      << s.champion_complexity << '\n';
  return out.str();
}

analysis::GenerationStats parse_generation_row(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  const auto f = io::split(line, ',');
  if (f.size() != 8) throw RuntimeFailure("malformed generations row: " + std::string(line));
  analysis::GenerationStats s;
  s.generation = to_size(f[0]);
  s.best_fitness = io::parse_double(f[1]);
  s.mean_fitness = io::parse_double(f[2]);
  s.species_count = to_size(f[3]);
  s.archive_size = to_size(f[4]);
  s.mc = io::parse_double(f[5]);
  s.champion_id = to_size(f[6]);
  s.champion_complexity = to_size(f[7]);
  return s;
}

std::string evaluations_csv(const std::vector<analysis::IndividualRecord>& rows, std::size_t trials,
                            std::size_t descriptor_length) {
  std::string out = "generation,genome_id,complexity,fitness,score,diverged";
  for (std::size_t t = 0; t < trials; ++t) out += ",trial_" + std::to_string(t);
  for (std::size_t d = 0; d < descriptor_length; ++d) out += ",d_" + std::to_string(d);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.generation) + ',' + std::to_string(r.id) + ',' + std::to_string(r.complexity) + ',' +
           io::format_double(r.fitness) + ',' + io::format_double(r.score) + ',' + (r.diverged ? "1" : "0");
    for (double v : r.trial_fitnesses) out += ',' + io::format_double(v);
    for (double v : r.descriptor) out += ',' + io::format_double(v);
    out += '\n';
  }
  return out;
}

std::vector<analysis::IndividualRecord> parse_evaluations_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw RuntimeFailure("empty evaluations file");
  const auto header = io::split(lines[0], ',');
  std::size_t trials = 0;
  std::size_t dims = 0;
  for (auto h : header) {
    if (h.starts_with("trial_")) ++trials;
    if (h.starts_with("d_")) ++dims;
  }
  if (header.size() != 6 + trials + dims) throw RuntimeFailure("malformed evaluations header");
  std::vector<analysis::IndividualRecord> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = io::split(lines[i], ',');
    if (f.size() != header.size()) throw RuntimeFailure("malformed evaluations row " + std::to_string(i));
    analysis::IndividualRecord r;
    r.generation = to_size(f[0]);
    r.id = to_size(f[1]);
    r.complexity = to_size(f[2]);
    r.fitness = io::parse_double(f[3]);
    r.score = io::parse_double(f[4]);
    r.diverged = f[5] == "1";
    for (std::size_t t = 0; t < trials; ++t) r.trial_fitnesses.push_back(io::parse_double(f[6 + t]));
    for (std::size_t d = 0; d < dims; ++d) r.descriptor.push_back(io::parse_double(f[6 + trials + d]));
    rows.push_back(std::move(r));
  }
  return rows;
}

analysis::RunRecord load_run(const RunPaths& paths) {
  if (!fs::exists(paths.generations())) throw RunIncomplete(paths.root.string() + " has no completed generations");
  analysis::RunRecord record;
  const auto text = io::read_file(paths.generations());
  const auto lines = lines_of(text);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto s = parse_generation_row(lines[i]);
    if (s.generation != record.generations.size()) throw RuntimeFailure("generations.csv is not contiguous");
    record.generations.push_back(s);
  }
  if (record.generations.empty()) throw RunIncomplete(paths.root.string() + " has no completed generations");
  for (std::size_t g = 0; g < record.generations.size(); ++g) {
    if (!fs::exists(paths.evaluations(g)) || !fs::exists(paths.champion(g))) {
      throw RunIncomplete(paths.root.string() + " is missing records for generation " + std::to_string(g));
    }
    auto rows = parse_evaluations_csv(io::read_file(paths.evaluations(g)));
    for (auto& r : rows) record.individuals.push_back(std::move(r));
    record.champions.push_back(neat::genome_from_text(io::read_file(paths.champion(g))));
  }
  if (fs::exists(paths.archive())) {
    const auto archive = novelty::Archive::from_csv(io::read_file(paths.archive()));
    for (const auto& e : archive.entries()) {
      if (e.generation < record.generations.size()) record.archive.add(e.generation, e.descriptor);
    }
  }
  return record;
}

void truncate_run(const RunPaths& paths, std::size_t keep) {
  if (fs::exists(paths.generations())) {
    const auto text = io::read_file(paths.generations());
  const auto lines = lines_of(text);
    std::string out = generations_header();
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (parse_generation_row(lines[i]).generation < keep) {
        out += lines[i];
        out += '\n';
      }
    }
    io::write_atomic(paths.generations(), out);
  }
  auto prune = [&](const fs::path& dir) {
    if (!fs::exists(dir)) return;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const auto name = entry.path().filename().string();
      if (!name.starts_with("gen_")) continue;
      const auto digits = name.substr(4, name.find('.') - 4);
      if (static_cast<std::size_t>(io::parse_int(digits)) >= keep) fs::remove(entry.path());
    }
  };
  prune(paths.evaluations_dir());
  prune(paths.champions_dir());
  if (fs::exists(paths.archive())) {
    const auto archive = novelty::Archive::from_csv(io::read_file(paths.archive()));
    novelty::Archive kept;
    for (const auto& e : archive.entries()) {
      if (e.generation < keep) kept.add(e.generation, e.descriptor);
    }
    io::write_atomic(paths.archive(), kept.to_csv());
  }
  fs::remove(paths.posteval());
}

}  // namespace swarmnov::experiment
