#include "swarmnov/novelty.hpp"

#include <algorithm>
#include <cmath>

#include "swarmnov/errors.hpp"
#include "swarmnov/io.hpp"

namespace swarmnov::novelty {

void NoveltyConfig::validate() const {
  if (k < 1) throw ConfigError("novelty k must be at least 1");
  if (!(archive_probability >= 0.0 && archive_probability <= 1.0)) {
    throw ConfigError("archive_probability must lie in [0, 1]");
  }
}

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("descriptor length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

namespace {

double mean_of_smallest(std::vector<double>& dists, std::size_t k) {
  if (dists.empty()) return 0.0;
  const std::size_t take = std::min(k, dists.size());
  std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(take - 1), dists.end());
  // Sum in ascending order so the result does not depend on partition order.
  std::sort(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(take));
  double sum = 0.0;
  for (std::size_t i = 0; i < take; ++i) sum += dists[i];
  return sum / static_cast<double>(take);
}

}  // namespace

double sparseness(std::span<const double> x, std::span<const Descriptor> references, std::size_t k) {
  if (k < 1) throw ConfigError("novelty k must be at least 1");
  std::vector<double> dists;
  dists.reserve(references.size());
  for (const auto& r : references) dists.push_back(distance(x, r));
  return mean_of_smallest(dists, k);
}

void Archive::add(std::size_t generation, Descriptor d) {
  if (!descriptors_.empty() && d.size() != descriptors_.front().size()) {
    throw ConfigError("archive descriptor length mismatch");
  }
  descriptors_.push_back(d);
  entries_.push_back({generation, std::move(d)});
}

std::string Archive::to_csv() const {
  std::string out;
  for (const auto& e : entries_) {
    out += std::to_string(e.generation);
    for (double v : e.descriptor) {
      out += ',';
      out += io::format_double(v);
    }
    out += '\n';
  }
  return out;
}

Archive Archive::from_csv(const std::string& text) {
  Archive archive;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    auto fields = io::split(line, ',');
    Descriptor d;
    for (std::size_t i = 1; i < fields.size(); ++i) d.push_back(io::parse_double(fields[i]));
    archive.add(static_cast<std::size_t>(io::parse_int(fields[0])), std::move(d));
  }
  return archive;
}

std::vector<double> score_generation(std::span<const Descriptor> population, Archive& archive,
                                     const NoveltyConfig& config, Rng& rng, std::size_t generation) {
  config.validate();
  for (const auto& d : population) {
    if (d.size() != population.front().size()) throw ConfigError("population descriptors differ in length");
  }
  const auto& stored = archive.descriptors();
  std::vector<double> scores(population.size(), 0.0);
  std::vector<double> dists;
  dists.reserve(population.size() + stored.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    dists.clear();
    for (std::size_t j = 0; j < population.size(); ++j) {
      if (j != i) dists.push_back(distance(population[i], population[j]));
    }
    for (const auto& a : stored) dists.push_back(distance(population[i], a));
    scores[i] = mean_of_smallest(dists, config.k);
  }
  for (const auto& d : population) {
    const bool insert = bernoulli(rng, config.archive_probability);
    if (insert && (config.archive_limit == 0 || archive.size() < config.archive_limit)) archive.add(generation, d);
  }
  return scores;
}

}  // namespace swarmnov::novelty
