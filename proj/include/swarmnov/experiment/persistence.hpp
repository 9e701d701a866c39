#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "swarmnov/analysis/records.hpp"
#include "swarmnov/experiment/config.hpp"

namespace swarmnov::experiment {

namespace fs = std::filesystem;

// Layout of one run directory.
struct RunPaths {
  fs::path root;

  fs::path generations() const { return root / "generations.csv"; }
  fs::path evaluations_dir() const { return root / "evaluations"; }
  fs::path evaluations(std::size_t generation) const;
  fs::path champions_dir() const { return root / "champions"; }
  fs::path champion(std::size_t generation) const;
  fs::path archive() const { return root / "archive.csv"; }
  fs::path checkpoint() const { return root / "checkpoint.json"; }
  fs::path posteval() const { return root / "posteval.csv"; }
};

std::string generations_header();
std::string generation_row(const analysis::GenerationStats& s);
analysis::GenerationStats parse_generation_row(std::string_view line);

std::string evaluations_csv(const std::vector<analysis::IndividualRecord>& rows, std::size_t trials,
                            std::size_t descriptor_length);
std::vector<analysis::IndividualRecord> parse_evaluations_csv(const std::string& text);

// Loads every completed generation of a run. Throws RunIncomplete when the
// run has none, RuntimeFailure on unreadable files.
analysis::RunRecord load_run(const RunPaths& paths);

// Drops rows and files for generations >= keep.
void truncate_run(const RunPaths& paths, std::size_t keep);

}  // namespace swarmnov::experiment
