#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "swarmnov/sim/world.hpp"

namespace swarmnov::sim {

// gzip-compressed per-tick CSV: tick,robot,x,y,heading,energy,alive
class TrajectoryLog {
 public:
  explicit TrajectoryLog(const std::filesystem::path& path);
  ~TrajectoryLog();
  TrajectoryLog(const TrajectoryLog&) = delete;
  TrajectoryLog& operator=(const TrajectoryLog&) = delete;

  void record(const World& world);
  void close();

 private:
  void* file_ = nullptr;
  std::filesystem::path path_;
  std::filesystem::path tmp_path_;
};

// Reads a (possibly gzip-compressed) file fully into memory.
std::string read_gzip(const std::filesystem::path& path);

}  // namespace swarmnov::sim
