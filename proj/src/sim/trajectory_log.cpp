#include "swarmnov/sim/trajectory_log.hpp"

#include <zlib.h>

#include <array>

#include "swarmnov/errors.hpp"
#include "swarmnov/io.hpp"

namespace swarmnov::sim {

TrajectoryLog::TrajectoryLog(const std::filesystem::path& path) : path_(path), tmp_path_(path) {
  tmp_path_ += ".tmp";
  // gzopen writes a zero mtime, so identical rows give identical bytes.
  file_ = gzopen(tmp_path_.string().c_str(), "wb6");
  if (file_ == nullptr) throw RuntimeFailure("cannot open trajectory log " + tmp_path_.string());
  const std::string header = "tick,robot,x,y,heading,energy,alive\n";
  gzwrite(static_cast<gzFile>(file_), header.data(), static_cast<unsigned>(header.size()));
}

TrajectoryLog::~TrajectoryLog() {
  try {
    close();
  } catch (...) {
  }
}

void TrajectoryLog::record(const World& world) {
  if (file_ == nullptr) throw RuntimeFailure("trajectory log already closed");
  std::string rows;
  for (std::size_t i = 0; i < world.robots.size(); ++i) {
    const auto& r = world.robots[i];
    rows += std::to_string(world.tick) + "," + std::to_string(i) + "," + io::format_double(r.position.x) + "," +
            io::format_double(r.position.y) + "," + io::format_double(r.heading) + "," +
            io::format_double(r.energy) + "," + (r.alive ? "1" : "0") + "\n";
  }
  gzwrite(static_cast<gzFile>(file_), rows.data(), static_cast<unsigned>(rows.size()));
}

void TrajectoryLog::close() {
  if (file_ == nullptr) return;
  const int rc = gzclose(static_cast<gzFile>(file_));
  file_ = nullptr;
  if (rc != Z_OK) throw RuntimeFailure("error closing trajectory log " + path_.string());
  std::filesystem::rename(tmp_path_, path_);
}

std::string read_gzip(const std::filesystem::path& path) {
  gzFile f = gzopen(path.string().c_str(), "rb");
  if (f == nullptr) throw RuntimeFailure("cannot open " + path.string());
  std::string out;
  std::array<char, 1 << 16> buf{};
  int n;
  while ((n = gzread(f, buf.data(), static_cast<unsigned>(buf.size()))) > 0) out.append(buf.data(), static_cast<std::size_t>(n));
  gzclose(f);
  if (n < 0) throw RuntimeFailure("corrupt gzip stream " + path.string());
  return out;
}

}  // namespace swarmnov::sim
