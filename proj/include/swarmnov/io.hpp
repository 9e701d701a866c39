#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace swarmnov::io {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

std::vector<std::string_view> split(std::string_view line, char sep);

// Writes to a sibling temporary and renames over the target.
void write_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace swarmnov::io
