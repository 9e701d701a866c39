#pragma once

#include <stdexcept>
#include <string>

namespace swarmnov {

// Invalid configuration or precondition violation supplied by the caller.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure while executing or reading back a run.
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested artifacts do not exist yet.
class RunIncomplete : public RuntimeFailure {
 public:
  explicit RunIncomplete(const std::string& what)
      : RuntimeFailure("run incomplete: " + what) {}
};

}  // namespace swarmnov
