#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bimot {

// Configuration document violations; message carries the offending field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// The rate graph leaves some sublevels disconnected: population would pile up
// in (or never leave) the named sublevels and the stationary state is not an
// honest answer.
class DarkManifoldError : public std::runtime_error {
 public:
  DarkManifoldError(const std::string& msg, std::vector<int> trapped)
      : std::runtime_error(msg), trapped_sublevels(std::move(trapped)) {}
  std::vector<int> trapped_sublevels;
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// CLI exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitPhysicsDiagnostic = 3;
inline constexpr int kExitNumericalFailure = 4;

}  // namespace bimot
