#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "bimot/config.hpp"

namespace bimot {

struct RunOverrides {
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::string> mode;
};

// Executes a parsed config document: writes the CSV artifact(s), returns a
// CLI exit code. Failures also emit a machine-readable JSON error record to
// `err`.
int run_config(const nlohmann::json& doc, const RunOverrides& overrides,
               std::ostream& log, std::ostream& err);

// Single-run execution used by run_config and by tests; throws on failure.
void execute_run(const RunConfig& config, std::ostream& log);

}  // namespace bimot
