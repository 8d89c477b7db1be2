#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace cotr::cli {

inline constexpr const char* kSchema = "cotr-report/1";

struct Outcome {
  int exit_code = 0;
  std::vector<nlohmann::json> reports;
  std::string text;  // human-readable output (and export text)
};

// Runs one command line (program name excluded).
Outcome execute(const std::vector<std::string>& args);

// execute, then writes NDJSON (--json) or text to out and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The report with its timing field removed, serialized.
std::string without_timing(const nlohmann::json& report);

}  // namespace cotr::cli
