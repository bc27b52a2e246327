#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wsan/engine.hpp"

namespace wsan::cli {

enum ExitCode : int {
  kExitOk = 0,          // success, every fire contained
  kExitValidation = 1,  // bad arguments or scenario
  kExitRuntime = 2,
  kExitUncontained = 3,  // run completed, some fire still burning
};

int cmd_plan(int n, double r, std::ostream& out, std::ostream& err);

int cmd_validate(const std::vector<std::filesystem::path>& scenarios, std::ostream& out, std::ostream& err);

struct RunOptions {
  std::vector<std::filesystem::path> scenarios;
  // With several scenarios these name directories; files are written as
  // <stem>.trace.jsonl and <stem>.metrics.csv inside them.
  std::optional<std::filesystem::path> trace;
  std::optional<std::filesystem::path> metrics;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

// Returns the worst exit code over all scenarios. Nothing is written for a
// scenario that fails validation.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

// Writes to a sibling temporary file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

void print_summary(const Scenario& s, const engine::Metrics& m, std::ostream& out);

}  // namespace wsan::cli
