#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "nilshift/symbolic/groebner.hpp"

namespace nilshift::app {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kMathFailure = 1, kConfigError = 2, kBudgetExhausted = 3 };

struct RunConfig {
  std::string command;  // algebra | shift | peterson | lagrangian
  std::string space = "point";
  std::string fan;       // fan file; overrides space
  std::string group = "T";
  int rank = -1;         // torus rank acting on a point
  int widen = 0;
  long budget = kDefaultGroebnerBudget;
  long solve_budget = 2000000;
  std::uint64_t seed = 1;
  int samples = 100;     // associativity triples; spherical pairs use half
  int max_word = 3;
  int radius = 2;
  std::string datum_in;
  std::string datum_out;
  std::string fault;
  std::string out;
};

/// Configuration or IO problem; reported without a partial report.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  int exit_code = kPass;
  Json report;
};

/// Sign and normalization conventions, placed first in every report.
Json conventions();

Outcome cmd_algebra(const RunConfig& c);
Outcome cmd_shift(const RunConfig& c);
Outcome cmd_peterson(const RunConfig& c);
Outcome cmd_lagrangian(const RunConfig& c);

/// Dispatches on c.command. Math errors and budget exhaustion become reports
/// with an "error" block; ConfigError propagates.
Outcome run(const RunConfig& c);

/// Compares two report files; exit 0 iff byte-identical.
Outcome report_diff(const std::string& a, const std::string& b);

/// Canonical report text (two-space indent, trailing newline).
std::string render(const Json& report);
/// Writes via a temporary file and rename.
void write_atomic(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace nilshift::app
