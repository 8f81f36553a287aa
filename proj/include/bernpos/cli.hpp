#pragma once

// Batch front end.  Subcommands: moments, lemma-check, approx, verify,
// positivity, density-demo.  Exit codes: 0 success, 1 I/O failure,
// 2 usage or precondition error, 3 verification failure.

#include "bernpos/combinatorics.hpp"
#include "bernpos/oracle.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bernpos::cli {

enum ExitCode : int { ok = 0, io_error = 1, usage_error = 2, verification_failed = 3 };

/// Parsed flags / config file.  Config files hold `key=value` lines; `#`
/// starts a comment.  Keys match the long flag names with dashes replaced by
/// underscores (e.g. `s_max=4`, `n_max=200`).
struct RunConfig {
  std::string command;
  std::string func;
  double scale = 1.0;
  double shift = 0.0;
  std::optional<double> c;
  std::optional<double> m;
  int d = 1;
  std::string n;  // "10", "10:12" (per axis) or a comma list of those
  int r = 0;
  int s_max = 8;
  int n_max = 200;
  int grid = 0;  // 0 selects the command default
  std::string bound;
  std::optional<double> constant;
  std::string out;
  std::string profile;
  std::string backend = "auto";  // auto: exact when the oracle supports it
  std::optional<std::uint64_t> seed;

  /// Canonical `key=value` text; parse(to_text()) reproduces the config.
  std::string to_text() const;
  static RunConfig parse(std::string_view text);

  bool operator==(const RunConfig&) const = default;
};

/// Thrown for bad flags, unknown functions and unmet preconditions (exit 2).
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// "8,16,32" -> three uniform degree vectors of dimension d; "8:16" -> (8,16).
std::vector<DegreeVector> parse_degrees(const std::string& spec, int d);

/// Registry oracle with the config's parameters and scale/shift applied.
FunctionOracle make_oracle(const RunConfig& cfg);

/// Writes via a temporary file and rename.  Throws std::runtime_error on failure.
void write_atomic(const std::string& path, std::string_view content);

int cmd_moments(const RunConfig& cfg, std::ostream& out);
int cmd_lemma_check(const RunConfig& cfg, const std::vector<std::pair<int, double>>& overrides, std::ostream& out);
int cmd_approx(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_positivity(const RunConfig& cfg, std::ostream& out);
int cmd_density_demo(const RunConfig& cfg, std::ostream& out);

/// Full entry point: parses argv, dispatches, maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bernpos::cli
