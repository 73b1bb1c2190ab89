#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qcorr::cli {

enum class Command { Classify, Discord, Deficit, Witness, Evolve, Msf, DemoQutrit, DemoAd, Verify };
enum class Format { Json, Csv };

struct TimeGrid {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
};

struct RunConfig {
  Command command = Command::Classify;
  std::optional<std::string> channel_path;
  std::optional<std::string> state_path;
  std::optional<std::string> gamma_path;
  std::optional<std::string> hamiltonian_path;
  std::optional<std::vector<std::size_t>> dims;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::optional<int> grid;
  std::optional<std::string> output;  // stdout when unset
  std::optional<Format> format;       // json, except csv for evolve
  std::optional<TimeGrid> times;
  bool no_psd_check = false;
  double e0 = 0.70710678118654752;
  double e1 = 0.70710678118654752;
  double p = 0.5;
  std::size_t states = 50;
};

enum ExitCode : int { kSuccess = 0, kValidationFailure = 2, kNotConverged = 3 };

/// "t0:t1:steps" -> TimeGrid; throws std::invalid_argument on malformed input.
TimeGrid parse_time_grid(const std::string& text);

/// Runs one command and writes its report. Validation problems (bad files,
/// schemas, dimensions, invalid states or channels) are reported on `err`
/// and yield kValidationFailure; a report with converged=false anywhere yields
/// kNotConverged after the report is written.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (subcommand first) and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
