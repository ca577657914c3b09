#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dyadic::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

enum class Subcommand { Analyze, Bound, Verify, Scan, Concavity, Search };

struct RunConfig {
  Subcommand subcommand = Subcommand::Analyze;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::optional<std::string> weight_output_path;  // search: best weight file
  std::string format;                             // "json" or "csv"; empty = subcommand default

  std::optional<double> p, q, q_muck, delta, bigQ, x1, x2;
  std::optional<int> nx, ny, depth, iterations;
  std::optional<std::int64_t> trials;
  std::uint64_t seed = 0;
};

// Dispatches one subcommand. Structured output goes to `out` and, when
// output_path is set, to that file; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv with CLI11 and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dyadic::cli
