#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toric_tool {

enum ExitCode : int { kOk = 0, kVerifiedFalse = 1, kPrecondition = 2, kNumeric = 3 };

struct Options {
  std::string command;
  std::vector<std::string> arguments;  ///< argv after the program name

  std::string input;
  std::string family;
  std::string out;
  std::string config;
  std::string map;    ///< transform: JSON matrix text or a file holding it
  std::string point;  ///< potential-eval: JSON array
  std::optional<int> n, k, m, p, q;
  std::optional<std::size_t> grid;
  std::optional<double> tol;
  std::optional<double> target;
  std::optional<std::uint64_t> seed;
  bool lift = false;  ///< wrap the potential in its Boothby-Wang lift
};

/// Runs one subcommand and returns its exit code. Library exceptions
/// propagate to the caller, which maps them to exit codes.
int run_command(const Options& opts);

}  // namespace toric_tool
