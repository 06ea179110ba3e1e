#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "report.hpp"
#include "scenario_file.hpp"

namespace twobc::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;  ///< bad flags, missing parameters, other errors
inline constexpr int kParse = 2;
inline constexpr int kImpossibleBoundary = 3;
inline constexpr int kNoConsistentHistories = 4;
inline constexpr int kValidation = 5;
}  // namespace exit_code

/// A command lacks a parameter or got an unusable one.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string command;
  std::optional<std::string> scenario;
  Format format = Format::table;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<std::vector<double>> mu;
  std::optional<std::size_t> time;
};

inline constexpr std::uint64_t kDefaultSeed = 0;
inline constexpr std::size_t kDefaultRuns = 100000;

/// Runs one command. Flags take precedence over scenario parameters.
Report run_command(const Options& options, const Scenario* scenario);

/// Full command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; returns the exit code.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace twobc::cli
