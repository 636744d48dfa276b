#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "scenario.hpp"

namespace rch::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,       // drift, deviation, bracket axiom or INCONSISTENT sample
  kConfigError = 2,
  kGateRejected = 3,      // section failed the closedness gate
  kMembership = 4,        // section image off the momentum level
  kNumericalFailure = 5,  // blow-up or singular transport
};

struct Options {
  std::filesystem::path out = "out";
  std::uint64_t seed = 0;
  bool quiet = false;
};

// Each command writes its files under options.out, prints a summary to
// `log` unless quiet, and returns the exit code.
int cmd_simulate(const ScenarioConfig& c, const Options& options, std::ostream& log);
int cmd_hj_check(const ScenarioConfig& c, const Options& options, std::ostream& log);
int cmd_equivalence_demo(const ScenarioConfig& c, const Options& options, std::ostream& log);
int cmd_bracket_verify(const ScenarioConfig& c, const Options& options, std::ostream& log);

}  // namespace rch::cli
