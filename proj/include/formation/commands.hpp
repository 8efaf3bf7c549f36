#pragma once

#include "formation/psd_lift.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace formation::cli {

// Process exit codes; the only machine-readable status channel.
enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kParseError = 2,
  kInvalidAgent = 3,
  kNotConverged = 4,
  kIoError = 5,
  kDiverged = 6,
};

// Prints Z*, R* = A(Z*), the spectral gap and the uniqueness flag for the
// one-shot attitude problem of agent `agent` (1-based) at its initial state.
int solve_attitude(const std::string& scenario_path, int agent, std::ostream& out,
                   std::ostream& err);

struct SimulateOverrides {
  std::optional<long> max_steps;
  std::optional<double> eps;
};

// Writes trajectory.csv, potential.csv, controls.csv, formation.svg and
// potential.svg into out_dir (created if missing).
int simulate(const std::string& scenario_path, const std::string& out_dir,
             const SimulateOverrides& overrides, std::ostream& out, std::ostream& err);

enum class VerifyMode { Fast, Full };

inline long verify_trials(VerifyMode mode) { return mode == VerifyMode::Fast ? 100 : 100000; }

int verify(VerifyMode mode, std::ostream& out, std::ostream& err,
           const LiftGenerators& gen = default_generators(), bool color = false);

}  // namespace formation::cli
