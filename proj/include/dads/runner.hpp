#pragma once

// Executes a parsed configuration: simulation followed by certification.

#include <optional>

#include "dads/certify.hpp"
#include "dads/config.hpp"

namespace dads {

struct RunOverrides {
  std::optional<double> dt;
  std::optional<double> horizon;
};

struct RunResult {
  Trajectory trajectory;
  CertReport report;  // closed-loop checks plus any oracle checks
  double effective_dt = 0.0;

  bool passed() const { return !trajectory.aborted && report.all_passed(); }
};

/// Applies `ov` to the configured scenario, simulates it in the configured
/// mode and runs every enabled check.
RunResult run_config(const ScenarioConfig& cfg, const RunOverrides& ov = {});

}  // namespace dads
