#pragma once

// Scenario configuration files.
//
// Line-oriented sections of `key = value` pairs; `#` starts a comment.
//
//   [plant]       kind, p_bar | c | sigma
//   [coupling]    kind, and per kind: theta_product | kernel, k_gain, phi_weight
//   [signals]     theta1, theta11, theta12, theta2, b, d, delta
//   [initial]     w, field (profile or `history`), velocity, y, z, analytic
//   [controller]  epsilon, gamma, kappa, a, c_decay, gains, safety_factor, phi
//   [numerics]    mode, intervals, dt, horizon, stride, snapshot_stride,
//                 prescribed_y, linear_k, blowup, z_cap
//   [checks]      transient, z_window, tails, dissipation, dichotomy,
//                 tail_factor, tail_window, settle_tol, monitor_tol,
//                 oracle, oracle_tol, delay_oracle, delay_tol
//
// Every error is a ConfigError carrying the offending line when one exists.

#include <optional>
#include <string>
#include <string_view>

#include "dads/certify.hpp"
#include "dads/controller.hpp"
#include "dads/simulation.hpp"

namespace dads {

enum class RunMode { kClosedLoop, kOpenLoop, kLinear };

std::string_view to_string(RunMode m);

struct ScenarioConfig {
  Scenario scenario;
  RunMode mode = RunMode::kClosedLoop;
  DadsParams params;
  PhiSpec phi;
  GainProfile gains;
  std::string gain_mode = "synthesized";
  double safety_factor = 1.0;
  std::optional<Signal> prescribed_y;
  double linear_k = 0.0;

  CertOptions checks;
  bool oracle = false;
  double oracle_tol = 1e-3;
  bool delay_oracle = false;
  double delay_tol = 0.0;  // 0 selects the grid spacing
};

/// Parses and validates a configuration. Throws ConfigError.
ScenarioConfig parse_config(std::string_view text);

/// Reads `path` and parses it. Throws ConfigError (also when unreadable).
ScenarioConfig load_config(const std::string& path);

}  // namespace dads
