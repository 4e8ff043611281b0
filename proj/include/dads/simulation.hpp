#pragma once

// Closed- and open-loop simulation of a plant under the DADS law, a linear
// feedback, or no control at all.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dads/controller.hpp"
#include "dads/plants.hpp"
#include "dads/signals.hpp"

namespace dads {

struct InitialCondition {
  double w = 0.0;                                    // planar
  Profile field = Profile::polynomial({0.0});        // w, or v for the wave plant
  Profile velocity = Profile::polynomial({0.0});     // phi = v_t (wave only)
  double y = 0.0;
  double z = 0.0;
  // Transport with a prescribed y: start from the delay history
  // w0(x) = y(-x / c) instead of `field`.
  bool delay_history = false;
};

struct Scenario {
  Plant plant;
  PhiSpec phi;
  InitialCondition init;
  std::size_t intervals = 100;
  double horizon = 20.0;
  double dt = 0.0;  // 0 selects stable_dt
  std::size_t stride = 1;
  std::size_t snapshot_stride = 0;  // 0 disables snapshots
  double blowup = 1e12;
  double z_cap = 700.0;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> state;  // flat plant state followed by z
};

struct Trajectory {
  PlantKind kind = PlantKind::kPlanar;
  std::size_t intervals = 0;
  double dt = 0.0;
  std::size_t stride = 1;
  std::vector<double> t, y, z, u, w_norm, phi, v;
  std::vector<Snapshot> snapshots;
  std::string fingerprint;
  bool aborted = false;
  std::string abort_reason;

  std::size_t size() const { return t.size(); }
};

/// b(0) (kappa + e^{z0})^7 (P1 + P2 y0^2 + P3 y0^6): the linearized feedback
/// gain at the initial condition.
double effective_gain(const Scenario& s, const DadsParams& p, const GainProfile& g);

/// Explicit-step limit for the scenario's plant, capped by s.dt when set.
/// heat 0.4 h^2 / (2 p), transport and wave 0.9 h / c, planar 1e-3; every
/// case is further capped by 0.1 / (1 + |k_eff|) for the feedback mode.
double stable_dt(const Scenario& s, double k_eff = 0.0);

/// Plant state at t = 0 built from the scenario's initial condition.
std::vector<double> initial_state(const DiscretePlant& dp, const InitialCondition& init);

/// DADS closed loop. The step count is ceil(T / dt) with dt shrunk to divide T.
Trajectory simulate(const Scenario& s, const DadsParams& p, const GainProfile& g);

/// Closed loop under u = -k y.
Trajectory simulate_linear(const Scenario& s, double k);

/// u = 0. With `prescribed_y`, y(t) follows the given signal instead of its
/// own dynamics.
Trajectory simulate_open_loop(const Scenario& s, const std::optional<Signal>& prescribed_y = std::nullopt);

/// Canonical one-line description used for fingerprints.
std::string describe(const Scenario& s);

}  // namespace dads
