#pragma once

// Plant models: the planar ODE and the heat, transport and damped-wave
// interconnections, discretized in space by the method of lines.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dads/controller.hpp"
#include "dads/field.hpp"
#include "dads/signals.hpp"

namespace dads {

enum class PlantKind { kPlanar, kHeat, kTransport, kWave };

std::string_view to_string(PlantKind kind);
PlantKind parse_plant_kind(std::string_view text);

/// Coupling functions of the PDE cases. Every built-in is linear in y:
///   K(x, y) = kernel(x) y           (K1 for transport)
///   K2(y)   = boundary_gain * y     (transport inflow only)
///   L(w, y) = int_0^1 load(x) w(x) dx + phi_weight * phi(y) * y
/// where w is the PDE state (v for the wave case).
class Coupling {
 public:
  enum class Kind {
    kZero,
    kBoundedIntegral,
    kHeatUnstable,
    kTransportUnstable,
    kTransportDelay,
    kWaveUnstable,
  };

  Coupling() = default;

  static Coupling zero();
  /// L(w, y) = int k(x) w(x) dx + phi_weight phi(y) y, K(x, y) = k_gain y,
  /// K2(y) = k_gain y. Requires ||k|| <= 1, |k_gain| <= 1, |phi_weight| <= 1.
  static Coupling bounded_integral(Profile load_kernel, double k_gain, double phi_weight);
  /// K(x, y) = (x^2 - x - 2 p) / (1 + 2 p) y, L(w, y) = -int w.
  static Coupling heat_unstable(double p_bar);
  /// K1(x, y) = 2 (x + c) / theta_product y, K2 = 0, L(w, y) = int w.
  static Coupling transport_unstable(double c, double theta_product);
  /// K1 = 0, K2(y) = y, L(w, y) = int w.
  static Coupling transport_delay();
  /// K(x, y) = sin(pi x) y, L(v, phi, y) = int sin(pi x) v.
  static Coupling wave_unstable();

  Kind kind() const { return kind_; }
  std::string name() const;
  bool supports(PlantKind plant) const;

  double kernel(double x) const { return kernel_.eval(x); }
  double load_weight(double x) const { return load_.eval(x); }
  double boundary_gain() const { return boundary_gain_; }
  double phi_weight() const { return phi_weight_; }

  double K(double x, double y) const { return kernel(x) * y; }
  double K2(double y) const { return boundary_gain_ * y; }
  /// L on node values with spacing h.
  double L(std::span<const double> w, double h, double y, const PhiSpec& phi) const;

 private:
  Kind kind_ = Kind::kZero;
  Profile kernel_ = Profile::polynomial({0.0});
  Profile load_ = Profile::polynomial({0.0});
  double boundary_gain_ = 0.0;
  double phi_weight_ = 0.0;
};

struct PlanarPlant {
  double p_bar = 1.0;
  Signal theta1;
  Signal theta2;
  Signal b = Signal::floor_clamp(Signal::constant(1.0), 1.0);
  Signal d;
};

struct HeatPlant {
  double p_bar = 1.0;
  Coupling coupling;
  SpaceTimeSignal theta1;
  SpaceTimeSignal delta{Signal::constant(0.0), Profile{}};
  Signal theta2;
  Signal b = Signal::floor_clamp(Signal::constant(1.0), 1.0);
  Signal d;
};

struct TransportPlant {
  double c = 1.0;
  Coupling coupling;
  SpaceTimeSignal theta11;
  Signal theta12;
  SpaceTimeSignal delta{Signal::constant(0.0), Profile{}};
  Signal theta2;
  Signal b = Signal::floor_clamp(Signal::constant(1.0), 1.0);
  Signal d;
};

struct WavePlant {
  double c = 1.0;
  double sigma = 1.0;
  Coupling coupling;
  SpaceTimeSignal theta1;
  SpaceTimeSignal delta{Signal::constant(0.0), Profile{}};
  Signal theta2;
  Signal b = Signal::floor_clamp(Signal::constant(1.0), 1.0);
  Signal d;
};

using Plant = std::variant<PlanarPlant, HeatPlant, TransportPlant, WavePlant>;

PlantKind kind_of(const Plant& plant);

/// Throws ConfigError on p_bar/c/sigma <= 0, b without a positive floor,
/// or a coupling the plant kind cannot host.
void validate_plant(const Plant& plant);

const Signal& b_signal(const Plant& plant);
const Signal& d_signal(const Plant& plant);

/// Method-of-lines form of a plant on N intervals. The flat state holds the
/// PDE node values (w, or v followed by phi for the wave case) and then y.
/// Not thread-safe: evaluation uses internal scratch buffers.
class DiscretePlant {
 public:
  DiscretePlant(Plant plant, PhiSpec phi, std::size_t intervals);

  PlantKind kind() const { return kind_; }
  const Plant& plant() const { return plant_; }
  const PhiSpec& phi() const { return phi_; }
  std::size_t intervals() const { return intervals_; }
  double spacing() const { return h_; }
  std::size_t nodes() const { return intervals_ + 1; }
  std::size_t state_size() const;
  std::size_t y_index() const { return state_size() - 1; }

  /// Time derivative of the plant state for a given control value.
  void derivative(double t, std::span<const double> x, double u, std::span<double> dxdt);

  /// Re-imposes algebraic boundary conditions (transport inflow node).
  void apply_constraints(double t, std::span<double> x) const;

  /// ||w|| in the plant's state norm (|w|, L2, or sqrt(||v_x||^2 + ||phi||^2)).
  double state_norm(std::span<const double> x) const;

  double b(double t) const { return b_signal(plant_).eval(t); }

  /// Zero state of the right size.
  std::vector<double> zero_state() const { return std::vector<double>(state_size(), 0.0); }

 private:
  double inflow_value(double t, double y) const;

  Plant plant_;
  PlantKind kind_;
  PhiSpec phi_;
  std::size_t intervals_;
  double h_;
  std::vector<double> x_;
  std::vector<double> kernel_;   // kernel(x_i)
  std::vector<double> load_;     // load weight at x_i
  std::vector<double> theta_profile_;
  std::vector<double> delta_profile_;
  std::vector<double> scratch_;
  std::vector<double> scratch2_;
};

// Single-shot right-hand sides with typed states.

struct PlanarState {
  double w = 0.0;
  double y = 0.0;
};

PlanarState planar_rhs(const PlanarState& s, double t, double u, const PlanarPlant& plant);

struct FieldState {
  Field w;
  double y = 0.0;
};

FieldState heat_rhs(const FieldState& s, double t, double u, const HeatPlant& plant,
                    const PhiSpec& phi = PhiSpec::zero());
FieldState transport_rhs(const FieldState& s, double t, double u, const TransportPlant& plant,
                         const PhiSpec& phi = PhiSpec::zero());

struct WaveState {
  Field v;
  Field phi;
  double y = 0.0;
};

WaveState wave_rhs(const WaveState& s, double t, double u, const WavePlant& plant,
                   const PhiSpec& phi = PhiSpec::zero());

struct BoundCheckResult {
  bool ok = true;
  std::string first_violation;
  double worst_ratio = 0.0;  // max of |lhs| / rhs over samples
};

/// Random smooth grid function on N intervals: a sum of six sine modes with
/// amplitudes in [-4, 4], plus an affine part when not `dirichlet`.
std::vector<double> random_smooth_field(std::mt19937_64& rng, std::size_t intervals, bool dirichlet);

/// Samples (x, y) pairs and random smooth fields and checks the plant kind's
/// bound contract: |K| <= |y|, |K2| <= |y|, |L| <= ||w|| + phi(y)|y|.
BoundCheckResult bound_check(const Coupling& coupling, PlantKind kind, std::size_t samples,
                             const PhiSpec& phi = PhiSpec::zero(), std::uint64_t seed = 1);

/// Exact open-loop solution of the plant's unstable instance at time t on the
/// grid, as a flat DiscretePlant state. Throws ConfigError when the plant has
/// no such instance (planar, other couplings, non-constant signals).
std::vector<double> analytic_unstable(const Plant& plant, double t, std::size_t intervals);

}  // namespace dads
