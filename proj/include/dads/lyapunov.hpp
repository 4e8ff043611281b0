#pragma once

// Per-case Lyapunov functionals and the closed-form constants of the
// closed-loop estimates.

#include <cstdint>
#include <span>
#include <string>

#include "dads/controller.hpp"
#include "dads/plants.hpp"

namespace dads {

/// K1 ||w||^2 <= Phi(w) <= K2 ||w||^2, plus the gains R and G of the
/// dissipation inequality dPhi/dt <= -||w||^2 + R^2 ||theta1||^2 y^2 + G ||delta||^2.
struct CaseConstants {
  double k1 = 0.0;
  double k2 = 0.0;
  double r = 0.0;
  double g_const = 0.0;
};

CaseConstants case_constants(const Plant& plant);

/// Phi evaluated on a flat DiscretePlant state (y entry ignored).
/// Throws ConfigError if the state size does not match.
double phi_case(const DiscretePlant& dp, std::span<const double> state);

struct NormEquivResult {
  bool ok = true;
  std::string violation;
  double min_lower_slack = 0.0;  // min of Phi - k1 ||w||^2, relative to ||w||^2
  double min_upper_slack = 0.0;  // min of k2 ||w||^2 - Phi, relative to ||w||^2
};

/// Checks k1 ||w||^2 <= Phi(w) <= k2 ||w||^2 on random smooth fields.
NormEquivResult norm_equiv_check(const Plant& plant, std::size_t n_fields, std::size_t intervals = 100,
                                 std::uint64_t seed = 7);

/// Sup-norms (or limits) of the plant inputs. theta1 is measured in the
/// case norm; b_inf holds inf b (or liminf b for limits).
struct InputNorms {
  double d = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double b_inf = 1.0;
  double delta = 0.0;
};

InputNorms input_norms(const Plant& plant);
InputNorms input_limits(const Plant& plant);

/// min((2 kappa - a) / (2 kappa k2), 2 C)
double mu_rate(const DadsParams& p, const CaseConstants& cc);

/// The bracketed sum multiplying a / (kappa + e^{z0}) in Z. For the planar
/// plant this is the classical Z-bar.
double z_sum(const DadsParams& p, const CaseConstants& cc, const InputNorms& n, double z0);

/// Z = G ||delta||^2 + a / (kappa + e^{z0}) * z_sum.
double z_bound(const DadsParams& p, const CaseConstants& cc, const InputNorms& n, double z0);

/// B, built from the initial data ||w0||^2 and y0.
double b_bound(const DadsParams& p, const CaseConstants& cc, const InputNorms& n, double w0_norm_sq, double y0,
               double z0);

/// Upper end of the admissible window for z(t).
double z_window_upper(const DadsParams& p, const CaseConstants& cc, const InputNorms& n, double w0_norm_sq,
                      double y0, double z0);

/// Asymptotic bounds on limsup ||w|| and limsup |y|.
double tail_bound_w(const DadsParams& p, const CaseConstants& cc, const InputNorms& limits);
double tail_bound_y(const DadsParams& p);

}  // namespace dads
