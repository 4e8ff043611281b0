#pragma once

// Trajectory-level verification of the closed-loop estimates.
//
// Slack convention: slack = bound - observed, so a check passes when its
// worst slack is >= -tolerance.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "dads/controller.hpp"
#include "dads/lyapunov.hpp"
#include "dads/simulation.hpp"

namespace dads {

enum class CheckStatus { kPass, kFail, kInconclusive, kNotApplicable };

std::string_view to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  double worst_slack = 0.0;
  double worst_t = 0.0;
  double tolerance = 0.0;
  std::map<std::string, double> constants;
  std::string note;

  bool passed() const { return status == CheckStatus::kPass; }
};

struct TailOptions {
  double window = 0.1;          // fraction of the horizon used as the tail
  double y_factor = 1.1;        // tail |y| bound is y_factor * sqrt(2 eps)
  double settle_tol = 1e-3;     // |z(T) - z(0.8 T)| gate
};

/// 2 k1 ||w||^2 + y^2 <= e^{-mu t} (2 k2 ||w0||^2 + y0^2) + 2 Z / mu.
CheckRecord check_transient(const Trajectory& tr, const DadsParams& p, const CaseConstants& cc,
                            const InputNorms& norms, double rel_tol = 1e-9);

/// z(0) <= z(t) <= z_window_upper at every sample.
CheckRecord check_z_window(const Trajectory& tr, const DadsParams& p, const CaseConstants& cc,
                           const InputNorms& norms, double tol = 1e-12);

/// Tail maxima of |y| and ||w|| against the asymptotic bounds. Reports
/// inconclusive when z has not settled.
CheckRecord check_tails(const Trajectory& tr, const DadsParams& p, const CaseConstants& cc,
                        const InputNorms& limits, const TailOptions& opt = {});

/// Central-difference estimate of d/dt (Phi + V) against -mu (Phi + V) + Z.
CheckRecord monitor_dissipation(const Trajectory& tr, const DadsParams& p, const CaseConstants& cc,
                                const InputNorms& norms, double tol);

enum class DichotomyClass {
  kNotApplicable,
  kRegulated,              // tail decays and the gain exceeds the threshold
  kGainDeficient,          // no regulation observed, gain below threshold
  kGainDeficientRegulated, // regulation observed although the gain is below threshold
  kContradiction,          // neither branch matches
};

std::string_view to_string(DichotomyClass c);

struct DichotomyRecord {
  DichotomyClass classification = DichotomyClass::kNotApplicable;
  bool regulated = false;
  bool gain_deficient = false;
  double z_final = 0.0;
  double gain_level = 0.0;  // kappa + e^{z(T)}
  double threshold = 0.0;   // limsup max(R ||theta1||, |theta2|)
  double tail_y = 0.0;
  double tail_w = 0.0;
  std::string note;
};

/// Regulation is judged on the final `window` of the horizon: both |y| and
/// ||w|| either stay below `reg_tol` or shrink by at least half across the
/// window.
DichotomyRecord check_dichotomy(const Trajectory& tr, const DadsParams& p, const CaseConstants& cc,
                                const InputNorms& limits, double window = 0.1, double reg_tol = 1e-3);

/// Smallest linear gain the small-gain argument accepts: theta1 theta2 / (p b_min).
double small_gain_threshold(double theta1, double theta2, double p_bar, double b_min);

/// Closed-loop matrix [[-p, theta1], [theta2, -b k]] of the constant-parameter
/// planar loop under u = -k y.
std::array<double, 4> planar_linear_matrix(double theta1, double theta2, double p_bar, double b, double k);

/// Trace/determinant test for a row-major 2x2 matrix.
bool is_hurwitz_2x2(const std::array<double, 4>& m);

/// Largest real part of the eigenvalues of a row-major 2x2 matrix.
double spectral_abscissa_2x2(const std::array<double, 4>& m);

/// Max relative error of the snapshots against the closed-form open-loop
/// instance, in the plant state norm plus |y|. Slack is rel_tol - error.
CheckRecord check_analytic_oracle(const Trajectory& tr, const Scenario& s, double rel_tol);

/// Transport delay line driven by a prescribed y: every node must follow
/// w(x, t) = y(t - x / c) at snapshots with t >= 1 / c. Slack is tol - max error.
CheckRecord check_delay_oracle(const Trajectory& tr, const Scenario& s, const Signal& y, double tol);

struct CertReport {
  std::map<std::string, double> constants;  // mu, Z, B, z_upper, tail bounds
  std::vector<CheckRecord> checks;
  DichotomyRecord dichotomy;

  bool all_passed() const;
};

struct CertOptions {
  bool transient = true;
  bool z_window = true;
  bool tails = true;
  bool dissipation = true;
  bool dichotomy = true;
  TailOptions tail;
  double monitor_tol = 1e-6;
};

/// Runs every enabled check for a closed-loop trajectory of `s`.
CertReport certify(const Trajectory& tr, const Scenario& s, const DadsParams& p, const CertOptions& opt = {});

}  // namespace dads
