#pragma once

// Deadzone-adapted disturbance suppression controller: parameters, gain
// synthesis, nonlinear damping feedback and the deadzone update law.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dads {

/// Controller constants. `epsilon` is the deadzone radius on V(y) = y^2/2,
/// `gamma` the adaptation rate, and `kappa`, `a`, `c_decay` enter the gain
/// inequalities. Requires 2*kappa > a.
struct DadsParams {
  double epsilon = 5e-5;
  double gamma = 100.0;
  double kappa = 2.1;
  double a = 1.0;
  double c_decay = 80.0;
};

/// Names of the failed predicates; empty when the parameters are admissible.
std::vector<std::string> validate_params(const DadsParams& p);

/// Throws ConfigError listing every violated predicate.
void require_valid(const DadsParams& p);

/// The known bound function phi(y) = c0 + c2 y^2 + c4 y^4 + c6 y^6 + c8 y^8
/// with non-negative coefficients.
class PhiSpec {
 public:
  PhiSpec() = default;
  explicit PhiSpec(const std::array<double, 5>& even_coefficients);

  static PhiSpec zero() { return PhiSpec{}; }

  double operator()(double y) const;
  bool is_zero() const;
  const std::array<double, 5>& coefficients() const { return coeffs_; }

 private:
  std::array<double, 5> coeffs_{};
};

struct GainTriple {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
};

/// Right-hand sides of the three gain inequalities at y. With phi == 0 they
/// are independent of y.
GainTriple min_gain_bounds(const DadsParams& p, const PhiSpec& phi, double y);

/// The functions P1, P2, P3 used by the feedback law. Either three constants
/// (K1, K2, K3) or `safety_factor` times the minimal admissible bounds.
class GainProfile {
 public:
  enum class Mode { kConstant, kSynthesized };

  static GainProfile constant(double k1, double k2, double k3);

  Mode mode() const { return mode_; }
  double safety_factor() const { return safety_factor_; }
  GainTriple at(double y) const;

  /// P1(y) + P2(y) y^2 + P3(y) y^6.
  double damping(double y) const;

  /// Returns a copy with P_which (1-based) multiplied by `factor`.
  GainProfile scaled(int which, double factor) const;

 private:
  friend GainProfile make_gain_profile(const DadsParams&, const PhiSpec&, double);

  Mode mode_ = Mode::kConstant;
  std::array<double, 3> constants_{};
  std::array<double, 3> scale_{1.0, 1.0, 1.0};
  DadsParams params_{};
  PhiSpec phi_{};
  double safety_factor_ = 1.0;
};

/// P_i(y) = safety_factor * min_gain_bounds_i(y). Throws ConfigError when
/// the parameters are invalid or safety_factor < 1.
GainProfile make_gain_profile(const DadsParams& p, const PhiSpec& phi, double safety_factor = 1.0);

struct GainCheck {
  bool ok = true;
  std::optional<double> first_failing_y;
  int failing_index = 0;           // 1..3 when !ok
  double min_relative_slack = 0;   // min over samples of (P_i - bound_i) / bound_i
};

GainCheck verify_gains(const GainProfile& g, const DadsParams& p, const PhiSpec& phi,
                       std::span<const double> y_samples);

/// Uniform samples on [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// u = -(kappa + e^z)^7 (P1 + P2 y^2 + P3 y^6) y
double control(double y, double z, const DadsParams& p, const GainProfile& g);

inline double lyapunov_V(double y) { return 0.5 * y * y; }

/// zdot = Gamma e^{-z} (V(y) - epsilon)^+
double update_rate(double y, double z, const DadsParams& p);

/// ((s - kappa - e^l)^+)^2
double g_excess(double s, double l, const DadsParams& p);

}  // namespace dads
