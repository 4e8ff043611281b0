#pragma once

// Time-varying and separable space-time signals with analytically known
// ranges. Parameters, loads and disturbances in the plants are built from
// this closed grammar so certification can read their norms exactly.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dads {

/// Closed interval [lo, hi].
struct Range {
  double lo = 0.0;
  double hi = 0.0;

  double abs_max() const;
};

/// Expression tree over t >= 0:
///   const(c) | sin(amp, omega, phase) | exp_decay(amp, rate)
///   | sum(s1, s2) | product(s1, s2) | floor_clamp(s, min)
/// sin evaluates amp*sin(omega*t + phase); exp_decay evaluates
/// amp*exp(-rate*t) with rate > 0; floor_clamp evaluates max(s(t), min).
class Signal {
 public:
  enum class Kind { kConst, kSin, kExpDecay, kSum, kProduct, kFloorClamp };

  Signal();  // const(0)

  static Signal constant(double c);
  static Signal sine(double amp, double omega, double phase);
  static Signal exp_decay(double amp, double rate);
  static Signal sum(Signal lhs, Signal rhs);
  static Signal product(Signal lhs, Signal rhs);
  static Signal floor_clamp(Signal inner, double min_value);

  /// Parses the prefix form produced by to_string().
  static Signal parse(std::string_view text);

  Kind kind() const { return node_->kind; }
  double eval(double t) const;

  /// Range of s(t) over t >= 0. Exact for every leaf and for floor_clamp of
  /// a leaf; sums and products use interval arithmetic, which can only widen
  /// the range.
  Range range() const;

  /// Asymptotic range [liminf, limsup] of s(t) as t -> infinity, with the
  /// same exactness contract as range().
  Range asymptotic_range() const;

  /// ess sup_{t>=0} |s(t)|
  double sup_norm() const { return range().abs_max(); }
  /// limsup_{t->inf} |s(t)|
  double limit_sup() const { return asymptotic_range().abs_max(); }
  double infimum() const { return range().lo; }
  double limit_inf() const { return asymptotic_range().lo; }

  /// True for floor_clamp(_, m) with m > 0 at the root; encodes inf b > 0.
  bool has_positive_floor() const;

  /// True when the signal is the same value for every t.
  bool is_constant() const;

  std::string to_string() const;

 private:
  struct Node {
    Kind kind = Kind::kConst;
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Signal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static double eval_node(const Node& n, double t);
  static Range range_node(const Node& n, bool asymptotic);
  static std::string print_node(const Node& n);

  std::shared_ptr<const Node> node_;
};

/// Spatial profile on [0, 1]: polynomial sum_k c_k x^k, a sine mode
/// amp*sin(k*pi*x), or values tabulated at equispaced nodes (linearly
/// interpolated).
class Profile {
 public:
  enum class Kind { kPolynomial, kSine, kTable };

  Profile();  // poly(1)

  static Profile polynomial(std::vector<double> coefficients);
  static Profile sine(int mode, double amp = 1.0);
  static Profile table(std::vector<double> node_values);

  static Profile parse(std::string_view text);

  Kind kind() const { return kind_; }
  double eval(double x) const;

  /// L2(0,1) norm; exact for polynomials and sines, trapezoid for tables.
  double l2_norm() const;
  /// max over x in [0,1] of |g(x)|.
  double sup_abs() const;

  std::string to_string() const;

 private:
  Kind kind_ = Kind::kPolynomial;
  std::vector<double> data_{1.0};
  int mode_ = 1;
  double amp_ = 1.0;
};

/// Separable product s(t) * g(x).
struct SpaceTimeSignal {
  Signal time;
  Profile space;

  double eval(double t, double x) const { return time.eval(t) * space.eval(x); }

  /// sup_t ||s(t) g||_{L2}
  double sup_l2() const { return time.sup_norm() * space.l2_norm(); }
  /// limsup_t ||s(t) g||_{L2}
  double limsup_l2() const { return time.limit_sup() * space.l2_norm(); }

  /// Accepts `st(<signal>, <profile>)` or a bare signal (constant profile).
  static SpaceTimeSignal parse(std::string_view text);
  std::string to_string() const;
};

}  // namespace dads
