#include "dads/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "dads/error.hpp"
#include "term_parser.hpp"

namespace dads {

using detail::format_double;
using detail::Term;

double Range::abs_max() const { return std::max(std::abs(lo), std::abs(hi)); }

namespace {

Range add(Range x, Range y) { return {x.lo + y.lo, x.hi + y.hi}; }

Range multiply(Range x, Range y) {
  const double c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

void expect_arity(const Term& t, std::size_t lo, std::size_t hi) {
  if (t.args.size() < lo || t.args.size() > hi) {
    throw ConfigError("'" + t.name + "' takes " + std::to_string(lo) +
                      (lo == hi ? "" : ".." + std::to_string(hi)) + " arguments, got " +
                      std::to_string(t.args.size()));
  }
}

double number_arg(const Term& t, std::size_t i) {
  if (!t.args[i].is_number()) {
    throw ConfigError("argument " + std::to_string(i + 1) + " of '" + t.name + "' must be a number");
  }
  return t.args[i].number;
}

Signal from_term(const Term& t) {
  if (t.is_number()) return Signal::constant(t.number);
  if (t.name == "const") {
    expect_arity(t, 1, 1);
    return Signal::constant(number_arg(t, 0));
  }
  if (t.name == "sin") {
    expect_arity(t, 1, 3);
    const double amp = number_arg(t, 0);
    const double omega = t.args.size() > 1 ? number_arg(t, 1) : 1.0;
    const double phase = t.args.size() > 2 ? number_arg(t, 2) : 0.0;
    return Signal::sine(amp, omega, phase);
  }
  if (t.name == "exp_decay") {
    expect_arity(t, 2, 2);
    return Signal::exp_decay(number_arg(t, 0), number_arg(t, 1));
  }
  if (t.name == "sum" || t.name == "product") {
    if (t.args.size() < 2) throw ConfigError("'" + t.name + "' needs at least two arguments");
    Signal acc = from_term(t.args[0]);
    for (std::size_t i = 1; i < t.args.size(); ++i) {
      acc = t.name == "sum" ? Signal::sum(acc, from_term(t.args[i]))
                            : Signal::product(acc, from_term(t.args[i]));
    }
    return acc;
  }
  if (t.name == "floor_clamp") {
    expect_arity(t, 2, 2);
    return Signal::floor_clamp(from_term(t.args[0]), number_arg(t, 1));
  }
  throw ConfigError("unknown signal '" + t.name + "'");
}

Profile profile_from_term(const Term& t) {
  if (t.is_number()) return Profile::polynomial({t.number});
  std::vector<double> nums;
  for (std::size_t i = 0; i < t.args.size(); ++i) nums.push_back(number_arg(t, i));
  if (t.name == "poly") {
    if (nums.empty()) throw ConfigError("'poly' needs at least one coefficient");
    return Profile::polynomial(std::move(nums));
  }
  if (t.name == "sine") {
    expect_arity(t, 1, 2);
    const double mode = nums[0];
    if (mode != std::floor(mode) || mode < 1) throw ConfigError("sine mode must be a positive integer");
    return Profile::sine(static_cast<int>(mode), nums.size() > 1 ? nums[1] : 1.0);
  }
  if (t.name == "table") return Profile::table(std::move(nums));
  throw ConfigError("unknown profile '" + t.name + "'");
}

}  // namespace

Signal::Signal() : node_(std::make_shared<const Node>()) {}

Signal Signal::constant(double c) {
  Node n;
  n.kind = Kind::kConst;
  n.p0 = c;
  return Signal(std::make_shared<const Node>(std::move(n)));
}

Signal Signal::sine(double amp, double omega, double phase) {
  Node n;
  n.kind = Kind::kSin;
  n.p0 = amp;
  n.p1 = omega;
  n.p2 = phase;
  return Signal(std::make_shared<const Node>(std::move(n)));
}

Signal Signal::exp_decay(double amp, double rate) {
  if (!(rate > 0)) throw ConfigError("exp_decay rate must be positive");
  Node n;
  n.kind = Kind::kExpDecay;
  n.p0 = amp;
  n.p1 = rate;
  return Signal(std::make_shared<const Node>(std::move(n)));
}

Signal Signal::sum(Signal lhs, Signal rhs) {
  Node n;
  n.kind = Kind::kSum;
  n.lhs = std::move(lhs.node_);
  n.rhs = std::move(rhs.node_);
  return Signal(std::make_shared<const Node>(std::move(n)));
}

Signal Signal::product(Signal lhs, Signal rhs) {
  Node n;
  n.kind = Kind::kProduct;
  n.lhs = std::move(lhs.node_);
  n.rhs = std::move(rhs.node_);
  return Signal(std::make_shared<const Node>(std::move(n)));
}

Signal Signal::floor_clamp(Signal inner, double min_value) {
  Node n;
  n.kind = Kind::kFloorClamp;
  n.p0 = min_value;
  n.lhs = std::move(inner.node_);
  return Signal(std::make_shared<const Node>(std::move(n)));
}

Signal Signal::parse(std::string_view text) { return from_term(detail::parse_term(text)); }

double Signal::eval(double t) const { return eval_node(*node_, t); }

double Signal::eval_node(const Node& n, double t) {
  switch (n.kind) {
    case Kind::kConst:
      return n.p0;
    case Kind::kSin:
      return n.p0 * std::sin(n.p1 * t + n.p2);
    case Kind::kExpDecay:
      return n.p0 * std::exp(-n.p1 * t);
    case Kind::kSum:
      return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
    case Kind::kProduct:
      return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
    case Kind::kFloorClamp:
      return std::max(eval_node(*n.lhs, t), n.p0);
  }
  return 0.0;
}

Range Signal::range() const { return range_node(*node_, false); }
Range Signal::asymptotic_range() const { return range_node(*node_, true); }

Range Signal::range_node(const Node& n, bool asymptotic) {
  switch (n.kind) {
    case Kind::kConst:
      return {n.p0, n.p0};
    case Kind::kSin: {
      if (n.p1 == 0.0) {
        const double v = n.p0 * std::sin(n.p2);
        return {v, v};
      }
      const double amp = std::abs(n.p0);
      return {-amp, amp};
    }
    case Kind::kExpDecay:
      if (asymptotic) return {0.0, 0.0};
      return {std::min(0.0, n.p0), std::max(0.0, n.p0)};
    case Kind::kSum:
      return add(range_node(*n.lhs, asymptotic), range_node(*n.rhs, asymptotic));
    case Kind::kProduct:
      return multiply(range_node(*n.lhs, asymptotic), range_node(*n.rhs, asymptotic));
    case Kind::kFloorClamp: {
      const Range inner = range_node(*n.lhs, asymptotic);
      return {std::max(inner.lo, n.p0), std::max(inner.hi, n.p0)};
    }
  }
  return {};
}

bool Signal::has_positive_floor() const { return node_->kind == Kind::kFloorClamp && node_->p0 > 0; }

bool Signal::is_constant() const {
  const Range r = range();
  return r.lo == r.hi;
}

std::string Signal::to_string() const { return print_node(*node_); }

std::string Signal::print_node(const Node& n) {
  switch (n.kind) {
    case Kind::kConst:
      return "const(" + format_double(n.p0) + ")";
    case Kind::kSin:
      return "sin(" + format_double(n.p0) + "," + format_double(n.p1) + "," + format_double(n.p2) + ")";
    case Kind::kExpDecay:
      return "exp_decay(" + format_double(n.p0) + "," + format_double(n.p1) + ")";
    case Kind::kSum:
      return "sum(" + print_node(*n.lhs) + "," + print_node(*n.rhs) + ")";
    case Kind::kProduct:
      return "product(" + print_node(*n.lhs) + "," + print_node(*n.rhs) + ")";
    case Kind::kFloorClamp:
      return "floor_clamp(" + print_node(*n.lhs) + "," + format_double(n.p0) + ")";
  }
  return {};
}

Profile::Profile() = default;

Profile Profile::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) throw ConfigError("polynomial profile needs coefficients");
  Profile p;
  p.kind_ = Kind::kPolynomial;
  p.data_ = std::move(coefficients);
  return p;
}

Profile Profile::sine(int mode, double amp) {
  if (mode < 1) throw ConfigError("sine mode must be >= 1");
  Profile p;
  p.kind_ = Kind::kSine;
  p.data_.clear();
  p.mode_ = mode;
  p.amp_ = amp;
  return p;
}

Profile Profile::table(std::vector<double> node_values) {
  if (node_values.size() < 2) throw ConfigError("table profile needs at least two values");
  Profile p;
  p.kind_ = Kind::kTable;
  p.data_ = std::move(node_values);
  return p;
}

Profile Profile::parse(std::string_view text) { return profile_from_term(detail::parse_term(text)); }

double Profile::eval(double x) const {
  switch (kind_) {
    case Kind::kPolynomial: {
      double acc = 0.0;
      for (auto it = data_.rbegin(); it != data_.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
    case Kind::kSine:
      return amp_ * std::sin(mode_ * std::numbers::pi * x);
    case Kind::kTable: {
      const double pos = std::clamp(x, 0.0, 1.0) * static_cast<double>(data_.size() - 1);
      const auto i = std::min(static_cast<std::size_t>(pos), data_.size() - 2);
      const double frac = pos - static_cast<double>(i);
      return data_[i] + frac * (data_[i + 1] - data_[i]);
    }
  }
  return 0.0;
}

double Profile::l2_norm() const {
  switch (kind_) {
    case Kind::kPolynomial: {
      double acc = 0.0;
      for (std::size_t j = 0; j < data_.size(); ++j) {
        for (std::size_t k = 0; k < data_.size(); ++k) {
          acc += data_[j] * data_[k] / static_cast<double>(j + k + 1);
        }
      }
      return std::sqrt(std::max(acc, 0.0));
    }
    case Kind::kSine:
      return std::abs(amp_) / std::numbers::sqrt2;
    case Kind::kTable: {
      const double h = 1.0 / static_cast<double>(data_.size() - 1);
      double acc = 0.5 * (data_.front() * data_.front() + data_.back() * data_.back());
      for (std::size_t i = 1; i + 1 < data_.size(); ++i) acc += data_[i] * data_[i];
      return std::sqrt(acc * h);
    }
  }
  return 0.0;
}

double Profile::sup_abs() const {
  switch (kind_) {
    case Kind::kSine:
      return std::abs(amp_);
    case Kind::kTable: {
      double m = 0.0;
      for (double v : data_) m = std::max(m, std::abs(v));
      return m;
    }
    case Kind::kPolynomial: {
      // Dense sampling; polynomials of the sizes used here are resolved to
      // well below 1e-6 relative.
      constexpr int kSamples = 8192;
      double m = 0.0;
      for (int i = 0; i <= kSamples; ++i) m = std::max(m, std::abs(eval(static_cast<double>(i) / kSamples)));
      return m;
    }
  }
  return 0.0;
}

std::string Profile::to_string() const {
  std::string out;
  switch (kind_) {
    case Kind::kPolynomial:
      out = "poly(";
      break;
    case Kind::kSine:
      return "sine(" + std::to_string(mode_) + "," + format_double(amp_) + ")";
    case Kind::kTable:
      out = "table(";
      break;
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (i) out += ",";
    out += format_double(data_[i]);
  }
  return out + ")";
}

SpaceTimeSignal SpaceTimeSignal::parse(std::string_view text) {
  const Term t = detail::parse_term(text);
  if (t.name == "st") {
    expect_arity(t, 2, 2);
    return {from_term(t.args[0]), profile_from_term(t.args[1])};
  }
  return {from_term(t), Profile{}};
}

std::string SpaceTimeSignal::to_string() const {
  return "st(" + time.to_string() + "," + space.to_string() + ")";
}

}  // namespace dads
