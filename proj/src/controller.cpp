#include "dads/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dads/error.hpp"

namespace dads {

std::vector<std::string> validate_params(const DadsParams& p) {
  std::vector<std::string> violations;
  if (!(p.epsilon > 0)) violations.emplace_back("epsilon > 0");
  if (!(p.gamma > 0)) violations.emplace_back("gamma > 0");
  if (!(p.kappa > 0)) violations.emplace_back("kappa > 0");
  if (!(p.a > 0)) violations.emplace_back("a > 0");
  if (!(p.c_decay > 0)) violations.emplace_back("c_decay > 0");
  if (!(2.0 * p.kappa > p.a)) violations.emplace_back("2*kappa > a");
  return violations;
}

void require_valid(const DadsParams& p) {
  const auto violations = validate_params(p);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid controller parameters, violated:";
  for (const auto& v : violations) msg << " {" << v << "}";
  throw ConfigError(msg.str());
}

PhiSpec::PhiSpec(const std::array<double, 5>& even_coefficients) : coeffs_(even_coefficients) {
  for (double c : coeffs_) {
    if (!(c >= 0) || !std::isfinite(c)) {
      throw ConfigError("phi coefficients must be finite and non-negative");
    }
  }
}

double PhiSpec::operator()(double y) const {
  const double y2 = y * y;
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y2 + *it;
  return acc;
}

bool PhiSpec::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

GainTriple min_gain_bounds(const DadsParams& p, const PhiSpec& phi, double y) {
  const double k = p.kappa;
  const double a = p.a;
  const double f = phi(y);
  const double k2 = k * k;
  const double k3 = k2 * k;
  const double k4 = k2 * k2;
  const double a2 = a * a;
  const double a3 = a2 * a;
  const double a4 = a2 * a2;

  const double core = k + 4.0 * a * p.c_decay + 4.0 * k3 + 4.0 * a * k * f;
  GainTriple out;
  out.p1 = (core + 8.0 * a * k2) / (4.0 * a * k4 * k2);
  out.p2 = (core * core / (16.0 * k) + k2 + a2 * f * f + 4.0 * a2 * (k3 + 1.0)) / (4.0 * a3 * k4 * k);
  const double q = k2 + a2 * f * f;
  out.p3 = (q * q + 16.0 * a4) / (64.0 * a4 * a3 * k4);
  return out;
}

GainProfile GainProfile::constant(double k1, double k2, double k3) {
  GainProfile g;
  g.mode_ = Mode::kConstant;
  g.constants_ = {k1, k2, k3};
  return g;
}

GainTriple GainProfile::at(double y) const {
  GainTriple t;
  if (mode_ == Mode::kConstant) {
    t = {constants_[0], constants_[1], constants_[2]};
  } else {
    t = min_gain_bounds(params_, phi_, y);
    t.p1 *= safety_factor_;
    t.p2 *= safety_factor_;
    t.p3 *= safety_factor_;
  }
  t.p1 *= scale_[0];
  t.p2 *= scale_[1];
  t.p3 *= scale_[2];
  return t;
}

double GainProfile::damping(double y) const {
  const auto t = at(y);
  const double y2 = y * y;
  return t.p1 + t.p2 * y2 + t.p3 * y2 * y2 * y2;
}

GainProfile GainProfile::scaled(int which, double factor) const {
  if (which < 1 || which > 3) throw ConfigError("gain index must be 1, 2 or 3");
  GainProfile copy = *this;
  copy.scale_[static_cast<std::size_t>(which - 1)] *= factor;
  return copy;
}

GainProfile make_gain_profile(const DadsParams& p, const PhiSpec& phi, double safety_factor) {
  require_valid(p);
  if (!(safety_factor >= 1.0)) throw ConfigError("safety_factor must be >= 1");
  GainProfile g;
  g.mode_ = GainProfile::Mode::kSynthesized;
  g.params_ = p;
  g.phi_ = phi;
  g.safety_factor_ = safety_factor;
  return g;
}

GainCheck verify_gains(const GainProfile& g, const DadsParams& p, const PhiSpec& phi,
                       std::span<const double> y_samples) {
  GainCheck check;
  check.min_relative_slack = std::numeric_limits<double>::infinity();
  for (double y : y_samples) {
    const auto have = g.at(y);
    const auto need = min_gain_bounds(p, phi, y);
    const std::array<double, 3> h{have.p1, have.p2, have.p3};
    const std::array<double, 3> n{need.p1, need.p2, need.p3};
    for (std::size_t i = 0; i < 3; ++i) {
      check.min_relative_slack = std::min(check.min_relative_slack, (h[i] - n[i]) / n[i]);
      if (check.ok && !(h[i] >= n[i])) {
        check.ok = false;
        check.first_failing_y = y;
        check.failing_index = static_cast<int>(i) + 1;
      }
    }
  }
  if (y_samples.empty()) check.min_relative_slack = 0.0;
  return check;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

double control(double y, double z, const DadsParams& p, const GainProfile& g) {
  const double gain = p.kappa + std::exp(z);
  const double gain2 = gain * gain;
  const double gain7 = gain2 * gain2 * gain2 * gain;
  return -gain7 * g.damping(y) * y;
}

double update_rate(double y, double z, const DadsParams& p) {
  const double excess = lyapunov_V(y) - p.epsilon;
  if (!(excess > 0)) return 0.0;
  return p.gamma * std::exp(-z) * excess;
}

double g_excess(double s, double l, const DadsParams& p) {
  const double v = s - p.kappa - std::exp(l);
  return v > 0 ? v * v : 0.0;
}

}  // namespace dads
