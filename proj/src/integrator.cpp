#include "dads/integrator.hpp"

#include <cmath>
#include <sstream>

#include "dads/error.hpp"

namespace dads {

Rk4::Rk4(std::size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), stage_(dim) {}

void Rk4::step(const RhsFn& rhs, std::span<double> x, double t, double dt) {
  if (!(dt > 0)) throw NumericalError("rk4 step size must be positive");
  const std::size_t n = x.size();
  const double half = 0.5 * dt;

  rhs(t, x, k1_);
  for (std::size_t i = 0; i < n; ++i) stage_[i] = x[i] + half * k1_[i];
  rhs(t + half, stage_, k2_);
  for (std::size_t i = 0; i < n; ++i) stage_[i] = x[i] + half * k2_[i];
  rhs(t + half, stage_, k3_);
  for (std::size_t i = 0; i < n; ++i) stage_[i] = x[i] + dt * k3_[i];
  rhs(t + dt, stage_, k4_);

  const double sixth = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] += sixth * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    if (!std::isfinite(x[i])) {
      std::ostringstream msg;
      msg << "non-finite state component " << i << " after step from t=" << t << " with dt=" << dt;
      throw NumericalError(msg.str());
    }
  }
}

std::vector<double> rk4_step(const RhsFn& rhs, std::span<const double> x, double t, double dt) {
  std::vector<double> out(x.begin(), x.end());
  Rk4 stepper(out.size());
  stepper.step(rhs, out, t, dt);
  return out;
}

}  // namespace dads
