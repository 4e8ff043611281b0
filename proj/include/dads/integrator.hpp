#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dads {

/// dx = f(t, x). Implementations write every component of dx.
using RhsFn = std::function<void(double t, std::span<const double> x, std::span<double> dx)>;

/// Classical four-stage Runge-Kutta stepper with reusable stage buffers.
class Rk4 {
 public:
  explicit Rk4(std::size_t dim);

  /// Advances x in place from t to t + dt. Throws NumericalError (naming the
  /// first offending component) if the result is not finite.
  void step(const RhsFn& rhs, std::span<double> x, double t, double dt);

 private:
  std::vector<double> k1_, k2_, k3_, k4_, stage_;
};

/// One RK4 step on a copy of the state.
std::vector<double> rk4_step(const RhsFn& rhs, std::span<const double> x, double t, double dt);

}  // namespace dads
