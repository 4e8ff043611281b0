#include "dads/operators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "dads/error.hpp"

namespace dads {

Field::Field(std::size_t intervals, Boundary bc) : values_(intervals + 1, 0.0), bc_(bc) {
  if (intervals < kMinIntervals) {
    throw ConfigError("grid needs at least " + std::to_string(kMinIntervals) + " intervals");
  }
}

Field::Field(std::vector<double> values, Boundary bc) : values_(std::move(values)), bc_(bc) {
  if (values_.size() < kMinIntervals + 1) {
    throw ConfigError("grid needs at least " + std::to_string(kMinIntervals) + " intervals");
  }
  if (bc_ == Boundary::kDirichletBoth && (values_.front() != 0.0 || values_.back() != 0.0)) {
    throw ConfigError("dirichlet field must vanish at both endpoints");
  }
}

Field Field::sample(std::size_t intervals, Boundary bc, const std::function<double(double)>& fn) {
  Field f(intervals, bc);
  for (std::size_t i = 0; i < f.size(); ++i) f.values_[i] = fn(f.node(i));
  if (bc == Boundary::kDirichletBoth) {
    f.values_.front() = 0.0;
    f.values_.back() = 0.0;
  }
  return f;
}

void laplacian_dirichlet(std::span<const double> f, double h, std::span<double> out) {
  const std::size_t n = f.size();
  const double inv_h2 = 1.0 / (h * h);
  out[0] = 0.0;
  out[n - 1] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) * inv_h2;
}

Field laplacian_dirichlet(const Field& f) {
  if (f.boundary() != Boundary::kDirichletBoth) {
    throw ConfigError("laplacian_dirichlet requires a dirichlet-both field");
  }
  Field out(f.intervals(), Boundary::kDirichletBoth);
  laplacian_dirichlet(f.values(), f.spacing(), out.values());
  return out;
}

void upwind_dx(std::span<const double> f, double h, std::span<double> out) {
  const double inv_h = 1.0 / h;
  out[0] = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) out[i] = (f[i] - f[i - 1]) * inv_h;
}

Field upwind_dx(const Field& f) {
  if (f.boundary() != Boundary::kInflowLeft) throw ConfigError("upwind_dx requires an inflow-left field");
  Field out(f.intervals(), Boundary::kFree);
  upwind_dx(f.values(), f.spacing(), out.values());
  return out;
}

void gradient(std::span<const double> f, double h, std::span<double> out) {
  const std::size_t n = f.size();
  const double inv_2h = 0.5 / h;
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv_2h;
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv_2h;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv_2h;
}

double trapezoid(std::span<const double> f, double h) {
  double acc = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
  return acc * h;
}

double trapezoid_product(std::span<const double> f, std::span<const double> g, double h) {
  double acc = 0.5 * (f.front() * g.front() + f.back() * g.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i] * g[i];
  return acc * h;
}

double l2_norm_sq(std::span<const double> f, double h) { return trapezoid_product(f, f, h); }

double l2_norm_sq(const Field& f) { return l2_norm_sq(f.values(), f.spacing()); }

double gradient_norm_sq(std::span<const double> f, double h) {
  std::vector<double> fx(f.size());
  gradient(f, h, fx);
  return l2_norm_sq(fx, h);
}

}  // namespace dads
