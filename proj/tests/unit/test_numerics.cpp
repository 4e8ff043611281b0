#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dads/error.hpp"
#include "dads/integrator.hpp"
#include "dads/operators.hpp"

namespace dads {
namespace {

using std::numbers::pi;

TEST(Operators, LaplacianIsExactOnQuadratics) {
  const Field f = Field::sample(20, Boundary::kDirichletBoth, [](double x) { return x * (x - 1); });
  const Field l = laplacian_dirichlet(f);
  EXPECT_EQ(l[0], 0.0);
  EXPECT_EQ(l[20], 0.0);
  for (std::size_t i = 1; i < 20; ++i) EXPECT_NEAR(l[i], 2.0, 1e-9);
}

TEST(Operators, UpwindIsExactOnLines) {
  const Field f = Field::sample(16, Boundary::kInflowLeft, [](double x) { return 3 * x + 1; });
  const Field d = upwind_dx(f);
  EXPECT_EQ(d[0], 0.0);
  for (std::size_t i = 1; i <= 16; ++i) EXPECT_NEAR(d[i], 3.0, 1e-12);
}

TEST(Operators, GradientIsSecondOrder) {
  const auto err = [](std::size_t n) {
    const Field f = Field::sample(n, Boundary::kFree, [](double x) { return std::sin(2 * x); });
    std::vector<double> g(f.size());
    gradient(f.values(), f.spacing(), g);
    double e = 0;
    for (std::size_t i = 0; i < g.size(); ++i) e = std::max(e, std::abs(g[i] - 2 * std::cos(2 * f.node(i))));
    return e;
  };
  EXPECT_NEAR(err(40) / err(80), 4.0, 0.3);
}

TEST(Quadrature, TrapezoidConvergesAtSecondOrder) {
  const auto err = [](std::size_t n) {
    const Field f = Field::sample(n, Boundary::kFree, [](double x) { return std::exp(x); });
    return std::abs(trapezoid(f.values(), f.spacing()) - (std::exp(1.0) - 1));
  };
  EXPECT_NEAR(err(50) / err(100), 4.0, 0.01);
  const Field s = Field::sample(200, Boundary::kDirichletBoth, [](double x) { return std::sin(pi * x); });
  EXPECT_NEAR(l2_norm_sq(s), 0.5, 1e-12);
  EXPECT_NEAR(gradient_norm_sq(s.values(), s.spacing()), pi * pi / 2, 1e-3);
}

TEST(Field, EnforcesMinimumResolution) {
  EXPECT_THROW(Field(4, Boundary::kFree), ConfigError);
  const Field f = Field::sample(8, Boundary::kDirichletBoth, [](double) { return 1.0; });
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[8], 0.0);
}

TEST(Rk4, IsFourthOrder) {
  const RhsFn rhs = [](double, std::span<const double> x, std::span<double> dx) { dx[0] = x[0]; };
  const auto err = [&](int steps) {
    std::vector<double> x{1.0};
    Rk4 rk(1);
    const double dt = 1.0 / steps;
    for (int k = 0; k < steps; ++k) rk.step(rhs, x, k * dt, dt);
    return std::abs(x[0] - std::exp(1.0));
  };
  EXPECT_NEAR(err(20) / err(40), 16.0, 0.5);
}

TEST(Rk4, HandlesTimeDependence) {
  const RhsFn rhs = [](double t, std::span<const double>, std::span<double> dx) { dx[0] = 3 * t * t; };
  const auto x = rk4_step(rhs, std::vector<double>{0.0}, 0.0, 2.0);
  EXPECT_NEAR(x[0], 8.0, 1e-12);
}

TEST(Rk4, ReportsNonFiniteComponents) {
  const RhsFn rhs = [](double, std::span<const double>, std::span<double> dx) {
    dx[0] = 0;
    dx[1] = INFINITY;
  };
  std::vector<double> x{1.0, 1.0};
  Rk4 rk(2);
  try {
    rk.step(rhs, x, 0, 0.1);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
  EXPECT_THROW(rk.step(rhs, x, 0, 0.0), NumericalError);
}

}  // namespace
}  // namespace dads
