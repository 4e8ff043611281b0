#pragma once

// Finite-difference operators and quadrature on uniform grids over [0, 1].
// The span overloads take node values and the spacing h; the Field overloads
// additionally enforce the boundary contract.

#include <span>

#include "dads/field.hpp"

namespace dads {

/// Interior nodes (f[i-1] - 2 f[i] + f[i+1]) / h^2, endpoints 0.
void laplacian_dirichlet(std::span<const double> f, double h, std::span<double> out);
Field laplacian_dirichlet(const Field& f);

/// Backward difference (f[i] - f[i-1]) / h for i >= 1; node 0 is 0.
void upwind_dx(std::span<const double> f, double h, std::span<double> out);
Field upwind_dx(const Field& f);

/// Central differences inside, second-order one-sided differences at the ends.
void gradient(std::span<const double> f, double h, std::span<double> out);

/// Composite trapezoid rule for the integral of f over [0, 1].
double trapezoid(std::span<const double> f, double h);

/// Composite trapezoid rule for the integral of f * g.
double trapezoid_product(std::span<const double> f, std::span<const double> g, double h);

/// Trapezoid rule for the integral of f^2.
double l2_norm_sq(std::span<const double> f, double h);
double l2_norm_sq(const Field& f);

/// ||f_x||^2 with f_x from gradient().
double gradient_norm_sq(std::span<const double> f, double h);

}  // namespace dads
