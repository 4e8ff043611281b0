#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dads {

enum class Boundary {
  kDirichletBoth,  // zero at x = 0 and x = 1
  kInflowLeft,     // value at x = 0 injected by the boundary condition
  kFree,
};

/// Node values of a grid function on [0, 1] with N >= 8 equal intervals.
class Field {
 public:
  static constexpr std::size_t kMinIntervals = 8;

  Field(std::size_t intervals, Boundary bc);
  Field(std::vector<double> values, Boundary bc);

  /// Samples fn at the nodes. Dirichlet endpoints are forced to zero.
  static Field sample(std::size_t intervals, Boundary bc, const std::function<double(double)>& fn);

  std::size_t intervals() const { return values_.size() - 1; }
  std::size_t size() const { return values_.size(); }
  double spacing() const { return 1.0 / static_cast<double>(intervals()); }
  double node(std::size_t i) const { return static_cast<double>(i) * spacing(); }
  Boundary boundary() const { return bc_; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

 private:
  std::vector<double> values_;
  Boundary bc_;
};

}  // namespace dads
