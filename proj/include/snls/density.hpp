#pragma once

#include <vector>

#include "snls/grid.hpp"

namespace snls {

/// Nonnegative real samples of a smooth density on a Grid (dmu^eps/dx, V^eps).
class GriddedDensity {
 public:
  /// Identically zero density.
  explicit GriddedDensity(Grid grid);
  /// Throws ArgumentError on length mismatch or a negative/non-finite sample.
  GriddedDensity(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Trapezoid (periodic) integral over the whole grid.
  double integral() const noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

}  // namespace snls
