#pragma once

#include <iosfwd>

#include "snls/bump.hpp"
#include "snls/density.hpp"
#include "snls/measure.hpp"

namespace snls {

/// Default resolution guard: dx <= eps / kDefaultPointsPerEps.
inline constexpr double kDefaultPointsPerEps = 8.0;

/// Throws ResolutionError when grid.dx() > eps / points_per_eps, and
/// ArgumentError unless 0 < eps <= 1.
void check_resolution(const Grid& grid, double eps, double points_per_eps = kDefaultPointsPerEps);

/// phi^eps(x) = cutoff_profile(eps x): 1 for |x| <= 1/eps, 0 for |x| >= 2/eps.
double cutoff(double x, double eps);

/// dmu^eps/dx on the grid by direct summation of rho^eps(x_i - y_j) over
/// atoms, with periodic images on the box. A density part of mu is convolved
/// with rho^eps on the grid. Atoms must lie inside the box [-L, L].
GriddedDensity mollified_density(const Measure& mu, double eps, const Grid& grid,
                                 double points_per_eps = kDefaultPointsPerEps);

/// V^eps = phi^eps * dmu^eps/dx.
GriddedDensity truncated_potential(const Measure& mu, double eps, const Grid& grid,
                                   double points_per_eps = kDefaultPointsPerEps);

/// CSV `x,value`.
void write_csv(std::ostream& os, const GriddedDensity& d);

}  // namespace snls
