#include "snls/mollify.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "snls/csv.hpp"
#include "snls/errors.hpp"

namespace snls {

// ---------------------------------------------------------------------------
// GriddedDensity

GriddedDensity::GriddedDensity(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

GriddedDensity::GriddedDensity(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ArgumentError("density length does not match grid");
  for (double v : values_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ArgumentError("density values must be finite and nonnegative");
}

double GriddedDensity::integral() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * grid_.dx();
}

// ---------------------------------------------------------------------------

void check_resolution(const Grid& grid, double eps, double points_per_eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ArgumentError("mollification scale must satisfy 0 < eps <= 1");
  if (!(points_per_eps > 0.0)) throw ArgumentError("points_per_eps must be positive");
  if (grid.dx() > eps / points_per_eps) {
    std::ostringstream msg;
    msg << "grid spacing " << grid.dx() << " does not resolve eps = " << eps << " (need dx <= "
        << eps / points_per_eps << ")";
    throw ResolutionError(msg.str());
  }
}

double cutoff(double x, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("cutoff: eps must be positive");
  return cutoff_profile(eps * x);
}

namespace {

// Adds mass * rho^eps(x_i - y) to out for every grid point within eps of y,
// using periodic images on the box.
void deposit(std::vector<double>& out, const Grid& g, double y, double mass, double eps) {
  const double dx = g.dx();
  const auto n = static_cast<std::int64_t>(g.size());
  const double pos = (y + g.half_length()) / dx;
  const auto i_lo = static_cast<std::int64_t>(std::ceil(pos - eps / dx));
  const auto i_hi = static_cast<std::int64_t>(std::floor(pos + eps / dx));
  for (std::int64_t i = i_lo; i <= i_hi; ++i) {
    const double offset = (static_cast<double>(i) - pos) * dx;
    const double v = mollifier(offset, eps);
    if (v == 0.0) continue;
    const auto wrapped = static_cast<std::size_t>(((i % n) + n) % n);
    out[wrapped] += mass * v;
  }
}

}  // namespace

GriddedDensity mollified_density(const Measure& mu, double eps, const Grid& grid,
                                 double points_per_eps) {
  check_resolution(grid, eps, points_per_eps);
  std::vector<double> out(grid.size(), 0.0);
  const double L = grid.half_length();
  for (const auto& at : mu.atomic().atoms()) {
    if (at.position < -L || at.position > L)
      throw ArgumentError("mollified_density: atom outside the periodic box");
    deposit(out, grid, at.position, at.mass, eps);
  }
  if (mu.density()) {
    const auto& d = *mu.density();
    require_same_grid(d.grid(), grid, "mollified_density");
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0.0) deposit(out, grid, grid.x(i), d[i] * grid.dx(), eps);
  }
  return GriddedDensity(grid, std::move(out));
}

GriddedDensity truncated_potential(const Measure& mu, double eps, const Grid& grid,
                                   double points_per_eps) {
  auto dens = mollified_density(mu, eps, grid, points_per_eps);
  std::vector<double> v = dens.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= cutoff_profile(eps * grid.x(i));
  return GriddedDensity(grid, std::move(v));
}

void write_csv(std::ostream& os, const GriddedDensity& d) {
  csv::write_header(os, {"x", "value"});
  for (std::size_t i = 0; i < d.size(); ++i) csv::write_row(os, {d.grid().x(i), d[i]});
}

}  // namespace snls
