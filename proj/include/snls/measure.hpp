#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "snls/density.hpp"
#include "snls/field.hpp"
#include "snls/point_process.hpp"

namespace snls {

/// Locally finite measure: an atomic part plus an optional smooth density
/// sampled on the simulation grid.
class Measure {
 public:
  explicit Measure(AtomicMeasure atoms);
  Measure(AtomicMeasure atoms, GriddedDensity density);

  const AtomicMeasure& atomic() const noexcept { return atomic_; }
  const std::optional<GriddedDensity>& density() const noexcept { return density_; }

 private:
  AtomicMeasure atomic_;
  std::optional<GriddedDensity> density_;
};

/// Index l of the unit interval I_l = [l - 1/2, l + 1/2) containing x.
std::int64_t unit_interval_index(double x) noexcept;

/// mu(I_l), atoms plus trapezoid quadrature of the density part (grid points
/// exactly on an interval edge carry half weight on each side).
double interval_mass(const Measure& mu, std::int64_t l);

/// All nonzero interval masses, keyed by l.
std::map<std::int64_t, double> occupied_interval_masses(const Measure& mu);

/// N_k(mu)^2 = 4 + sup_l [mu(I_l)^2 - |k - l|].
double nk_squared(const Measure& mu, std::int64_t k);
double nk(const Measure& mu, std::int64_t k);

/// Table of N_k^2 over an index window around the support of mu; values
/// outside the table are extended analytically (they sit at the baseline 4).
class WeightProfile {
 public:
  explicit WeightProfile(const Measure& mu);

  std::int64_t k_min() const noexcept { return k_min_; }
  std::int64_t k_max() const noexcept { return k_min_ + static_cast<std::int64_t>(values_.size()) - 1; }
  const std::vector<double>& values() const noexcept { return values_; }

  double nk_squared(std::int64_t k) const noexcept;
  double nk(std::int64_t k) const noexcept;
  /// Linear interpolation of N_k^2 between consecutive integers.
  double weight(double x) const noexcept;
  /// weight() sampled on the grid.
  std::vector<double> on_grid(const Grid& grid) const;

 private:
  std::int64_t k_min_ = 0;
  std::vector<double> values_;
};

/// w(x; mu).
double weight(const Measure& mu, double x);

/// (integral |f|^2 w dx)^{1/2}: trapezoid quadrature on the field's grid with
/// an endpoint correction at the kinks of w, so the error is O(dx^4).
double weighted_l2_norm(const WaveField& f, const WeightProfile& profile);
double weighted_l2_norm(const WaveField& f, const Measure& mu);

/// Smooth partition of unity chi_k(x) = chi(x - k), supported in (k-1, k+1).
double chi(double x, std::int64_t k) noexcept;

/// (sum_k N_k^2 ||chi_k f||_{L2}^2)^{1/2} over all k meeting the box.
double block_norm(const WaveField& f, const WeightProfile& profile);
double block_norm(const WaveField& f, const Measure& mu);

/// sum_k ||chi_k f||^2, the unweighted block decomposition of ||f||^2.
double partition_l2_squared(const WaveField& f);

/// CSV `k,nk_squared` over the table window.
void write_csv(std::ostream& os, const WeightProfile& profile);
/// CSV `x,w` on the grid.
void write_weight_csv(std::ostream& os, const WeightProfile& profile, const Grid& grid);

}  // namespace snls
