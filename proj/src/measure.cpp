#include "snls/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include "snls/bump.hpp"
#include "snls/csv.hpp"

namespace snls {

namespace {
constexpr double kBaseline = 4.0;
}

Measure::Measure(AtomicMeasure atoms) : atomic_(std::move(atoms)) {}

Measure::Measure(AtomicMeasure atoms, GriddedDensity density)
    : atomic_(std::move(atoms)), density_(std::move(density)) {}

std::int64_t unit_interval_index(double x) noexcept {
  return static_cast<std::int64_t>(std::floor(x + 0.5));
}

namespace {

void add_density_masses(const GriddedDensity& d, std::map<std::int64_t, double>& out) {
  const Grid& g = d.grid();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double v = d[i];
    if (v == 0.0) continue;
    const double x = g.x(i);
    const double w = v * g.dx();
    const double shifted = x + 0.5;
    if (shifted == std::floor(shifted)) {
      // on the edge between I_{l-1} and I_l
      const auto l = static_cast<std::int64_t>(shifted);
      out[l] += 0.5 * w;
      out[l - 1] += 0.5 * w;
    } else {
      out[unit_interval_index(x)] += w;
    }
  }
}

}  // namespace

std::map<std::int64_t, double> occupied_interval_masses(const Measure& mu) {
  std::map<std::int64_t, double> out;
  for (const auto& at : mu.atomic().atoms()) out[unit_interval_index(at.position)] += at.mass;
  if (mu.density()) add_density_masses(*mu.density(), out);
  std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

double interval_mass(const Measure& mu, std::int64_t l) {
  const double lo = static_cast<double>(l) - 0.5;
  double m = mu.atomic().mass_in(lo, lo + 1.0);
  if (mu.density()) {
    std::map<std::int64_t, double> dens;
    add_density_masses(*mu.density(), dens);
    if (auto it = dens.find(l); it != dens.end()) m += it->second;
  }
  return m;
}

double nk_squared(const Measure& mu, std::int64_t k) {
  // Unoccupied intervals contribute at most 0, which the l = k term attains.
  double sup = 0.0;
  for (const auto& [l, m] : occupied_interval_masses(mu))
    sup = std::max(sup, m * m - static_cast<double>(std::llabs(k - l)));
  return kBaseline + sup;
}

double nk(const Measure& mu, std::int64_t k) { return std::sqrt(nk_squared(mu, k)); }

// ---------------------------------------------------------------------------
// WeightProfile

WeightProfile::WeightProfile(const Measure& mu) {
  const auto occupied = occupied_interval_masses(mu);
  if (occupied.empty()) {
    k_min_ = 0;
    values_.assign(1, kBaseline);
    return;
  }
  double max_sq = 0.0;
  for (const auto& [l, m] : occupied) max_sq = std::max(max_sq, m * m);
  const auto margin = 2 * static_cast<std::int64_t>(std::ceil(kBaseline + max_sq));
  k_min_ = occupied.begin()->first - margin;
  const std::int64_t k_hi = occupied.rbegin()->first + margin;
  const auto n = static_cast<std::size_t>(k_hi - k_min_ + 1);

  // sup_l [a_l - |k - l|] by a forward and a backward sweep of the
  // 1-Lipschitz lower envelope.
  std::vector<double> env(n, 0.0);
  for (const auto& [l, m] : occupied) env[static_cast<std::size_t>(l - k_min_)] = m * m;
  for (std::size_t i = 1; i < n; ++i) env[i] = std::max(env[i], env[i - 1] - 1.0);
  for (std::size_t i = n - 1; i-- > 0;) env[i] = std::max(env[i], env[i + 1] - 1.0);
  values_.resize(n);
  for (std::size_t i = 0; i < n; ++i) values_[i] = kBaseline + env[i];
}

double WeightProfile::nk_squared(std::int64_t k) const noexcept {
  if (k < k_min_) return std::max(kBaseline, values_.front() - static_cast<double>(k_min_ - k));
  if (k > k_max()) return std::max(kBaseline, values_.back() - static_cast<double>(k - k_max()));
  return values_[static_cast<std::size_t>(k - k_min_)];
}

double WeightProfile::nk(std::int64_t k) const noexcept { return std::sqrt(nk_squared(k)); }

double WeightProfile::weight(double x) const noexcept {
  const double fk = std::floor(x);
  const auto k = static_cast<std::int64_t>(fk);
  const double t = x - fk;
  if (t == 0.0) return nk_squared(k);
  return (1.0 - t) * nk_squared(k) + t * nk_squared(k + 1);
}

std::vector<double> WeightProfile::on_grid(const Grid& grid) const {
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = weight(grid.x(i));
  return w;
}

double weight(const Measure& mu, double x) {
  const double fk = std::floor(x);
  const auto k = static_cast<std::int64_t>(fk);
  const double t = x - fk;
  if (t == 0.0) return nk_squared(mu, k);
  return (1.0 - t) * nk_squared(mu, k) + t * nk_squared(mu, k + 1);
}

double weighted_l2_norm(const WaveField& f, const WeightProfile& profile) {
  const Grid& g = f.grid();
  const double h = g.dx();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::norm(f[i]) * profile.weight(g.x(i));
  s *= h;
  // w has slope jumps at the integers. A jump d at offset theta*h inside a
  // cell biases the periodic trapezoid by d |f|^2 h^2 (theta(1-theta)/2 - 1/12)
  // plus 2 d (|f|^2)' h^3 B3(theta)/6, B3 the cubic Bernoulli polynomial.
  const auto n = static_cast<std::int64_t>(g.size());
  const auto k_lo = static_cast<std::int64_t>(std::ceil(-g.half_length()));
  const auto k_hi = static_cast<std::int64_t>(std::ceil(g.half_length())) - 1;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const double d = profile.nk_squared(k + 1) - 2.0 * profile.nk_squared(k) + profile.nk_squared(k - 1);
    if (d == 0.0) continue;
    const double u = (static_cast<double>(k) + g.half_length()) / h;
    double cell = std::floor(u);
    double theta = u - cell;
    if (theta > 1.0 - 1e-9) {
      cell += 1.0;
      theta = 0.0;
    }
    if (theta < 1e-9) theta = 0.0;
    const auto i = static_cast<std::int64_t>(cell) % n;
    const double a0 = std::norm(f[static_cast<std::size_t>(i)]);
    const double a1 = std::norm(f[static_cast<std::size_t>((i + 1) % n)]);
    const double fk = (1.0 - theta) * a0 + theta * a1;
    const double b3 = theta * (theta * (theta - 1.5) + 0.5);
    s -= d * fk * h * h * (0.5 * theta * (1.0 - theta) - 1.0 / 12.0);
    s -= 2.0 * d * (a1 - a0) * h * h * b3 / 6.0;
  }
  return std::sqrt(std::max(0.0, s));
}

double weighted_l2_norm(const WaveField& f, const Measure& mu) {
  return weighted_l2_norm(f, WeightProfile(mu));
}

// ---------------------------------------------------------------------------
// Partition of unity

namespace {

// chi_{k0}(x) and chi_{k0+1}(x) for k0 = floor(x); all other chi_k vanish.
struct ChiPair {
  std::int64_t k0;
  double left;
  double right;
};

ChiPair chi_pair(double x) noexcept {
  const double fk = std::floor(x);
  const double u = x - fk;
  const double a = bump_profile(u);
  const double b = bump_profile(u - 1.0);
  const double total = a + b;
  return {static_cast<std::int64_t>(fk), a / total, b / total};
}

}  // namespace

double chi(double x, std::int64_t k) noexcept {
  const auto p = chi_pair(x);
  if (k == p.k0) return p.left;
  if (k == p.k0 + 1) return p.right;
  return 0.0;
}

double block_norm(const WaveField& f, const WeightProfile& profile) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto p = chi_pair(g.x(i));
    const double local = profile.nk_squared(p.k0) * p.left * p.left +
                         profile.nk_squared(p.k0 + 1) * p.right * p.right;
    s += std::norm(f[i]) * local;
  }
  return std::sqrt(s * g.dx());
}

double block_norm(const WaveField& f, const Measure& mu) { return block_norm(f, WeightProfile(mu)); }

double partition_l2_squared(const WaveField& f) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto p = chi_pair(g.x(i));
    s += std::norm(f[i]) * (p.left * p.left + p.right * p.right);
  }
  return s * g.dx();
}

void write_csv(std::ostream& os, const WeightProfile& profile) {
  csv::write_header(os, {"k", "nk_squared"});
  for (std::int64_t k = profile.k_min(); k <= profile.k_max(); ++k)
    csv::write_row(os, {static_cast<double>(k), profile.nk_squared(k)});
}

void write_weight_csv(std::ostream& os, const WeightProfile& profile, const Grid& grid) {
  csv::write_header(os, {"x", "w"});
  for (std::size_t i = 0; i < grid.size(); ++i)
    csv::write_row(os, {grid.x(i), profile.weight(grid.x(i))});
}

}  // namespace snls
