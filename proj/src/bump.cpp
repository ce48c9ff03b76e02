#include "snls/bump.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace snls {
namespace {

// Cumulative integral F(u) = int_{-1}^{u} bump_profile on a uniform table
// over [-1, 0]; the right half follows from evenness. Between nodes F is
// reconstructed by cubic Hermite interpolation using the exact derivative.
class CumulativeTable {
 public:
  static constexpr std::size_t kIntervals = 4096;

  CumulativeTable() : values_(kIntervals + 1, 0.0) {
    using boost::math::quadrature::gauss;
    const double h = 1.0 / static_cast<double>(kIntervals);
    for (std::size_t i = 0; i < kIntervals; ++i) {
      const double a = -1.0 + static_cast<double>(i) * h;
      values_[i + 1] = values_[i] + gauss<double, 15>::integrate(bump_profile, a, a + h);
    }
    half_ = values_[kIntervals];
  }

  // F(u) for u in [-1, 0].
  double left(double u) const noexcept {
    if (u <= -1.0) return 0.0;
    const double h = 1.0 / static_cast<double>(kIntervals);
    const double pos = (u + 1.0) / h;
    auto i = static_cast<std::size_t>(pos);
    if (i >= kIntervals) return half_;
    const double a = -1.0 + static_cast<double>(i) * h;
    const double s = (u - a) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    const double v = h00 * values_[i] + h10 * h * bump_profile(a) + h01 * values_[i + 1] +
                     h11 * h * bump_profile(a + h);
    // F is increasing; the cubic can undershoot where F is ~1e-100 near u = -1.
    return std::clamp(v, values_[i], values_[i + 1]);
  }

  double half() const noexcept { return half_; }

 private:
  std::vector<double> values_;
  double half_ = 0.0;
};

const CumulativeTable& table() {
  static const CumulativeTable t;
  return t;
}

}  // namespace

double bump_profile(double x) noexcept {
  const double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

double bump_profile_integral() noexcept { return 2.0 * table().half(); }

double bump_normalization() noexcept {
  static const double c = 1.0 / bump_profile_integral();
  return c;
}

double bump(double x) noexcept { return bump_normalization() * bump_profile(x); }

double mollifier(double x, double eps) noexcept { return bump(x / eps) / eps; }

double smoothstep(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double u = 2.0 * t - 1.0;
  const auto& tab = table();
  // F(0) is exactly half the total, so S(1/2) = 1/2 bit-for-bit.
  if (u <= 0.0) return tab.left(u) / (2.0 * tab.half());
  return 1.0 - tab.left(-u) / (2.0 * tab.half());
}

double cutoff_profile(double x) noexcept {
  const double ax = std::abs(x);
  if (ax <= 1.0) return 1.0;
  if (ax >= 2.0) return 0.0;
  return 1.0 - smoothstep(ax - 1.0);
}

}  // namespace snls
