#include "snls/diagnostics.hpp"

#include <cmath>

#include "snls/errors.hpp"

namespace snls {

double mass(const WaveField& f) {
  double s = 0.0;
  for (auto v : f.values()) s += std::norm(v);
  return s * f.grid().dx();
}

double quartic_density_integral(const WaveField& f, const GriddedDensity& v) {
  require_same_grid(f.grid(), v.grid(), "quartic_density_integral");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::norm(f[i]);
    s += a * a * v[i];
  }
  return s * f.grid().dx();
}

double quartic_measure_integral(const WaveField& f, const Measure& mu) {
  double s = 0.0;
  if (!mu.atomic().empty()) {
    const SpectralInterpolant interp(f);
    const double L = f.grid().half_length();
    for (const auto& at : mu.atomic().atoms()) {
      double x = at.position;
      if (x == L) x = -L;
      if (!(x >= -L && x < L)) throw ArgumentError("quartic_measure_integral: atom outside the box");
      const double a = std::norm(interp(x));
      s += at.mass * a * a;
    }
  }
  if (mu.density()) s += quartic_density_integral(f, *mu.density());
  return s;
}

double energy(const WaveField& f, const GriddedDensity& v) {
  return 0.5 * gradient_l2_squared(f) + 0.5 * quartic_density_integral(f, v);
}

double energy(const WaveField& f, const Measure& mu) {
  return 0.5 * gradient_l2_squared(f) + 0.5 * quartic_measure_integral(f, mu);
}

}  // namespace snls
