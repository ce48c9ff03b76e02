#include "snls/calibration.hpp"

#include <cmath>

#include "snls/rng.hpp"

namespace snls::calibration {

namespace {

Measure unit_atom() { return Measure(AtomicMeasure({-1.0, 1.0}, {{0.0, 1.0}})); }

}  // namespace

WaveField random_test_field(const Grid& grid, std::uint64_t seed) {
  rng::Engine eng(seed);
  struct Bump {
    double center, width;
    cplx amp;
  };
  std::vector<Bump> bumps;
  for (int j = 0; j < 6; ++j) {
    const double c = eng.uniform(-8.0, 8.0);
    const double w = eng.uniform(0.2, 2.0);
    const double re = eng.uniform(-1.0, 1.0);
    const double im = eng.uniform(-1.0, 1.0);
    bumps.push_back({c, w, cplx(re, im)});
  }
  return WaveField::from_function(grid, [&](double x) {
    cplx z = 0.0;
    for (const auto& b : bumps) z += b.amp * std::exp(-std::pow((x - b.center) / b.width, 2));
    return z;
  });
}

StabilityCase stability_case(std::uint64_t seed) {
  const Grid grid(16.0, 2048);
  StabilityParams p;
  p.deltas = {1e-2, 1e-3, 1e-4};
  p.eps = 0.2;
  p.solver = {1e-3, 1.0, 10};
  p.seed = seed;
  p.envelope_c = kStabilityC;
  return {WaveField::from_function(grid, [](double x) { return cplx(std::exp(-x * x)); }), unit_atom(), p};
}

MomentCase moment_case(std::uint64_t seed) {
  MomentParams p;
  p.n_samples = 10000;
  p.window = {-32.0, 32.0};
  p.reference_window = {-20.0, 20.0};
  p.seed = seed;
  p.first_moment_bound = kFirstMomentC;
  p.second_moment_bound = kSecondMomentC;
  p.n0_squared_regression = kN0SquaredRegression;
  return {moment_profiles(Grid(32.0, 1024)), p};
}

TailCase tail_case(double amplitude, double center, double width) {
  const Grid grid(16.0, 2048);
  auto f = [=](double x) { return cplx(amplitude * std::exp(-std::pow((x - center) / width, 2))); };
  return {WaveField::from_function(grid, f), unit_atom(), 0.2, 0.25};
}

}  // namespace snls::calibration
