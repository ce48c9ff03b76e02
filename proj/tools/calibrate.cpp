// Recomputes the frozen constants in snls/calibration.hpp and prints the
// replacement block. Run once after any change to the calibration setups.
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "snls/calibration.hpp"
#include "snls/mollify.hpp"
#include "snls/rng.hpp"

using namespace snls;

namespace {

double stability_constant() {
  auto c = calibration::stability_case(calibration::kCalibrationSeed);
  c.params.envelope_c = 0.0;
  const auto r = stability_study(c.psi0, c.mu, c.params);
  double r_max = 0.0, q_max = 0.0;
  const double T = c.params.solver.T;
  for (const auto& row : r.rows) {
    r_max = std::max(r_max, row[1]);
    q_max = std::max(q_max, row[2] * row[2] * (1.0 + row[2] * row[2]) * T * T);
  }
  std::fprintf(stderr, "stability: R_max %.6g, K^2(1+K^2)T^2 max %.6g\n", r_max, q_max);
  return envelope_constant(q_max, 2.0 * r_max);
}

void moment_constants(double& first, double& second, double& n0) {
  auto c = calibration::moment_case(calibration::kCalibrationSeed);
  c.params.first_moment_bound = c.params.second_moment_bound = c.params.n0_squared_regression = 0.0;
  const auto r = moment_study(c.profiles, c.params);
  const std::size_t np = c.profiles.size();
  first = second = 0.0;
  for (std::size_t j = 0; j < np; ++j) {
    first = std::max(first, r.rows[2 + j][1]);
    second = std::max(second, r.rows[2 + np + j][1]);
  }
  n0 = r.rows[0][1];
  std::fprintf(stderr, "moments: E[N0^2] %.6g +- %.2g, first %.6g, second %.6g\n", n0, r.rows[0][2], first,
               second);
  first *= 1.5;
  second *= 1.5;
}

double tail_constant() {
  const auto c = calibration::tail_case(1.0, 0.0, 1.0);
  double worst = 0.0;
  for (double T : {0.5, 1.0, 2.0}) {
    const auto traj = evolve_regularized(c.psi0, c.mu, c.eps, Variant::fully_truncated, {1e-3, T, 10});
    const auto r = tail_report(traj, c.lambda, c.mu, 0.0);
    double sup_h1_sq = 0.0;
    for (const auto& s : traj.states) sup_h1_sq = std::max(sup_h1_sq, std::pow(sobolev_norm(s, 1.0), 2));
    for (const auto& row : r.rows) {
      if (row[0] == 0.0) continue;
      const double scale = c.lambda * row[0] * sup_h1_sq;
      worst = std::max({worst, (row[1] - r.rows[0][1]) / scale, (row[2] - r.rows[0][2]) / scale});
    }
  }
  std::fprintf(stderr, "tail: max normalised growth %.6g\n", worst);
  return 1.5 * worst;
}

constexpr int kTrials = 100;

double gagliardo_nirenberg() {
  const Grid grid(32.0, 4096);
  double worst = 0.0;
  for (int i = 0; i < kTrials; ++i) {
    const auto f = calibration::random_test_field(grid, rng::substream_seed(calibration::kCalibrationSeed, i));
    worst = std::max(worst, sup_norm(f) / std::sqrt(l2_norm(f) * sobolev_norm(f, 1.0)));
  }
  return 1.5 * worst;
}

double bernstein() {
  const Grid grid(32.0, 4096);
  double worst = 0.0;
  for (int i = 0; i < kTrials; ++i) {
    const auto f = calibration::random_test_field(grid, rng::substream_seed(calibration::kCalibrationSeed, i));
    for (double n : {1.0, 2.0, 4.0, 8.0, 16.0})
      worst = std::max(worst, sup_norm(lp_project(f, n, LpMode::at_or_below)) / (std::sqrt(n) * l2_norm(f)));
  }
  return 1.5 * worst;
}

// sup |e^{it d_xx} f| sqrt(t) / ||f||_{L1} for a narrow bump, t in [0.1, 5].
void dispersive(double& lo, double& hi) {
  const Grid grid(32.0, 4096);
  const auto f = WaveField::from_function(grid, [](double x) { return cplx(mollifier(x, 0.1)); });
  double l1 = 0.0;
  for (const auto& v : f.values()) l1 += std::abs(v) * grid.dx();
  lo = INFINITY;
  hi = 0.0;
  for (double t = 0.1; t <= 5.0 + 1e-9; t += 0.1) {
    const double v = sup_norm(free_propagator(f, t)) * std::sqrt(t) / l1;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  lo /= 1.5;
  hi *= 1.5;
}

void partition(double& lo, double& hi) {
  const Grid grid(32.0, 4096);
  lo = INFINITY;
  hi = 0.0;
  for (int i = 0; i < kTrials; ++i) {
    const auto f = calibration::random_test_field(grid, rng::substream_seed(calibration::kCalibrationSeed, i));
    const double r = partition_l2_squared(f) / std::pow(l2_norm(f), 2);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  lo /= 1.5;
  hi *= 1.5;
}

// int chi_k dmu^eps / N_k over Poisson samples and eps in {1, 1/2, 1/4, 1/10}.
double mollifier_l1() {
  const Grid grid(32.0, 8192);
  double worst = 0.0;
  for (int i = 0; i < kTrials; ++i) {
    const Measure mu(sample_poisson(1.0, {-24.0, 24.0}, rng::substream_seed(calibration::kCalibrationSeed, i)));
    const WeightProfile weight(mu);
    for (double eps : {1.0, 0.5, 0.25, 0.1}) {
      const auto d = mollified_density(mu, eps, grid);
      for (std::int64_t k = -30; k <= 30; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) s += chi(grid.x(j), k) * d[j];
        worst = std::max(worst, s * grid.dx() / weight.nk(k));
      }
    }
  }
  return 1.5 * worst;
}

}  // namespace

int main() {
  const double stab = stability_constant();
  double first = 0.0, second = 0.0, n0 = 0.0;
  moment_constants(first, second, n0);
  const double tail = tail_constant();
  std::printf("inline constexpr double kStabilityC = %.6g;\n", stab);
  std::printf("inline constexpr double kFirstMomentC = %.6g;\n", first);
  std::printf("inline constexpr double kSecondMomentC = %.6g;\n", second);
  std::printf("inline constexpr double kN0SquaredRegression = %.6g;\n", n0);
  std::printf("inline constexpr double kTailC = %.6g;\n", tail);
  double dlo = 0.0, dhi = 0.0, plo = 0.0, phi = 0.0;
  dispersive(dlo, dhi);
  partition(plo, phi);
  std::printf("inline constexpr double kGagliardoNirenbergC = %.6g;\n", gagliardo_nirenberg());
  std::printf("inline constexpr double kBernsteinC = %.6g;\n", bernstein());
  std::printf("inline constexpr double kDispersiveLow = %.6g;\n", dlo);
  std::printf("inline constexpr double kDispersiveHigh = %.6g;\n", dhi);
  std::printf("inline constexpr double kPartitionLow = %.6g;\n", plo);
  std::printf("inline constexpr double kPartitionHigh = %.6g;\n", phi);
  std::printf("inline constexpr double kMollifierL1C = %.6g;\n", mollifier_l1());
}
