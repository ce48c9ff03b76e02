// Desk-scale acceptance run: one PASS/FAIL line per criterion, tolerances and
// seeds fixed below. Exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "snls/calibration.hpp"
#include "snls/diagnostics.hpp"
#include "snls/measure.hpp"
#include "snls/mollify.hpp"
#include "snls/point_process.hpp"
#include "snls/rng.hpp"
#include "snls/solver.hpp"
#include "snls/studies.hpp"

using namespace snls;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget_s <= 0.0 || sec < budget_s;
  const bool ok = r.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s %s %s [%.1f s%s]\n", id, ok ? "PASS" : "FAIL", r.detail.c_str(), sec,
              in_time ? "" : ", over budget");
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

WaveField gaussian(const Grid& g) {
  return WaveField::from_function(g, [](double x) { return cplx(std::exp(-x * x)); });
}

// --- AC1 -------------------------------------------------------------------

Outcome weight_laws() {
  constexpr std::size_t kSamples = 1000;
  constexpr double kTol = 1e-12;
  const Interval window{-32.0, 32.0};
  const Grid grid(32.0, 4096);
  std::size_t bad = 0;
  for (std::size_t s = 0; s < kSamples; ++s) {
    const Measure mu(sample_poisson(1.0, window, rng::substream_seed(0xac1, s)));
    const WeightProfile p(mu);
    bool ok = true;
    for (std::int64_t k = -34; k <= 34; ++k) {
      ok = ok && p.nk(k) >= 2.0;
      ok = ok && std::abs(p.nk_squared(k) - p.nk_squared(k + 1)) <= 1.0 + kTol;
      ok = ok && interval_mass(mu, k) <= p.nk(k) + kTol;
      ok = ok && p.weight(static_cast<double>(k)) == p.nk_squared(k);
    }
    // Integers are grid nodes, so adjacent-pair Lipschitz bounds give every pair;
    // a strided set of distant pairs is checked directly as well.
    const auto w = p.on_grid(grid);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) ok = ok && std::abs(w[i + 1] - w[i]) <= grid.dx() + kTol;
    for (std::size_t i = 0; i < w.size(); i += 61)
      for (std::size_t j = i + 1; j < w.size(); j += 127)
        ok = ok && std::abs(w[j] - w[i]) <= std::abs(grid.x(j) - grid.x(i)) + kTol;
    if (!ok) ++bad;
  }
  return {bad == 0, fmt("weight laws: %zu of %zu samples violate", bad, kSamples)};
}

// --- AC2 -------------------------------------------------------------------

Outcome conservation() {
  constexpr std::size_t kSamples = 10;
  constexpr double kMassTol = 1e-9;
  constexpr double kRatioLo = 3.2, kRatioHi = 4.8;
  const Grid grid(32.0, 4096);
  const auto psi0 = gaussian(grid);
  double worst_mass = 0.0, rmin = INFINITY, rmax = 0.0;
  std::size_t ratio_bad = 0;
  for (std::size_t s = 0; s < kSamples; ++s) {
    const Measure mu(sample_poisson(1.0, {-32.0, 32.0}, rng::substream_seed(2024, s)));
    std::array<double, 2> drift{};
    for (int half = 0; half < 2; ++half) {
      const double dt = half ? 5e-4 : 1e-3;
      const SolverParams p{dt, 1.0, half ? 20u : 10u};
      // The grid gives 6.4 points per eps at eps = 0.1.
      const auto traj = evolve_regularized(psi0, mu, 0.1, Variant::fully_truncated, p, 6.4);
      const auto& d0 = traj.diagnostics.front();
      for (const auto& r : traj.diagnostics) {
        worst_mass = std::max(worst_mass, std::abs(r.mass - d0.mass) / d0.mass);
        drift[half] = std::max(drift[half], std::abs(r.energy - d0.energy) / std::abs(d0.energy));
      }
    }
    const double ratio = drift[0] / drift[1];
    rmin = std::min(rmin, ratio);
    rmax = std::max(rmax, ratio);
    if (!(ratio >= kRatioLo && ratio <= kRatioHi)) ++ratio_bad;
  }
  const bool ok = worst_mass < kMassTol && ratio_bad == 0;
  return {ok, fmt("conservation: max mass drift %.2e (< %.0e), energy halving ratio in [%.2f, %.2f], "
                  "%zu of %zu outside [%.1f, %.1f]",
                  worst_mass, kMassTol, rmin, rmax, ratio_bad, kSamples, kRatioLo, kRatioHi)};
}

// --- AC3 -------------------------------------------------------------------

Outcome free_gaussian() {
  constexpr double kTol = 1e-10;
  const Grid grid(32.0, 4096);
  const auto traj = evolve(gaussian(grid), GriddedDensity(grid), SolverParams{1e-3, 1.0, 100});
  const auto exact = WaveField::from_function(grid, [](double x) {
    const cplx a(1.0, 4.0);
    return std::exp(-x * x / a) / std::sqrt(a);
  });
  const double err = l2_norm(traj.final_state() - exact);
  return {err < kTol, fmt("free evolution: L2 error %.2e at T = 1 (< %.0e)", err, kTol)};
}

// --- AC4 -------------------------------------------------------------------

Outcome cross_validation() {
  constexpr double kTol = 1e-6;
  const Grid grid(16.0, 512);
  const Measure mu(AtomicMeasure({-16.0, 16.0}, {{0.0, 1.0}}));
  // 3.2 points per eps on this grid.
  const auto v = mollified_density(mu, 0.2, grid, 3.2);
  const auto psi0 = gaussian(grid);
  const auto split = evolve(psi0, v, SolverParams{1e-4, 0.1, 1000}).final_state();
  // RK4 at the stability-limited step 0.25 dx^2 is itself off by ~2e-4 in the
  // top modes fed by the under-resolved spike; dx^2 / 64 is converged to ~5e-8.
  const auto oracle = oracle_evolve(psi0, v, 0.1, grid.dx() * grid.dx() / 64.0);
  const double d = l2_norm(split - oracle);
  return {d < kTol, fmt("split-step vs RK4 oracle: L2 distance %.2e (< %.0e)", d, kTol)};
}

// --- AC5 -------------------------------------------------------------------

Outcome eps_convergence() {
  constexpr std::size_t kSamples = 10;
  constexpr double kRateTarget = 0.4;
  const Grid grid(8.0, 8192);
  const auto psi0 = gaussian(grid);
  EpsStudyParams p;
  p.eps = {0.4, 0.2, 0.1, 0.05};
  p.variant = Variant::mollified_only;
  // Records every 0.01; the step shrinks like eps^2 down to 3.125e-6 at the
  // extra eps = 0.025 solve, where D is converged in dt to ~3e-4.
  p.solver = SolverParams{2e-4, 0.5, 50};
  p.dt_scale = 0.005;
  std::size_t bad = 0;
  double rate_sum = 0.0;
  for (std::size_t s = 0; s < kSamples; ++s) {
    const Measure mu(sample_poisson(1.0, {-8.0, 8.0}, rng::substream_seed(77, s)));
    const auto rep = eps_convergence_study(psi0, mu, p);
    if (!rep.flag("strictly_decreasing") || !rep.flag("halved")) ++bad;
    rate_sum += rep.fitted_rate;
  }
  const double mean_rate = rate_sum / kSamples;
  return {bad == 0, fmt("eps convergence: %zu of %zu samples not strictly decreasing or not halved; "
                        "mean rate %.3f (target >= %.1f, reported only)",
                        bad, kSamples, mean_rate, kRateTarget)};
}

// --- AC6 -------------------------------------------------------------------

Outcome stability() {
  const auto c = calibration::stability_case(0xac6);
  const auto rep = stability_study(c.psi0, c.mu, c.params);
  double rmin = INFINITY, rmax = 0.0, env = 0.0;
  for (const auto& row : rep.rows) {
    rmin = std::min(rmin, row[1]);
    rmax = std::max(rmax, row[1]);
    env = std::max(env, row[3]);
  }
  const bool ok = rep.flag("linear_response") && rep.flag("bounded");
  return {ok, fmt("stability: R in [%.4g, %.4g], spread %.3f (< 2), envelope %.4g", rmin, rmax, rmax / rmin, env)};
}

// --- AC7 -------------------------------------------------------------------

Outcome point_process_statistics() {
  LaplaceParams p;
  p.n_samples = 100000;
  p.seed = 0xac7;
  const auto rep = laplace_study(p);
  std::string failed;
  for (const auto& [k, v] : rep.flags)
    if (!v) failed += " " + k;
  return {rep.all_pass(), "point process: " + (failed.empty() ? std::string("all flags hold") : "failed:" + failed)};
}

// --- AC8 -------------------------------------------------------------------

Outcome moments() {
  const auto c = calibration::moment_case(0xac8);
  const auto rep = moment_study(c.profiles, c.params);
  const std::size_t np = c.profiles.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < np; ++j) worst = std::max(worst, rep.rows[2 + j][1]);
  const bool ok = rep.flag("stabilized") && rep.flag("first_moment_bounded");
  return {ok, fmt("moments: E[N0^2] = %.4f, stabilized %s, max first moment %.4f (<= %.4f)", rep.rows[0][1],
                  rep.flag("stabilized") ? "yes" : "no", worst, calibration::kFirstMomentC)};
}

// --- AC9 -------------------------------------------------------------------

Outcome mollification_consistency() {
  constexpr std::size_t kPairs = 100;
  const Grid grid(8.0, 4096);
  const std::vector<double> eps{0.4, 0.2, 0.1, 0.05};
  std::size_t bad = 0;
  std::string which;
  for (std::size_t s = 0; s < kPairs; ++s) {
    rng::Engine e(rng::substream_seed(99, s));
    const int nb = 1 + static_cast<int>(e.uniform() * 3.0);
    std::vector<std::array<double, 4>> bumps;
    for (int i = 0; i < nb; ++i) {
      std::array<double, 4> q{};
      q[0] = e.uniform(-2.0, 2.0);
      q[1] = e.uniform(0.5, 1.5);
      q[2] = e.uniform(-1.0, 1.0);
      q[3] = e.uniform(-1.0, 1.0);
      bumps.push_back(q);
    }
    const auto f = WaveField::from_function(grid, [&](double x) {
      cplx z = 0.0;
      for (const auto& q : bumps) z += cplx(q[2], q[3]) * std::exp(-std::pow((x - q[0]) / q[1], 2));
      return z;
    });
    const Measure mu(sample_poisson(1.0, {-2.5, 2.5}, rng::substream_seed(98, s)));
    const double ref = quartic_measure_integral(f, mu);
    double prev = INFINITY;
    bool ok = true;
    for (double ep : eps) {
      const double gap = std::abs(quartic_density_integral(f, mollified_density(mu, ep, grid)) - ref);
      ok = ok && gap <= prev;
      prev = gap;
    }
    if (!ok) {
      ++bad;
      which += " " + std::to_string(s);
    }
  }
  return {bad == 0, fmt("mollification gap monotone: %zu of %zu pairs not monotone%s%s", bad, kPairs,
                        which.empty() ? "" : " (pairs", which.empty() ? "" : (which + ")").c_str())};
}

// --- AC10 ------------------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SNLS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / ("snls_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string small =
      "--override domain.L=8 --override domain.N=4096 --override solver.T=0.1 --override solver.record_every=20 "
      "--override solve.eps=0.4 --override eps.ladder=0.4,0.2,0.1 --override measure.window=-4,4";
  const std::vector<std::pair<std::string, std::string>> commands{
      {"sample", "--seed 7 --override domain.L=32 --override domain.N=16384 --override measure.window=-32,32 sample"},
      {"solve", "--seed 11 " + small + " solve"},
      {"eps", "--seed 11 " + small + " study eps"},
      {"laplace", "--seed 12 --override laplace.samples=5000 study laplace"},
      {"moments", "--seed 13 --override moments.samples=1000 --override domain.N=1024 --override eps.ladder=0.4 --override solve.eps=0.4 study moments"},
  };
  std::size_t compared = 0;
  std::string bad;
  for (const auto& [name, args] : commands) {
    const fs::path a = root / (name + "_a"), b = root / (name + "_b");
    const int ca = run_cli("--out " + a.string() + " " + args);
    const int cb = run_cli("--out " + b.string() + " " + args);
    if (ca != cb || (ca != 0 && ca != 5)) {
      bad += " " + name + "(exit " + std::to_string(ca) + "/" + std::to_string(cb) + ")";
      continue;
    }
    for (const auto& entry : fs::directory_iterator(a)) {
      if (entry.path().extension() != ".csv") continue;
      ++compared;
      if (slurp(entry.path()) != slurp(b / entry.path().filename()))
        bad += " " + name + "/" + entry.path().filename().string();
    }
  }
  fs::remove_all(root);
  return {bad.empty() && compared > 0,
          fmt("determinism: %zu CSV payloads compared%s%s", compared, bad.empty() ? "" : ", differing:", bad.c_str())};
}

}  // namespace

int main() {
  criterion("AC1", 10.0, weight_laws);
  criterion("AC2", 120.0, conservation);
  criterion("AC3", 5.0, free_gaussian);
  criterion("AC4", 30.0, cross_validation);
  criterion("AC5", 600.0, eps_convergence);
  criterion("AC6", 180.0, stability);
  criterion("AC7", 60.0, point_process_statistics);
  criterion("AC8", 60.0, moments);
  criterion("AC9", 30.0, mollification_consistency);
  criterion("AC10", 0.0, determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
