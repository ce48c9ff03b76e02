#include <doctest.h>

#include <cmath>
#include <sstream>

#include "snls/diagnostics.hpp"
#include "snls/errors.hpp"
#include "snls/mollify.hpp"
#include "snls/solver.hpp"
#include "snls/studies.hpp"

using namespace snls;

namespace {

WaveField gaussian(const Grid& g, double center = 0.0) {
  return WaveField::from_function(g, [center](double x) { return cplx(std::exp(-(x - center) * (x - center))); });
}

GriddedDensity smooth_potential(const Grid& g, double height) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = height * std::exp(-g.x(i) * g.x(i) / 2.0);
  return GriddedDensity(g, v);
}

double distance(const WaveField& a, const WaveField& b) { return l2_norm(a - b); }

}  // namespace

TEST_CASE("solver parameter validation") {
  CHECK_NOTHROW(validate(SolverParams{1e-3, 1.0, 10}));
  CHECK_NOTHROW(validate(SolverParams{-1e-3, 0.5, 1}));
  CHECK_THROWS_AS(validate(SolverParams{0.0, 1.0, 10}), ArgumentError);
  CHECK_THROWS_AS(validate(SolverParams{1e-3, 0.0, 10}), ArgumentError);
  CHECK_THROWS_AS(validate(SolverParams{0.2, 1.0, 10}), ArgumentError);
  CHECK_THROWS_AS(validate(SolverParams{0.05, 0.01, 10}), ArgumentError);
  CHECK_THROWS_AS(validate(SolverParams{1e-3, 1.0, 0}), ArgumentError);
  CHECK_THROWS_AS(validate(SolverParams{0.3e-3, 1.0, 1}), ArgumentError);
  CHECK(step_count(SolverParams{1e-3, 1.0, 10}) == 1000);
  CHECK(step_count(SolverParams{-2.5e-5, 0.5, 10}) == 20000);
}

TEST_CASE("nonlinear step is an exact phase rotation") {
  const Grid g(4.0, 16);
  const WaveField one = WaveField::from_function(g, [](double) { return cplx(2.0, 0.0); });
  const GriddedDensity v(g, std::vector<double>(16, 0.25));
  const auto out = nonlinear_step(one, v, 0.1);
  // |psi|^2 = 4, so the phase is -2 * 0.25 * 4 * 0.1 = -0.2.
  for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(out[i] - std::polar(2.0, -0.2)) < 1e-15);
  const auto zero = nonlinear_step(one, GriddedDensity(g), 0.1);
  CHECK(zero.values() == one.values());
  const auto back = nonlinear_step(out, v, -0.1);
  for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(back[i] - one[i]) < 1e-15);
  CHECK_THROWS_AS(nonlinear_step(one, GriddedDensity(Grid(4.0, 32)), 0.1), ArgumentError);
}

TEST_CASE("strang step without potential is the free flow") {
  const Grid g(16.0, 512);
  const auto f = gaussian(g, 1.0);
  CHECK(distance(strang_step(f, GriddedDensity(g), 0.05), free_propagator(f, 0.05)) < 1e-14);
  const auto traj = evolve(f, GriddedDensity(g), SolverParams{1e-2, 1.0, 25});
  CHECK(traj.times.size() == 5);
  CHECK(traj.times.back() == doctest::Approx(1.0));
  CHECK(distance(traj.final_state(), free_propagator(f, 1.0)) < 1e-12);
}

TEST_CASE("strang local error is third order against the runge-kutta oracle") {
  const Grid g(16.0, 256);
  const auto f = gaussian(g);
  const auto v = smooth_potential(g, 2.0);
  const double fine = 0.25 * g.dx() * g.dx();
  std::vector<double> err;
  for (double dt : {0.04, 0.02, 0.01}) err.push_back(distance(strang_step(f, v, dt), oracle_evolve(f, v, dt, fine)));
  for (std::size_t i = 1; i < err.size(); ++i) {
    const double ratio = err[i - 1] / err[i];
    CHECK(ratio > 6.0);
    CHECK(ratio < 10.0);
  }
}

TEST_CASE("mass is conserved to round-off") {
  const Grid g(16.0, 2048);
  const auto f = gaussian(g);
  const Measure mu(AtomicMeasure({-16.0, 16.0}, {{0.0, 1.0}, {1.3, 1.0}, {-2.2, 1.0}}));
  const auto traj = evolve_regularized(f, mu, 0.2, Variant::mollified_only, SolverParams{1e-3, 1.0, 50});
  const double m0 = traj.diagnostics.front().mass;
  for (const auto& r : traj.diagnostics) CHECK(std::abs(r.mass - m0) / m0 < 1e-9);
}

TEST_CASE("time reversal and gauge covariance") {
  const Grid g(16.0, 2048);
  const auto f = gaussian(g, 0.5);
  const Measure mu(AtomicMeasure({-16.0, 16.0}, {{0.0, 1.0}, {0.7, 2.0}}));
  const auto v = mollified_density(mu, 0.2, g);
  const auto fwd = evolve(f, v, SolverParams{1e-3, 0.5, 100}).final_state();
  const auto back = evolve(fwd, v, SolverParams{-1e-3, 0.5, 100}).final_state();
  CHECK(distance(back, f) < 1e-8);

  const cplx phase = std::polar(1.0, 0.9);
  const auto rotated = evolve(phase * f, v, SolverParams{1e-3, 0.5, 100}).final_state();
  CHECK(distance(rotated, phase * fwd) < 1e-12);
}

TEST_CASE("runge-kutta oracle") {
  const Grid g(16.0, 256);
  const auto f = gaussian(g);
  const double fine = 0.25 * g.dx() * g.dx();
  // A single Fourier mode under zero potential has a closed form.
  const double xi = g.xi(5);
  const auto mode = WaveField::from_function(g, [xi](double x) { return std::polar(1.0, xi * x); });
  const auto moved = oracle_evolve(mode, GriddedDensity(g), 0.3, fine);
  const auto exact = WaveField::from_function(g, [xi](double x) { return std::polar(1.0, xi * x - xi * xi * 0.3); });
  CHECK(distance(moved, exact) < 1e-10);
  // A constant under a constant potential rotates at rate 2 V |c|^2.
  const auto c = WaveField::from_function(g, [](double) { return cplx(0.5, 0.0); });
  const GriddedDensity flat(g, std::vector<double>(g.size(), 3.0));
  const auto turned = oracle_evolve(c, flat, 0.4, fine);
  for (std::size_t i = 0; i < g.size(); i += 31) CHECK(std::abs(turned[i] - std::polar(0.5, -2.0 * 3.0 * 0.25 * 0.4)) < 1e-10);
  CHECK(oracle_evolve(f, flat, 0.0, fine).values() == f.values());

  const auto v = smooth_potential(g, 1.0);
  const auto split = evolve(f, v, SolverParams{1e-4, 0.5, 5000}).final_state();
  CHECK(distance(split, oracle_evolve(f, v, 0.5, fine)) < 1e-6);

  CHECK_THROWS_AS(oracle_evolve(f, v, 0.5, 0.05), OracleInstabilityError);
  CHECK_THROWS_AS(oracle_evolve(f, v, 0.5, 0.0), ArgumentError);
}

TEST_CASE("non-finite states are reported with their step") {
  const Grid g(4.0, 16);
  const auto big = WaveField::from_function(g, [](double) { return cplx(10.0, 0.0); });
  const GriddedDensity huge(g, std::vector<double>(g.size(), 1e308));
  try {
    evolve(big, huge, SolverParams{1e-3, 0.01, 5});
    FAIL("expected a blow-up");
  } catch (const BlowUpError& e) {
    CHECK(e.step() >= 1);
    CHECK(e.step() <= 10);
  }
}

TEST_CASE("regularized variants agree when the measure sits inside the cutoff plateau") {
  const Grid g(16.0, 2048);
  const auto f = gaussian(g);
  const Measure mu(AtomicMeasure({-16.0, 16.0}, {{-1.0, 1.0}, {0.2, 1.0}, {2.4, 1.0}}));
  const SolverParams p{1e-3, 0.2, 50};
  const auto a = evolve_regularized(f, mu, 0.2, Variant::fully_truncated, p);
  const auto b = evolve_regularized(f, mu, 0.2, Variant::mollified_only, p);
  CHECK(distance(a.final_state(), b.final_state()) < 1e-14);
  REQUIRE(a.diagnostics.back().quartic_mu.has_value());
  CHECK(*a.diagnostics.back().quartic_mu > 0.0);
}

TEST_CASE("an empty measure gives free evolution") {
  const Grid g(16.0, 2048);
  const auto f = gaussian(g);
  const Measure empty(AtomicMeasure({-16.0, 16.0}));
  const auto traj = evolve_regularized(f, empty, 0.2, Variant::fully_truncated, SolverParams{1e-3, 0.5, 100});
  CHECK(distance(traj.final_state(), free_propagator(f, 0.5)) < 1e-12);
  const double e0 = 0.5 * gradient_l2_squared(f);
  for (const auto& r : traj.diagnostics) {
    CHECK(r.energy == doctest::Approx(e0).epsilon(1e-10));
    CHECK(*r.quartic_mu == 0.0);
  }
}

TEST_CASE("single-atom differences shrink along the ladder") {
  const Grid g(8.0, 4096);
  const auto f = gaussian(g);
  const Measure mu(AtomicMeasure({-8.0, 8.0}, {{0.0, 1.0}}));
  EpsStudyParams p;
  p.eps = {0.4, 0.2, 0.1};
  p.solver = SolverParams{1e-4, 0.25, 500};
  const auto rep = eps_convergence_study(f, mu, p);
  CHECK(rep.flag("strictly_decreasing"));
  CHECK(rep.rows.size() == 3);
}

TEST_CASE("diagnostics csv exports") {
  const Grid g(8.0, 256);
  const Measure mu(AtomicMeasure({-8.0, 8.0}, {{0.0, 1.0}}));
  const auto traj = evolve_regularized(gaussian(g), mu, 0.5, Variant::mollified_only, SolverParams{1e-2, 0.1, 5});
  std::ostringstream a, b;
  write_diagnostics_csv(a, traj);
  write_reference_csv(b, traj);
  CHECK(a.str().rfind("t,mass,energy,h1,l2mu,sup\n0,", 0) == 0);
  CHECK(b.str().rfind("t,quartic_mu,energy_mu\n0,", 0) == 0);
  std::ostringstream c;
  write_reference_csv(c, evolve(gaussian(g), GriddedDensity(g), SolverParams{1e-2, 0.1, 5}));
  CHECK(c.str() == "t,quartic_mu,energy_mu\n");
}
