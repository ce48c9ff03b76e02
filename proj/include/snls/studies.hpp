#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "snls/measure.hpp"
#include "snls/point_process.hpp"
#include "snls/solver.hpp"

namespace snls {

/// Result of one desk-scale experiment. Row r of `rows` belongs to
/// parameters[r] when the study sweeps a parameter.
struct StudyReport {
  std::string name;
  std::string parameter_label;
  std::vector<double> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  double fitted_rate = 0.0;
  std::vector<std::pair<std::string, bool>> flags;
  std::vector<std::pair<std::string, double>> constants;

  bool all_pass() const noexcept;
  bool flag(const std::string& key) const;
  /// Throws NumericalError unless every row has columns.size() entries and
  /// the fitted rate is finite.
  void validate() const;
};

/// CSV with `columns` as header, one line per row.
void write_csv(std::ostream& os, const StudyReport& report);
/// {"name", "parameter", "parameters", "rate", "flags", "constants", "pass"}.
nlohmann::json to_json(const StudyReport& report);

/// Least-squares slope of log y against log x over pairs with x, y > 0.
/// Returns 0 when fewer than two such pairs exist.
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Per-record tail norms ||(1 - phi^lambda) psi(t)|| in L2 and L2_mu, with the
/// bound tail(t) <= tail(0) + c lambda t sup_s ||psi(s)||_{H1}^2 checked in both.
/// Columns t, tail_l2, tail_l2mu, bound_l2, bound_l2mu.
StudyReport tail_report(const Trajectory& traj, double lambda, const Measure& mu, double c);

struct EpsStudyParams {
  std::vector<double> eps{0.4, 0.2, 0.1, 0.05};
  Variant variant = Variant::mollified_only;
  SolverParams solver{};
  double points_per_eps = kDefaultPointsPerEps;
  /// When positive, the solve at scale e steps with dt = min(solver.dt, dt_scale e^2),
  /// shortened so the record interval solver.dt * record_every stays a whole number
  /// of steps; every solve then records at the same times.
  double dt_scale = 0.0;
};

/// D(eps) = sup over records of ||psi_eps - psi_{eps/2}|| in H1, L2_mu and
/// their sum, for every eps of a halving ladder (one extra solve at
/// eps_min / 2). Columns eps, d_h1, d_l2mu, d_sum; rate is the log-log slope of
/// d_sum. Flags: strictly_decreasing, halved (D(eps_min) < D(eps_max) / 2).
/// Throws ArgumentError unless T is a whole number of record intervals when
/// dt_scale is set.
StudyReport eps_convergence_study(const WaveField& psi0, const Measure& mu, const EpsStudyParams& params);

struct StabilityParams {
  std::vector<double> deltas{1e-2, 1e-3, 1e-4};
  double eps = 0.2;
  Variant variant = Variant::mollified_only;
  SolverParams solver{};
  double points_per_eps = kDefaultPointsPerEps;
  std::uint64_t seed = 0;
  double envelope_c = 0.0;
};

/// Smooth random field: eight complex Gaussian bumps of unit width centred
/// in [-4, 4], normalised to unit H1 norm.
WaveField random_smooth_field(const Grid& grid, std::uint64_t seed);

/// R(delta) = sup_t ||psi - phi||_{H^-1} / delta for phi(0) = psi0 + delta g,
/// K = sup_t [||psi||_{H1} ||psi||_{L2_mu} + ||phi||_{H1} ||phi||_{L2_mu}] and
/// the envelope C exp(C K^2 (1 + K^2) T^2). delta = 0 is allowed and
/// reported as an exact-match row (r = 0). Columns delta, r, k, envelope,
/// exact_match. Flags: bounded, linear_response (max R / min R < 2).
StudyReport stability_study(const WaveField& psi0, const Measure& mu, const StabilityParams& params);

/// Smallest C with C exp(C q) >= target (q >= 0, target > 0), by bisection.
double envelope_constant(double q, double target);

/// The three profiles used by the moment checks: exp(-x^2), exp(-(x/4)^2)
/// and sech(x - 3).
std::vector<WaveField> moment_profiles(const Grid& grid);

struct MomentParams {
  std::size_t n_samples = 10000;
  Interval window{-32.0, 32.0};
  Interval reference_window{-20.0, 20.0};
  double intensity = 1.0;
  std::uint64_t seed = 0;
  double first_moment_bound = 0.0;
  double second_moment_bound = 0.0;
  double n0_squared_regression = 0.0;
};

/// Monte-Carlo moments over Poisson samples. Rows (columns quantity,
/// estimate, stderr, half_estimate, bound):
///   0      E[N_0^2] on the window
///   1      E[N_0^2] on the reference window
///   2+j    E||f_j||^2_{L2_mu} / ||f_j||^2
///   2+P+j  E||f_j||^4_{L2_mu} / ||f_j||^4
/// half_estimate uses the first half of the samples. Flags: stabilized
/// (relative change < 2% on doubling for every row), window_independent
/// (rows 0 and 1 within 3 combined stderr), first_moment_bounded,
/// second_moment_bounded, regression (row 0 within 4 stderr of the frozen
/// value; skipped when that value is 0).
StudyReport moment_study(const std::vector<WaveField>& profiles, const MomentParams& params);

struct LaplaceParams {
  std::size_t n_samples = 100000;
  Interval count_window{0.0, 10.0};
  std::vector<double> heights{0.5, 1.0, 2.0};
  std::vector<double> bernoulli_spacings{0.25, 1.0 / 16.0, 1.0 / 64.0};
  std::vector<std::size_t> canonical_sizes{10, 100, 1000};
  double quadrature_step = 1e-3;
  std::uint64_t seed = 0;
};

/// Point-process statistics. The test function is c times a smoothed
/// indicator of [a + 1, b - 1] (ramp 0.05) for count_window [a, b].
/// Rows (columns kind, parameter, value, reference, gap, stderr):
///   kind 0  Poisson count mean on the window          (reference |window|)
///   kind 1  Poisson count variance                    (reference |window|)
///   kind 2  empirical Poisson Laplace functional at c (reference closed form)
///   kind 3  Bernoulli crystal h = p, closed-form LF   (reference Poisson LF, c = 1)
///   kind 4  canonical n = |Lambda|, closed-form LF    (reference Poisson LF, c = 1)
/// Canonical boxes are centred on the window. Flags: count_mean,
/// count_variance (within 4 stderr), poisson_lf (within 3 stderr),
/// bernoulli_ladder, canonical_ladder (gaps strictly decreasing).
StudyReport laplace_study(const LaplaceParams& params);

}  // namespace snls
