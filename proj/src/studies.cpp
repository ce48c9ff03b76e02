#include "snls/studies.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "snls/csv.hpp"
#include "snls/errors.hpp"
#include "snls/mollify.hpp"
#include "snls/parallel.hpp"
#include "snls/rng.hpp"

namespace snls {

bool StudyReport::all_pass() const noexcept {
  return std::all_of(flags.begin(), flags.end(), [](const auto& f) { return f.second; });
}

bool StudyReport::flag(const std::string& key) const {
  for (const auto& [k, v] : flags)
    if (k == key) return v;
  throw ArgumentError("StudyReport: no flag named " + key);
}

void StudyReport::validate() const {
  for (const auto& row : rows)
    if (row.size() != columns.size()) throw NumericalError("StudyReport " + name + ": ragged metric table");
  if (!std::isfinite(fitted_rate)) throw NumericalError("StudyReport " + name + ": non-finite rate");
}

void write_csv(std::ostream& os, const StudyReport& report) {
  report.validate();
  for (std::size_t j = 0; j < report.columns.size(); ++j) os << (j ? "," : "") << report.columns[j];
  os << '\n';
  for (const auto& row : report.rows) csv::write_row(os, row);
}

nlohmann::json to_json(const StudyReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["parameter"] = report.parameter_label;
  j["parameters"] = report.parameters;
  j["rate"] = report.fitted_rate;
  j["flags"] = nlohmann::json::object();
  for (const auto& [k, v] : report.flags) j["flags"][k] = v;
  j["constants"] = nlohmann::json::object();
  for (const auto& [k, v] : report.constants) j["constants"][k] = v;
  j["pass"] = report.all_pass();
  return j;
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ArgumentError("fit_log_slope: length mismatch");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double dn = static_cast<double>(n);
  const double den = dn * sxx - sx * sx;
  if (den == 0.0) return 0.0;
  return (dn * sxy - sx * sy) / den;
}

// ---------------------------------------------------------------------------
// Tails

StudyReport tail_report(const Trajectory& traj, double lambda, const Measure& mu, double c) {
  if (!(lambda > 0.0) || lambda > 1.0) throw ArgumentError("tail_report: lambda must lie in (0, 1]");
  if (traj.states.empty()) throw ArgumentError("tail_report: empty trajectory");
  const WeightProfile weight(mu);
  const Grid& grid = traj.states.front().grid();
  std::vector<double> outside(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) outside[i] = 1.0 - cutoff(grid.x(i), lambda);

  double sup_h1_sq = 0.0;
  for (const auto& s : traj.states) sup_h1_sq = std::max(sup_h1_sq, std::pow(sobolev_norm(s, 1.0), 2));

  StudyReport r;
  r.name = "tail";
  r.parameter_label = "t";
  r.columns = {"t", "tail_l2", "tail_l2mu", "bound_l2", "bound_l2mu"};
  bool ok = true;
  double tail0 = 0.0, tail0_mu = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    WaveField tail = traj.states[k];
    for (std::size_t i = 0; i < grid.size(); ++i) tail[i] *= outside[i];
    const double a = l2_norm(tail), b = weighted_l2_norm(tail, weight);
    if (k == 0) {
      tail0 = a;
      tail0_mu = b;
    }
    const double growth = c * lambda * std::abs(traj.times[k]) * sup_h1_sq;
    const double bound = tail0 + growth, bound_mu = tail0_mu + growth;
    ok = ok && a <= bound && b <= bound_mu;
    r.parameters.push_back(traj.times[k]);
    r.rows.push_back({traj.times[k], a, b, bound, bound_mu});
  }
  r.flags = {{"bounded", ok}};
  r.constants = {{"tail_c", c}, {"lambda", lambda}};
  return r;
}

// ---------------------------------------------------------------------------
// Epsilon convergence

StudyReport eps_convergence_study(const WaveField& psi0, const Measure& mu, const EpsStudyParams& params) {
  const auto& eps = params.eps;
  if (eps.size() < 3) throw ArgumentError("eps_convergence_study: need at least 3 eps values");
  for (std::size_t i = 0; i + 1 < eps.size(); ++i)
    if (std::abs(eps[i + 1] * 2.0 - eps[i]) > 1e-12 * eps[i])
      throw ArgumentError("eps_convergence_study: eps ladder must halve");
  validate(params.solver);

  std::vector<double> ladder = eps;
  ladder.push_back(0.5 * eps.back());
  for (double e : ladder) check_resolution(psi0.grid(), e, params.points_per_eps);

  std::vector<SolverParams> steps(ladder.size(), params.solver);
  if (params.dt_scale > 0.0) {
    const double interval = std::abs(params.solver.dt) * static_cast<double>(params.solver.record_every);
    const double records = params.solver.T / interval;
    if (std::abs(records - std::round(records)) > 1e-9 * records)
      throw ArgumentError("eps_convergence_study: T must be a whole number of record intervals");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const double target = std::min(std::abs(params.solver.dt), params.dt_scale * ladder[i] * ladder[i]);
      const auto n = static_cast<std::size_t>(std::ceil(interval / target - 1e-9));
      steps[i].dt = std::copysign(interval / static_cast<double>(n), params.solver.dt);
      steps[i].record_every = n;
    }
  }
  for (const auto& s : steps) validate(s);

  std::vector<Trajectory> runs(ladder.size());
  parallel_for(ladder.size(), [&](std::size_t i) {
    runs[i] = evolve_regularized(psi0, mu, ladder[i], params.variant, steps[i], params.points_per_eps);
  });

  const WeightProfile weight(mu);
  StudyReport r;
  r.name = "eps";
  r.parameter_label = "eps";
  r.parameters = eps;
  r.columns = {"eps", "d_h1", "d_l2mu", "d_sum"};
  std::vector<double> d_sum;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double dh = 0.0, dm = 0.0, ds = 0.0;
    for (std::size_t k = 0; k < runs[i].states.size(); ++k) {
      const WaveField d = runs[i].states[k] - runs[i + 1].states[k];
      const double h = sobolev_norm(d, 1.0), m = weighted_l2_norm(d, weight);
      dh = std::max(dh, h);
      dm = std::max(dm, m);
      ds = std::max(ds, h + m);
    }
    r.rows.push_back({eps[i], dh, dm, ds});
    d_sum.push_back(ds);
  }
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < d_sum.size(); ++i) decreasing = decreasing && d_sum[i + 1] < d_sum[i];
  r.fitted_rate = fit_log_slope(eps, d_sum);
  r.flags = {{"strictly_decreasing", decreasing}, {"halved", d_sum.back() < 0.5 * d_sum.front()}};
  r.constants = {{"dt", params.solver.dt}, {"T", params.solver.T}, {"dt_scale", params.dt_scale},
                 {"dt_min", steps.back().dt}};
  return r;
}

// ---------------------------------------------------------------------------
// Stability

WaveField random_smooth_field(const Grid& grid, std::uint64_t seed) {
  rng::Engine eng(seed);
  struct Bump {
    double center;
    cplx amp;
  };
  std::vector<Bump> bumps;
  for (int j = 0; j < 8; ++j) {
    const double c = eng.uniform(-4.0, 4.0);
    const double re = eng.uniform(-1.0, 1.0);
    const double im = eng.uniform(-1.0, 1.0);
    bumps.push_back({c, cplx(re, im)});
  }
  WaveField g = WaveField::from_function(grid, [&](double x) {
    cplx z = 0.0;
    for (const auto& b : bumps) z += b.amp * std::exp(-(x - b.center) * (x - b.center));
    return z;
  });
  g *= 1.0 / sobolev_norm(g, 1.0);
  return g;
}

double envelope_constant(double q, double target) {
  if (!(q >= 0.0) || !(target > 0.0)) throw ArgumentError("envelope_constant: need q >= 0, target > 0");
  auto f = [&](double c) { return c * std::exp(c * q); };
  double lo = 0.0, hi = target;
  while (f(hi) < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

StudyReport stability_study(const WaveField& psi0, const Measure& mu, const StabilityParams& params) {
  const auto& deltas = params.deltas;
  if (deltas.empty()) throw ArgumentError("stability_study: empty delta list");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] >= 0.0)) throw ArgumentError("stability_study: delta must be nonnegative");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) throw ArgumentError("stability_study: deltas must decrease");
  }
  const Grid& grid = psi0.grid();
  const WaveField g = random_smooth_field(grid, params.seed);
  const WeightProfile weight(mu);

  std::vector<Trajectory> runs(deltas.size() + 1);
  parallel_for(runs.size(), [&](std::size_t i) {
    WaveField init = psi0;
    if (i > 0) init += cplx(deltas[i - 1]) * g;
    runs[i] = evolve_regularized(init, mu, params.eps, params.variant, params.solver, params.points_per_eps);
  });
  const Trajectory& base = runs[0];

  StudyReport r;
  r.name = "stability";
  r.parameter_label = "delta";
  r.parameters = deltas;
  r.columns = {"delta", "r", "k", "envelope", "exact_match"};
  const double T = params.solver.T;
  bool bounded = true;
  double r_min = INFINITY, r_max = 0.0;
  std::vector<double> positive_d, positive_r;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const Trajectory& pert = runs[i + 1];
    double sup_diff = 0.0, k = 0.0;
    bool identical = true;
    for (std::size_t s = 0; s < base.states.size(); ++s) {
      const WaveField d = base.states[s] - pert.states[s];
      sup_diff = std::max(sup_diff, sobolev_norm(d, -1.0));
      identical = identical && base.states[s].values() == pert.states[s].values();
      const double kb = base.diagnostics[s].h1 * weighted_l2_norm(base.states[s], weight);
      const double kp = pert.diagnostics[s].h1 * weighted_l2_norm(pert.states[s], weight);
      k = std::max(k, kb + kp);
    }
    const double c = params.envelope_c;
    const double envelope = c * std::exp(c * k * k * (1.0 + k * k) * T * T);
    double ratio = 0.0;
    if (deltas[i] > 0.0) {
      ratio = sup_diff / deltas[i];
      r_min = std::min(r_min, ratio);
      r_max = std::max(r_max, ratio);
      bounded = bounded && std::isfinite(ratio) && ratio <= envelope;
      positive_d.push_back(deltas[i]);
      positive_r.push_back(ratio);
    }
    r.rows.push_back({deltas[i], ratio, k, envelope, identical && deltas[i] == 0.0 ? 1.0 : 0.0});
  }
  r.fitted_rate = fit_log_slope(positive_d, positive_r);
  const bool linear = positive_r.empty() || (r_min > 0.0 && r_max / r_min < 2.0);
  r.flags = {{"bounded", bounded}, {"linear_response", linear}};
  r.constants = {{"stability_c", params.envelope_c}, {"eps", params.eps}, {"T", T}};
  return r;
}

// ---------------------------------------------------------------------------
// Moments

namespace {

struct Accumulator {
  std::vector<double> values;

  double mean(std::size_t n) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += values[i];
    return s / static_cast<double>(n);
  }
  double stderr_of_mean(std::size_t n) const {
    const double m = mean(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (values[i] - m) * (values[i] - m);
    return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

}  // namespace

std::vector<WaveField> moment_profiles(const Grid& grid) {
  return {WaveField::from_function(grid, [](double x) { return cplx(std::exp(-x * x)); }),
          WaveField::from_function(grid, [](double x) { return cplx(std::exp(-x * x / 16.0)); }),
          WaveField::from_function(grid, [](double x) { return cplx(1.0 / std::cosh(x - 3.0)); })};
}

StudyReport moment_study(const std::vector<WaveField>& profiles, const MomentParams& params) {
  if (params.n_samples < 1000) throw ArgumentError("moment_study: need at least 1000 samples");
  if (!(params.intensity >= 0.0)) throw ArgumentError("moment_study: intensity must be nonnegative");
  validate(params.window);
  validate(params.reference_window);
  const std::size_t n = params.n_samples;
  const std::size_t np = profiles.size();
  std::vector<double> base_sq(np);
  for (std::size_t j = 0; j < np; ++j) {
    base_sq[j] = std::pow(l2_norm(profiles[j]), 2);
    if (!(base_sq[j] > 0.0)) throw ArgumentError("moment_study: profile has zero norm");
  }

  std::vector<Accumulator> acc(2 + 2 * np, Accumulator{std::vector<double>(n)});
  parallel_for(n, [&](std::size_t i) {
    const std::uint64_t seed = rng::substream_seed(params.seed, i);
    const Measure mu(sample_poisson(params.intensity, params.window, seed));
    const Measure ref(sample_poisson(params.intensity, params.reference_window, seed));
    acc[0].values[i] = nk_squared(mu, 0);
    acc[1].values[i] = nk_squared(ref, 0);
    const WeightProfile weight(mu);
    for (std::size_t j = 0; j < np; ++j) {
      const double q = std::pow(weighted_l2_norm(profiles[j], weight), 2) / base_sq[j];
      acc[2 + j].values[i] = q;
      acc[2 + np + j].values[i] = q * q;
    }
  });

  StudyReport r;
  r.name = "moments";
  r.parameter_label = "quantity";
  r.columns = {"quantity", "estimate", "stderr", "half_estimate", "bound"};
  bool stabilized = true, first_ok = true, second_ok = true;
  for (std::size_t q = 0; q < acc.size(); ++q) {
    const double est = acc[q].mean(n), se = acc[q].stderr_of_mean(n), half = acc[q].mean(n / 2);
    double bound = 0.0;
    if (q >= 2 && q < 2 + np) {
      bound = params.first_moment_bound;
      first_ok = first_ok && est <= bound;
    } else if (q >= 2 + np) {
      bound = params.second_moment_bound;
      second_ok = second_ok && est <= bound;
    }
    stabilized = stabilized && std::abs(est - half) < 0.02 * std::abs(est);
    r.parameters.push_back(static_cast<double>(q));
    r.rows.push_back({static_cast<double>(q), est, se, half, bound});
  }
  const double e0 = r.rows[0][1], s0 = r.rows[0][2], e1 = r.rows[1][1], s1 = r.rows[1][2];
  const bool window_ok = std::abs(e0 - e1) <= 3.0 * std::hypot(s0, s1);
  const bool regression =
      params.n0_squared_regression == 0.0 || std::abs(e0 - params.n0_squared_regression) <= 4.0 * s0;
  r.flags = {{"stabilized", stabilized},
             {"window_independent", window_ok},
             {"first_moment_bounded", first_ok},
             {"second_moment_bounded", second_ok},
             {"regression", regression}};
  r.constants = {{"first_moment_c", params.first_moment_bound},
                 {"second_moment_c", params.second_moment_bound},
                 {"n0_squared_regression", params.n0_squared_regression}};
  return r;
}

// ---------------------------------------------------------------------------
// Point-process statistics

StudyReport laplace_study(const LaplaceParams& params) {
  const Interval& w = params.count_window;
  validate(w);
  if (w.length() <= 2.2) throw ArgumentError("laplace_study: count window too short");
  if (params.n_samples < 2) throw ArgumentError("laplace_study: need at least 2 samples");
  const Interval plateau{w.a + 1.0, w.b - 1.0};
  const double step = params.quadrature_step;

  StudyReport r;
  r.name = "laplace";
  r.parameter_label = "kind";
  r.columns = {"kind", "parameter", "value", "reference", "gap", "stderr"};
  auto add = [&](double kind, double param, double value, double ref, double se) {
    r.parameters.push_back(kind);
    r.rows.push_back({kind, param, value, ref, std::abs(value - ref), se});
  };

  const std::size_t n = params.n_samples;
  std::vector<double> counts(n);
  parallel_for(n, [&](std::size_t i) {
    counts[i] = static_cast<double>(sample_poisson(1.0, w, rng::substream_seed(params.seed, i)).size());
  });
  double mean = 0.0;
  for (double c : counts) mean += c;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (double c : counts) {
    const double d = (c - mean) * (c - mean);
    m2 += d;
    m4 += d * d;
  }
  const double var = m2 / static_cast<double>(n - 1);
  const double mean_se = std::sqrt(var / static_cast<double>(n));
  const double var_se = std::sqrt(std::max(0.0, m4 / static_cast<double>(n) - var * var) / static_cast<double>(n));
  add(0, w.length(), mean, w.length(), mean_se);
  add(1, w.length(), var, w.length(), var_se);
  const bool mean_ok = std::abs(mean - w.length()) <= 4.0 * mean_se;
  const bool var_ok = std::abs(var - w.length()) <= 4.0 * var_se;

  bool lf_ok = true;
  for (std::size_t k = 0; k < params.heights.size(); ++k) {
    const double c = params.heights[k];
    const TestFunction phi = smoothed_indicator(plateau, c);
    const auto est = empirical_laplace_functional(PoissonSpec{1.0, w}, phi, n,
                                                  rng::substream_seed(params.seed ^ 0x4c46ULL, k));
    const double exact = poisson_laplace_functional(phi, step);
    add(2, c, est.estimate, exact, est.standard_error);
    lf_ok = lf_ok && std::abs(est.estimate - exact) <= 3.0 * est.standard_error;
  }

  const TestFunction unit = smoothed_indicator(plateau, 1.0);
  const double poisson = poisson_laplace_functional(unit, step);
  auto strictly_decreasing_gaps = [&](std::size_t first) {
    for (std::size_t i = first + 1; i < r.rows.size(); ++i)
      if (!(r.rows[i][4] < r.rows[i - 1][4])) return false;
    return true;
  };

  const std::size_t bern_first = r.rows.size();
  for (double h : params.bernoulli_spacings) add(3, h, bernoulli_laplace_functional(unit, h, h), poisson, 0.0);
  const bool bern_ok = strictly_decreasing_gaps(bern_first);

  const double mid = 0.5 * (w.a + w.b);
  const std::size_t can_first = r.rows.size();
  for (std::size_t size : params.canonical_sizes) {
    const double half = 0.5 * static_cast<double>(size);
    if (half < 0.5 * w.length() - 1.0)
      throw ArgumentError("laplace_study: canonical box must contain the test function support");
    add(4, static_cast<double>(size),
        canonical_laplace_functional(unit, size, {mid - half, mid + half}, step), poisson, 0.0);
  }
  const bool can_ok = strictly_decreasing_gaps(can_first);

  r.flags = {{"count_mean", mean_ok},
             {"count_variance", var_ok},
             {"poisson_lf", lf_ok},
             {"bernoulli_ladder", bern_ok},
             {"canonical_ladder", can_ok}};
  return r;
}

}  // namespace snls
