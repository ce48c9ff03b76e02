#include "snls/solver.hpp"

#include <cmath>
#include <ostream>

#include "snls/csv.hpp"
#include "snls/diagnostics.hpp"
#include "snls/errors.hpp"
#include "snls/fft.hpp"

namespace snls {

void validate(const SolverParams& p) {
  const double adt = std::abs(p.dt);
  if (!(adt > 0.0) || !std::isfinite(adt)) throw ArgumentError("solver: dt must be nonzero and finite");
  if (!(p.T > 0.0) || !std::isfinite(p.T)) throw ArgumentError("solver: T must be positive");
  if (adt > p.T) throw ArgumentError("solver: |dt| must not exceed T");
  if (adt > 0.1) throw ArgumentError("solver: |dt| must not exceed 0.1");
  if (p.record_every < 1) throw ArgumentError("solver: record_every must be >= 1");
  const double n = std::round(p.T / adt);
  if (std::abs(n * adt - p.T) > 1e-9 * p.T) throw ArgumentError("solver: T must be a multiple of |dt|");
}

std::size_t step_count(const SolverParams& p) {
  return static_cast<std::size_t>(std::llround(p.T / std::abs(p.dt)));
}

WaveField nonlinear_step(const WaveField& f, const GriddedDensity& v, double dt) {
  require_same_grid(f.grid(), v.grid(), "nonlinear_step");
  WaveField out = f;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (v[i] == 0.0) continue;
    out[i] *= std::polar(1.0, -2.0 * v[i] * std::norm(out[i]) * dt);
  }
  return out;
}

WaveField strang_step(const WaveField& f, const GriddedDensity& v, double dt) {
  return free_propagator(nonlinear_step(free_propagator(f, 0.5 * dt), v, dt), 0.5 * dt);
}

namespace {

// Strang stepping with consecutive free half-steps fused into one full
// step; the field is only brought back to physical space between records.
class SplitStepper {
 public:
  SplitStepper(const Grid& grid, const GriddedDensity& v, double dt)
      : v_(v.values()), dt_(dt), half_(grid.size()), full_(grid.size()) {
    const double inv_n = 1.0 / static_cast<double>(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) {
      const double xi2 = grid.xi(m) * grid.xi(m);
      half_[m] = std::polar(inv_n, -0.5 * dt * xi2);
      full_[m] = std::polar(inv_n, -dt * xi2);
    }
  }

  // Advances `steps` steps. `first_step` is the global index of the first
  // one, used in blow-up reports.
  void advance(std::vector<cplx>& psi, std::size_t steps, std::size_t first_step) const {
    if (steps == 0) return;
    propagate(psi, half_);
    for (std::size_t j = 0; j < steps; ++j) {
      kick(psi, first_step + j);
      propagate(psi, j + 1 == steps ? half_ : full_);
    }
  }

 private:
  static void propagate(std::vector<cplx>& psi, const std::vector<cplx>& phase) {
    fft::forward(psi);
    for (std::size_t m = 0; m < psi.size(); ++m) psi[m] *= phase[m];
    fft::inverse(psi);
  }

  void kick(std::vector<cplx>& psi, std::size_t step) const {
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const double a = std::norm(psi[i]);
      if (!std::isfinite(a)) throw BlowUpError(step);
      if (v_[i] != 0.0) psi[i] *= std::polar(1.0, -2.0 * v_[i] * a * dt_);
    }
  }

  const std::vector<double>& v_;
  double dt_;
  std::vector<cplx> half_;
  std::vector<cplx> full_;
};

DiagnosticRecord diagnose(double t, const WaveField& psi, const GriddedDensity& v,
                          const WeightProfile& weight, const Measure* reference) {
  DiagnosticRecord r;
  r.t = t;
  r.mass = mass(psi);
  const double grad = gradient_l2_squared(psi);
  r.energy = 0.5 * grad + 0.5 * quartic_density_integral(psi, v);
  r.h1 = std::sqrt(r.mass + grad);
  r.l2mu = weighted_l2_norm(psi, weight);
  r.sup = sup_norm(psi);
  if (reference) {
    r.quartic_mu = quartic_measure_integral(psi, *reference);
    r.energy_mu = 0.5 * grad + 0.5 * *r.quartic_mu;
  }
  return r;
}

}  // namespace

Trajectory evolve(const WaveField& psi0, const GriddedDensity& v, const SolverParams& params,
                  const EvolveOptions& options) {
  validate(params);
  require_same_grid(psi0.grid(), v.grid(), "evolve");
  if (!psi0.all_finite()) throw ArgumentError("evolve: initial data is not finite");

  const Grid& grid = psi0.grid();
  const std::optional<WeightProfile> default_weight =
      options.weight ? std::nullopt
                     : std::optional<WeightProfile>(Measure(AtomicMeasure({-1.0, 1.0})));
  const WeightProfile& weight = options.weight ? *options.weight : *default_weight;

  const std::size_t n_steps = step_count(params);
  const SplitStepper stepper(grid, v, params.dt);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(psi0);
  traj.diagnostics.push_back(diagnose(0.0, psi0, v, weight, options.reference));

  std::vector<cplx> psi = psi0.values();
  std::size_t done = 0;
  while (done < n_steps) {
    const std::size_t chunk = std::min(params.record_every, n_steps - done);
    stepper.advance(psi, chunk, done);
    done += chunk;
    WaveField state(grid);
    state.values() = psi;
    if (!state.all_finite()) throw BlowUpError(done);
    const double t = static_cast<double>(done) * params.dt;
    traj.times.push_back(t);
    traj.diagnostics.push_back(diagnose(t, state, v, weight, options.reference));
    traj.states.push_back(std::move(state));
  }
  return traj;
}

Trajectory evolve_regularized(const WaveField& psi0, const Measure& mu, double eps, Variant variant,
                              const SolverParams& params, double points_per_eps) {
  const Grid& grid = psi0.grid();
  const GriddedDensity v = variant == Variant::fully_truncated
                               ? truncated_potential(mu, eps, grid, points_per_eps)
                               : mollified_density(mu, eps, grid, points_per_eps);
  const WeightProfile weight(mu);
  EvolveOptions opts;
  opts.weight = &weight;
  opts.reference = &mu;
  return evolve(psi0, v, params, opts);
}

WaveField oracle_evolve(const WaveField& psi0, const GriddedDensity& v, double T, double dt) {
  require_same_grid(psi0.grid(), v.grid(), "oracle_evolve");
  if (!(dt != 0.0) || !std::isfinite(dt) || !std::isfinite(T))
    throw ArgumentError("oracle_evolve: dt must be nonzero and finite");
  const Grid& grid = psi0.grid();
  const std::size_t n = grid.size();
  if (T == 0.0) return psi0;
  const auto steps = static_cast<std::size_t>(std::ceil(std::abs(T) / std::abs(dt) - 1e-12));
  const double h = T / static_cast<double>(steps);

  std::vector<double> minus_xi2(n);
  for (std::size_t m = 0; m < n; ++m) minus_xi2[m] = -grid.xi(m) * grid.xi(m) / static_cast<double>(n);
  const auto& pot = v.values();
  const cplx I(0.0, 1.0);

  std::vector<cplx> lap(n);
  auto rhs = [&](const std::vector<cplx>& psi, std::vector<cplx>& out) {
    lap = psi;
    fft::forward(lap);
    for (std::size_t m = 0; m < n; ++m) lap[m] *= minus_xi2[m];
    fft::inverse(lap);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = I * lap[i] - 2.0 * I * pot[i] * std::norm(psi[i]) * psi[i];
  };

  std::vector<cplx> psi = psi0.values(), k1(n), k2(n), k3(n), k4(n), tmp(n);
  const double norm0 = l2_norm(psi0);
  for (std::size_t s = 0; s < steps; ++s) {
    rhs(psi, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * h * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * h * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + h * k3[i];
    rhs(tmp, k4);
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      sq += std::norm(psi[i]);
    }
    const double norm = std::sqrt(sq * grid.dx());
    if (!std::isfinite(norm) || (norm0 > 0.0 && norm > 1.1 * norm0))
      throw OracleInstabilityError("oracle_evolve: L2 norm grew by more than 10% at step " +
                                   std::to_string(s + 1) + "; reduce dt");
  }
  return WaveField(grid, std::move(psi));
}

void write_diagnostics_csv(std::ostream& os, const Trajectory& traj) {
  csv::write_header(os, {"t", "mass", "energy", "h1", "l2mu", "sup"});
  for (const auto& r : traj.diagnostics) csv::write_row(os, {r.t, r.mass, r.energy, r.h1, r.l2mu, r.sup});
}

void write_reference_csv(std::ostream& os, const Trajectory& traj) {
  csv::write_header(os, {"t", "quartic_mu", "energy_mu"});
  for (const auto& r : traj.diagnostics)
    if (r.quartic_mu && r.energy_mu) csv::write_row(os, {r.t, *r.quartic_mu, *r.energy_mu});
}

}  // namespace snls
