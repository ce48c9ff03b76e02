#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "snls/density.hpp"
#include "snls/field.hpp"
#include "snls/measure.hpp"
#include "snls/mollify.hpp"

namespace snls {

/// Time stepping parameters. A negative dt integrates backwards in time.
struct SolverParams {
  double dt = 1e-3;
  double T = 1.0;  // horizon, > 0
  std::size_t record_every = 10;
};

/// Throws ArgumentError unless 0 < |dt| <= min(T, 0.1), record_every >= 1,
/// and T is an integer multiple of |dt|.
void validate(const SolverParams& params);

/// Number of steps implied by params.
std::size_t step_count(const SolverParams& params);

struct DiagnosticRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;  // regularized energy against the evolving potential
  double h1 = 0.0;
  double l2mu = 0.0;
  double sup = 0.0;
  /// integral |psi|^4 dmu and the matching energy against the unmollified
  /// measure; set only when a reference measure is supplied.
  std::optional<double> quartic_mu;
  std::optional<double> energy_mu;
};

/// Recorded states of one run; times[0] = 0 and states.size() == times.size().
struct Trajectory {
  std::vector<double> times;
  std::vector<WaveField> states;
  std::vector<DiagnosticRecord> diagnostics;

  const WaveField& final_state() const { return states.back(); }
};

struct EvolveOptions {
  /// Weight for the l2mu column; the empty-measure weight (w = 4) if unset.
  const WeightProfile* weight = nullptr;
  /// Unmollified measure for quartic_mu / energy_mu.
  const Measure* reference = nullptr;
};

/// Exact flow of i psi_t = 2 V |psi|^2 psi over dt: a pointwise phase rotation.
WaveField nonlinear_step(const WaveField& f, const GriddedDensity& v, double dt);

/// Strang splitting: free(dt/2) then nonlinear(dt) then free(dt/2).
WaveField strang_step(const WaveField& f, const GriddedDensity& v, double dt);

/// Evolves i psi_t = -psi_xx + 2 V |psi|^2 psi by repeated Strang steps,
/// recording every params.record_every steps and at the final step.
/// Throws BlowUpError naming the step if a non-finite value appears.
Trajectory evolve(const WaveField& psi0, const GriddedDensity& v, const SolverParams& params,
                  const EvolveOptions& options = {});

enum class Variant {
  fully_truncated,  // V = phi^eps dmu^eps/dx
  mollified_only,   // V = dmu^eps/dx
};

/// Builds the regularized potential for (mu, eps) and evolves psi0 with it.
/// Diagnostics carry the weight of mu and the quartic term against mu.
Trajectory evolve_regularized(const WaveField& psi0, const Measure& mu, double eps, Variant variant,
                              const SolverParams& params, double points_per_eps = kDefaultPointsPerEps);

/// Classical RK4 on the spectral method-of-lines system, integrating to time
/// T with steps no larger than |dt|. Independent of the splitting code path.
/// Throws OracleInstabilityError if the L2 norm grows by more than 10%.
WaveField oracle_evolve(const WaveField& psi0, const GriddedDensity& v, double T, double dt);

/// CSV `t,mass,energy,h1,l2mu,sup`.
void write_diagnostics_csv(std::ostream& os, const Trajectory& traj);
/// CSV `t,quartic_mu,energy_mu` (rows only where a reference measure was used).
void write_reference_csv(std::ostream& os, const Trajectory& traj);

}  // namespace snls
