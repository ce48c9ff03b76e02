#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "snls/point_process.hpp"
#include "snls/solver.hpp"

namespace snls {

enum class MeasureSource { empty, poisson, bernoulli, canonical, kronig_penney, file };
enum class InitialKind { gaussian, file };

/// Flat `key = value` configuration. Unknown keys are rejected. Keys and
/// defaults:
///   domain.L = 16            domain.N = 8192
///   solver.dt = 0.001        solver.T = 1          solver.record_every = 10
///   measure.source = poisson (empty | poisson | bernoulli | canonical | kronig_penney | file)
///   measure.window = -L,L    measure.intensity = 1
///   measure.h = 1            measure.p = 0.5       measure.n = 0
///   measure.file =           (CSV `position,mass`)
///   eps.ladder = 0.4,0.2,0.1,0.05  eps.dt_scale = 0  (see EpsStudyParams::dt_scale)
///   solve.eps = 0.1          solve.variant = fully_truncated (or mollified_only)
///   solve.points_per_eps = 8 solve.snapshots = false
///   initial.kind = gaussian  initial.sigma = 1  initial.center = 0  initial.amplitude = 1
///   initial.file =           (binary WaveField on the configured grid)
///   seed = 0                 output.dir = out
///   stability.deltas = 0.01,0.001,0.0001
///   moments.samples = 10000  moments.window = -32,32
///   laplace.samples = 100000
struct RunConfig {
  double L = 16.0;
  std::size_t N = 8192;
  SolverParams solver{};
  MeasureSource source = MeasureSource::poisson;
  Interval window{-16.0, 16.0};
  double intensity = 1.0;
  double bernoulli_h = 1.0;
  double bernoulli_p = 0.5;
  std::size_t canonical_n = 0;
  std::string measure_file;
  std::vector<double> eps_ladder{0.4, 0.2, 0.1, 0.05};
  double eps_dt_scale = 0.0;
  double eps = 0.1;
  Variant variant = Variant::fully_truncated;
  double points_per_eps = kDefaultPointsPerEps;
  bool snapshots = false;
  InitialKind initial = InitialKind::gaussian;
  double sigma = 1.0;
  double center = 0.0;
  double amplitude = 1.0;
  std::string initial_file;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  std::vector<double> deltas{1e-2, 1e-3, 1e-4};
  std::size_t moment_samples = 10000;
  Interval moment_window{-32.0, 32.0};
  std::size_t laplace_samples = 100000;

  /// Every key with its effective value, sorted; the canonical text form.
  std::map<std::string, std::string> resolved;
};

/// Parses `key = value` lines; `#` starts a comment. Throws ConfigError on
/// malformed lines or duplicate keys.
std::map<std::string, std::string> parse_key_values(std::istream& is);

/// Splits `key=value`; throws ConfigError when there is no '='.
std::pair<std::string, std::string> parse_override(const std::string& text);

/// Builds a config from raw entries. Throws ConfigError for unknown keys,
/// unparsable values, a ladder that is not strictly decreasing or missing
/// files, and ResolutionError if the grid does not resolve the smallest
/// eps in use.
RunConfig make_config(const std::map<std::string, std::string>& entries);

/// `key=value` lines of config.resolved, without output.dir; hashed into
/// run manifests.
std::string canonical_text(const RunConfig& config);

}  // namespace snls
