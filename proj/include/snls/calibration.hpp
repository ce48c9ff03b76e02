#pragma once

#include <cstdint>

#include "snls/measure.hpp"
#include "snls/studies.hpp"

namespace snls::calibration {

// Frozen constants, regenerated by the `calibrate` tool on the setups below
// with kCalibrationSeed. Bump kVersion whenever a value changes.
inline constexpr int kVersion = 1;
inline constexpr std::uint64_t kCalibrationSeed = 0xca1b0001ULL;

inline constexpr double kStabilityC = 0.00125771;
inline constexpr double kFirstMomentC = 18.2159;
inline constexpr double kSecondMomentC = 276.36;
inline constexpr double kN0SquaredRegression = 12.1197;
inline constexpr double kTailC = 0.896974;
inline constexpr double kGagliardoNirenbergC = 1.03119;
inline constexpr double kBernsteinC = 0.935032;
inline constexpr double kDispersiveLow = 0.188067;
inline constexpr double kDispersiveHigh = 2.14138;
inline constexpr double kPartitionLow = 0.454841;
inline constexpr double kPartitionHigh = 1.12916;
inline constexpr double kMollifierL1C = 1.58891;

/// Smooth random field on the grid: six complex Gaussian bumps with widths in
/// [0.2, 2] and centres in [-8, 8]. Used by the inequality calibrations.
WaveField random_test_field(const Grid& grid, std::uint64_t seed);

struct StabilityCase {
  WaveField psi0;
  Measure mu;
  StabilityParams params;
};

/// Gaussian exp(-x^2) on L = 16, N = 2048 with a unit atom at 0, eps = 0.2,
/// dt = 1e-3, T = 1, deltas {1e-2, 1e-3, 1e-4}.
StabilityCase stability_case(std::uint64_t seed);

struct MomentCase {
  std::vector<WaveField> profiles;
  MomentParams params;
};

/// moment_profiles on L = 32, N = 1024, 10^4 unit-intensity Poisson samples
/// on [-32, 32] (reference window [-20, 20]).
MomentCase moment_case(std::uint64_t seed);

struct TailCase {
  WaveField psi0;
  Measure mu;
  double eps;
  double lambda;
};

/// Data amplitude * exp(-((x - center)/width)^2) on L = 16, N = 2048, a unit
/// atom at 0, eps = 0.2, lambda = 1/4.
TailCase tail_case(double amplitude, double center, double width);

}  // namespace snls::calibration
