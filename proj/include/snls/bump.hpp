#pragma once

// Smooth compactly supported profiles shared by the mollifier, the spatial
// cutoff, the partition of unity and the Littlewood-Paley multipliers.

namespace snls {

/// exp(-1/(1-x^2)) on (-1,1), zero elsewhere. Not normalized.
double bump_profile(double x) noexcept;

/// Integral of bump_profile over (-1,1), about 0.443994.
double bump_profile_integral() noexcept;

/// Normalization C with C * integral(bump_profile) = 1, about 2.25228.
double bump_normalization() noexcept;

/// Unit-mass even mollifier rho(x) = C * bump_profile(x).
double bump(double x) noexcept;

/// rho^eps(x) = rho(x/eps)/eps.
double mollifier(double x, double eps) noexcept;

/// Normalized bump-integral smoothstep on [0,1]:
/// S(t) = integral of rho over (-1, 2t-1). S(0)=0, S(1)=1, S(1-t) = 1-S(t),
/// every derivative vanishes at both ends.
double smoothstep(double t) noexcept;

/// Plateau cutoff: 1 on [-1,1], 1 - S(|x|-1) on 1<|x|<2, 0 for |x| >= 2.
double cutoff_profile(double x) noexcept;

}  // namespace snls
