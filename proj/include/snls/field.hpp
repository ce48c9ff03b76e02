#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "snls/grid.hpp"

namespace snls {

using cplx = std::complex<double>;

/// Physical-space samples of a complex field on a periodic Grid.
class WaveField {
 public:
  explicit WaveField(Grid grid);
  /// Throws ArgumentError on length mismatch or non-finite entries.
  WaveField(Grid grid, std::vector<cplx> values);

  static WaveField from_function(const Grid& grid, const std::function<cplx(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<cplx>& values() const noexcept { return values_; }
  std::vector<cplx>& values() noexcept { return values_; }
  cplx operator[](std::size_t i) const noexcept { return values_[i]; }
  cplx& operator[](std::size_t i) noexcept { return values_[i]; }

  bool all_finite() const noexcept;

  WaveField& operator+=(const WaveField& other);
  WaveField& operator-=(const WaveField& other);
  WaveField& operator*=(cplx s) noexcept;

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

WaveField operator+(WaveField a, const WaveField& b);
WaveField operator-(WaveField a, const WaveField& b);
WaveField operator*(cplx s, WaveField a);

/// Unnormalized DFT coefficients in FFT order.
std::vector<cplx> spectrum(const WaveField& f);
/// Inverse of spectrum().
WaveField from_spectrum(const Grid& grid, std::vector<cplx> coefficients);

/// Trapezoid L2 norm on the box, sqrt(dx * sum |f_i|^2).
double l2_norm(const WaveField& f);

/// Spectral H^s norm with multiplier (1+xi^2)^(s/2); s must lie in [-2, 2].
/// Agrees with l2_norm at s = 0 by Parseval.
double sobolev_norm(const WaveField& f, double s);

/// Squared L2 norm of the spectral derivative, integral |f'|^2.
double gradient_l2_squared(const WaveField& f);

/// Grid maximum of |f|.
double sup_norm(const WaveField& f);

enum class LpMode { at_or_below, above };

/// Littlewood-Paley projection with multiplier cutoff_profile(xi / n_cut);
/// `above` is the identity minus `at_or_below`. n_cut must be a power of two >= 1.
WaveField lp_project(const WaveField& f, double n_cut, LpMode mode);

/// exp(i t d_xx) f, i.e. multiplication of each mode by exp(-i t xi^2).
WaveField free_propagator(const WaveField& f, double t);

/// Band-limited trigonometric interpolation of a fixed field, reusable for
/// many off-grid points. The Nyquist mode is split symmetrically so the
/// interpolant is real for real data and exact on the grid.
class SpectralInterpolant {
 public:
  explicit SpectralInterpolant(const WaveField& f);
  cplx operator()(double x) const;

 private:
  Grid grid_;
  std::vector<cplx> coefficients_;  // F_m / N
};

/// One-shot trigonometric interpolation at x in [-L, L).
cplx evaluate_at(const WaveField& f, double x);

/// CSV with header `x,re,im`, 17 significant digits.
void write_csv(std::ostream& os, const WaveField& f);
/// Binary: "SNLSWF01", uint64 N, float64 L, then N (re, im) float64 pairs,
/// all little-endian.
void write_binary(std::ostream& os, const WaveField& f);
WaveField read_binary(std::istream& is);

}  // namespace snls
