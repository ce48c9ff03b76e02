#include "snls/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

#include "snls/bump.hpp"
#include "snls/csv.hpp"
#include "snls/errors.hpp"
#include "snls/fft.hpp"

namespace snls {

// ---------------------------------------------------------------------------
// WaveField

WaveField::WaveField(Grid grid) : grid_(grid), values_(grid.size(), cplx{}) {}

WaveField::WaveField(Grid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ArgumentError("field length does not match grid");
  if (!all_finite()) throw ArgumentError("field contains non-finite values");
}

WaveField WaveField::from_function(const Grid& grid, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
  return WaveField(grid, std::move(v));
}

bool WaveField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

WaveField& WaveField::operator+=(const WaveField& other) {
  require_same_grid(grid_, other.grid_, "operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

WaveField& WaveField::operator-=(const WaveField& other) {
  require_same_grid(grid_, other.grid_, "operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

WaveField& WaveField::operator*=(cplx s) noexcept {
  for (auto& v : values_) v *= s;
  return *this;
}

WaveField operator+(WaveField a, const WaveField& b) { return a += b; }
WaveField operator-(WaveField a, const WaveField& b) { return a -= b; }
WaveField operator*(cplx s, WaveField a) { return a *= s; }

// ---------------------------------------------------------------------------
// Spectral operations

std::vector<cplx> spectrum(const WaveField& f) {
  std::vector<cplx> c = f.values();
  fft::forward(c);
  return c;
}

WaveField from_spectrum(const Grid& grid, std::vector<cplx> coefficients) {
  if (coefficients.size() != grid.size()) throw ArgumentError("spectrum length does not match grid");
  fft::inverse_normalized(coefficients);
  return WaveField(grid, std::move(coefficients));
}

double l2_norm(const WaveField& f) {
  double s = 0.0;
  for (auto v : f.values()) s += std::norm(v);
  return std::sqrt(s * f.grid().dx());
}

namespace {

// Weighted spectral sum dx/N * sum_m weight(xi_m) |F_m|^2.
template <class Weight>
double spectral_sum(const WaveField& f, Weight weight) {
  const auto c = spectrum(f);
  const Grid& g = f.grid();
  double s = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) s += weight(g.xi(m)) * std::norm(c[m]);
  return s * g.dx() / static_cast<double>(g.size());
}

}  // namespace

double sobolev_norm(const WaveField& f, double s) {
  if (!(s >= -2.0 && s <= 2.0)) throw ArgumentError("sobolev_norm: s must lie in [-2, 2]");
  if (s == 0.0) return std::sqrt(spectral_sum(f, [](double) { return 1.0; }));
  if (s == 1.0) return std::sqrt(spectral_sum(f, [](double xi) { return 1.0 + xi * xi; }));
  return std::sqrt(spectral_sum(f, [s](double xi) { return std::pow(1.0 + xi * xi, s); }));
}

double gradient_l2_squared(const WaveField& f) {
  return spectral_sum(f, [](double xi) { return xi * xi; });
}

double sup_norm(const WaveField& f) {
  double m = 0.0;
  for (auto v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

WaveField lp_project(const WaveField& f, double n_cut, LpMode mode) {
  if (!(n_cut >= 1.0)) throw ArgumentError("lp_project: cutoff must be >= 1");
  int exponent = 0;
  if (std::frexp(n_cut, &exponent) != 0.5)
    throw ArgumentError("lp_project: cutoff must be dyadic");
  auto c = spectrum(f);
  const Grid& g = f.grid();
  for (std::size_t m = 0; m < c.size(); ++m) {
    const double low = cutoff_profile(g.xi(m) / n_cut);
    c[m] *= (mode == LpMode::at_or_below) ? low : 1.0 - low;
  }
  return from_spectrum(g, std::move(c));
}

WaveField free_propagator(const WaveField& f, double t) {
  if (t == 0.0) return f;
  auto c = spectrum(f);
  const Grid& g = f.grid();
  for (std::size_t m = 0; m < c.size(); ++m) {
    const double xi = g.xi(m);
    c[m] *= std::polar(1.0, -t * xi * xi);
  }
  return from_spectrum(g, std::move(c));
}

// ---------------------------------------------------------------------------
// Off-grid evaluation

SpectralInterpolant::SpectralInterpolant(const WaveField& f)
    : grid_(f.grid()), coefficients_(spectrum(f)) {
  const double inv = 1.0 / static_cast<double>(grid_.size());
  for (auto& c : coefficients_) c *= inv;
}

cplx SpectralInterpolant::operator()(double x) const {
  const std::size_t n = grid_.size();
  const std::size_t half = n / 2;
  const double theta = std::numbers::pi * (x + grid_.half_length()) / grid_.half_length();
  // sum over m = 1..N/2-1 of c_m e^{i m theta} + c_{N-m} e^{-i m theta}; the
  // powers are refreshed from std::polar every block to bound drift.
  constexpr std::size_t kBlock = 32;
  const cplx step = std::polar(1.0, theta);
  cplx acc = coefficients_[0];
  cplx z = step;
  for (std::size_t m = 1; m < half; ++m) {
    if (m % kBlock == 0) z = std::polar(1.0, theta * static_cast<double>(m));
    acc += coefficients_[m] * z + coefficients_[n - m] * std::conj(z);
    z *= step;
  }
  acc += coefficients_[half] * std::cos(theta * static_cast<double>(half));
  return acc;
}

cplx evaluate_at(const WaveField& f, double x) {
  const Grid& g = f.grid();
  if (!(x >= -g.half_length() && x < g.half_length()))
    throw ArgumentError("evaluate_at: point outside the periodic box");
  return SpectralInterpolant(f)(x);
}

// ---------------------------------------------------------------------------
// Serialization

void write_csv(std::ostream& os, const WaveField& f) {
  csv::write_header(os, {"x", "re", "im"});
  for (std::size_t i = 0; i < f.size(); ++i)
    csv::write_row(os, {f.grid().x(i), f[i].real(), f[i].imag()});
}

namespace {

constexpr char kMagic[8] = {'S', 'N', 'L', 'S', 'W', 'F', '0', '1'};

template <class T>
void put_le(std::ostream& os, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  std::memcpy(buf, &bits, 8);
  os.write(buf, 8);
}

template <class T>
T get_le(std::istream& is) {
  char buf[8];
  if (!is.read(buf, 8)) throw IoError("wavefield: truncated binary input");
  std::uint64_t bits;
  std::memcpy(&bits, buf, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void write_binary(std::ostream& os, const WaveField& f) {
  os.write(kMagic, sizeof kMagic);
  put_le<std::uint64_t>(os, f.size());
  put_le<double>(os, f.grid().half_length());
  for (auto v : f.values()) {
    put_le<double>(os, v.real());
    put_le<double>(os, v.imag());
  }
}

WaveField read_binary(std::istream& is) {
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw IoError("wavefield: bad magic");
  const auto n = get_le<std::uint64_t>(is);
  const auto half_length = get_le<double>(is);
  Grid grid(half_length, static_cast<std::size_t>(n));
  std::vector<cplx> v(grid.size());
  for (auto& z : v) {
    const double re = get_le<double>(is);
    const double im = get_le<double>(is);
    z = {re, im};
  }
  return WaveField(grid, std::move(v));
}

}  // namespace snls
