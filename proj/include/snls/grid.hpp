#pragma once

#include <cstddef>
#include <vector>

namespace snls {

/// Uniform periodic grid on [-L, L) with N points, N a power of two.
///
/// Sample i sits at x_i = -L + i*dx. Frequencies are returned in FFT order:
/// index m < N/2 maps to pi*m/L, index m >= N/2 maps to pi*(m-N)/L, so the
/// Nyquist mode carries the negative frequency -pi*N/(2L).
class Grid {
 public:
  Grid(double half_length, std::size_t size);

  double half_length() const noexcept { return half_length_; }
  std::size_t size() const noexcept { return size_; }
  double dx() const noexcept { return dx_; }
  double length() const noexcept { return 2.0 * half_length_; }

  double x(std::size_t i) const noexcept { return -half_length_ + static_cast<double>(i) * dx_; }
  double xi(std::size_t m) const noexcept;
  /// Largest representable |xi|.
  double max_frequency() const noexcept;

  std::vector<double> coordinates() const;
  std::vector<double> frequencies() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double half_length_;
  std::size_t size_;
  double dx_;
};

/// Throws ArgumentError unless both grids are identical.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace snls
