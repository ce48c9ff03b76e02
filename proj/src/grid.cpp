#include "snls/grid.hpp"

#include <bit>
#include <numbers>
#include <string>

#include "snls/errors.hpp"

namespace snls {

Grid::Grid(double half_length, std::size_t size)
    : half_length_(half_length), size_(size), dx_(2.0 * half_length / static_cast<double>(size)) {
  if (!(half_length > 0.0)) throw ArgumentError("grid half-length must be positive");
  if (size < 8 || !std::has_single_bit(size))
    throw ArgumentError("grid size must be a power of two >= 8, got " + std::to_string(size));
}

double Grid::xi(std::size_t m) const noexcept {
  const auto n = static_cast<double>(size_);
  const auto mm = static_cast<double>(m);
  const double k = (m < size_ / 2) ? mm : mm - n;
  return std::numbers::pi * k / half_length_;
}

double Grid::max_frequency() const noexcept {
  return std::numbers::pi * static_cast<double>(size_ / 2) / half_length_;
}

std::vector<double> Grid::coordinates() const {
  std::vector<double> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = x(i);
  return out;
}

std::vector<double> Grid::frequencies() const {
  std::vector<double> out(size_);
  for (std::size_t m = 0; m < size_; ++m) out[m] = xi(m);
  return out;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw ArgumentError(std::string(what) + ": fields live on different grids");
}

}  // namespace snls
