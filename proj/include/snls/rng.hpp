#pragma once

#include <cstdint>
#include <random>

namespace snls::rng {

/// SplitMix64 finalizer; a bijection on 64-bit words with good avalanche.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of sample `index` in a Monte-Carlo sweep driven by `master`.
/// Each sample draws from its own engine, so samples can be generated in any
/// order (or concurrently) and still reproduce the sequential sweep exactly.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Portable random source. std::mt19937_64 is bit-specified by the standard;
/// the variates below avoid the implementation-defined std distributions so
/// that samples are identical across standard libraries.
class Engine {
 public:
  explicit Engine(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) noexcept { return a + (b - a) * uniform(); }
  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Poisson variate: sequential inversion for mean <= 30, PTRS
  /// (transformed rejection with squeeze) above.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 gen_;
};

}  // namespace snls::rng
