#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include <json.hpp>

namespace snls {

/// Closed interval [a, b] with a < b.
struct Interval {
  double a = 0.0;
  double b = 0.0;

  double length() const noexcept { return b - a; }
  bool contains(double x) const noexcept { return x >= a && x <= b; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Throws ArgumentError unless a < b and both ends are finite.
void validate(const Interval& window);

struct Atom {
  double position = 0.0;
  double mass = 0.0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite point measure sum_j m_j delta(x - y_j) restricted to a window.
/// Atoms are kept sorted by position; zero-mass atoms are dropped.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(Interval window);
  /// Throws ArgumentError for atoms outside the window or negative masses.
  AtomicMeasure(Interval window, std::vector<Atom> atoms);

  const Interval& window() const noexcept { return window_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  double total_mass() const noexcept;

  /// Mass carried by atoms with position in [lo, hi).
  double mass_in(double lo, double hi) const noexcept;

  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

 private:
  Interval window_;
  std::vector<Atom> atoms_;
};

/// Nonnegative function with declared compact support; evaluates to 0
/// outside the support regardless of the wrapped callable.
class TestFunction {
 public:
  TestFunction(std::function<double(double)> f, Interval support);

  double operator()(double x) const { return support_.contains(x) ? f_(x) : 0.0; }
  const Interval& support() const noexcept { return support_; }

 private:
  std::function<double(double)> f_;
  Interval support_;
};

/// height on [a, b], linear ramps to 0 over [a - ramp, a] and [b, b + ramp].
TestFunction smoothed_indicator(Interval plateau, double height, double ramp = 0.05);

/// Identically zero test function (support is nominal).
TestFunction zero_test_function();

struct PoissonSpec {
  double intensity = 1.0;
  Interval window;
};

struct BernoulliSpec {
  double spacing = 1.0;
  double probability = 0.0;
  Interval window;
};

struct CanonicalSpec {
  std::size_t count = 0;
  Interval window;
};

using SamplerSpec = std::variant<PoissonSpec, BernoulliSpec, CanonicalSpec>;

/// Homogeneous Poisson process: count ~ Poisson(intensity |window|), then
/// i.i.d. uniform positions, sorted. Unit masses.
AtomicMeasure sample_poisson(double intensity, Interval window, std::uint64_t seed);

/// Unit atoms at lattice sites k*spacing inside the window, each present
/// independently with the given probability.
AtomicMeasure sample_bernoulli_crystal(double spacing, double probability, Interval window,
                                       std::uint64_t seed);

/// Exactly `count` i.i.d. uniform unit atoms.
AtomicMeasure sample_canonical(std::size_t count, Interval window, std::uint64_t seed);

/// Unit atoms at every integer in the window.
AtomicMeasure kronig_penney(Interval window);

AtomicMeasure sample(const SamplerSpec& spec, std::uint64_t seed);

/// exp(-intensity * int (1 - e^{-phi})) by composite trapezoid over the support.
double poisson_laplace_functional(const TestFunction& phi, double step, double intensity = 1.0);

/// prod_k (1 + p (e^{-phi(hk)} - 1)) over lattice sites in the support.
double bernoulli_laplace_functional(const TestFunction& phi, double spacing, double probability);

/// (1 + |W|^{-1} int_W (e^{-phi} - 1))^n, trapezoid over the window W.
double canonical_laplace_functional(const TestFunction& phi, std::size_t count, Interval window,
                                    double step);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Sample mean of exp(-sum_j m_j phi(x_j)) over n_samples draws; draw i uses
/// rng::substream_seed(seed, i).
MonteCarloEstimate empirical_laplace_functional(const SamplerSpec& spec, const TestFunction& phi,
                                                std::size_t n_samples, std::uint64_t seed);

/// CSV with header `position,mass`.
void write_csv(std::ostream& os, const AtomicMeasure& mu);
/// Reads a `position,mass` table; the window is not stored in CSV.
AtomicMeasure read_csv(std::istream& is, Interval window);

/// {"window": [a, b], "atoms": [[x, m], ...]}
nlohmann::json to_json(const AtomicMeasure& mu);
AtomicMeasure atomic_measure_from_json(const nlohmann::json& j);

}  // namespace snls
