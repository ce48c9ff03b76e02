#include "snls/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "snls/csv.hpp"
#include "snls/errors.hpp"
#include "snls/parallel.hpp"
#include "snls/rng.hpp"

namespace snls {

void validate(const Interval& window) {
  if (!std::isfinite(window.a) || !std::isfinite(window.b) || !(window.a < window.b))
    throw ArgumentError("invalid interval [" + std::to_string(window.a) + ", " +
                        std::to_string(window.b) + "]");
}

// ---------------------------------------------------------------------------
// AtomicMeasure

AtomicMeasure::AtomicMeasure(Interval window) : window_(window) { validate(window_); }

AtomicMeasure::AtomicMeasure(Interval window, std::vector<Atom> atoms)
    : window_(window), atoms_(std::move(atoms)) {
  validate(window_);
  for (const auto& at : atoms_) {
    if (!window_.contains(at.position)) throw ArgumentError("atom outside the measure window");
    if (!(at.mass >= 0.0) || !std::isfinite(at.mass))
      throw ArgumentError("atom masses must be finite and nonnegative");
  }
  std::erase_if(atoms_, [](const Atom& at) { return at.mass == 0.0; });
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const Atom& l, const Atom& r) { return l.position < r.position; });
}

double AtomicMeasure::total_mass() const noexcept {
  double s = 0.0;
  for (const auto& at : atoms_) s += at.mass;
  return s;
}

double AtomicMeasure::mass_in(double lo, double hi) const noexcept {
  auto first = std::lower_bound(atoms_.begin(), atoms_.end(), lo,
                                [](const Atom& at, double v) { return at.position < v; });
  double s = 0.0;
  for (auto it = first; it != atoms_.end() && it->position < hi; ++it) s += it->mass;
  return s;
}

// ---------------------------------------------------------------------------
// Test functions

TestFunction::TestFunction(std::function<double(double)> f, Interval support)
    : f_(std::move(f)), support_(support) {
  validate(support_);
}

TestFunction smoothed_indicator(Interval plateau, double height, double ramp) {
  validate(plateau);
  if (!(height >= 0.0)) throw ArgumentError("smoothed_indicator: height must be >= 0");
  if (!(ramp > 0.0)) throw ArgumentError("smoothed_indicator: ramp must be positive");
  auto f = [plateau, height, ramp](double x) {
    if (x < plateau.a) return height * std::max(0.0, 1.0 - (plateau.a - x) / ramp);
    if (x > plateau.b) return height * std::max(0.0, 1.0 - (x - plateau.b) / ramp);
    return height;
  };
  return TestFunction(f, {plateau.a - ramp, plateau.b + ramp});
}

TestFunction zero_test_function() {
  return TestFunction([](double) { return 0.0; }, {0.0, 1.0});
}

// ---------------------------------------------------------------------------
// Samplers

AtomicMeasure sample_poisson(double intensity, Interval window, std::uint64_t seed) {
  validate(window);
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw ArgumentError("sample_poisson: intensity must be positive");
  rng::Engine eng(seed);
  const auto count = eng.poisson(intensity * window.length());
  std::vector<Atom> atoms(count);
  for (auto& at : atoms) at = {eng.uniform(window.a, window.b), 1.0};
  return AtomicMeasure(window, std::move(atoms));
}

AtomicMeasure sample_bernoulli_crystal(double spacing, double probability, Interval window,
                                       std::uint64_t seed) {
  validate(window);
  if (!(spacing > 0.0)) throw ArgumentError("sample_bernoulli_crystal: spacing must be positive");
  if (!(probability >= 0.0 && probability <= 1.0))
    throw ArgumentError("sample_bernoulli_crystal: probability must lie in [0, 1]");
  rng::Engine eng(seed);
  const auto k_lo = static_cast<long long>(std::ceil(window.a / spacing - 1e-9));
  const auto k_hi = static_cast<long long>(std::floor(window.b / spacing + 1e-9));
  std::vector<Atom> atoms;
  for (long long k = k_lo; k <= k_hi; ++k) {
    const double x = static_cast<double>(k) * spacing;
    if (!window.contains(x)) continue;
    // One draw per site, so the realization at a site does not depend on p
    // being 0 or 1.
    if (eng.bernoulli(probability)) atoms.push_back({x, 1.0});
  }
  return AtomicMeasure(window, std::move(atoms));
}

AtomicMeasure sample_canonical(std::size_t count, Interval window, std::uint64_t seed) {
  validate(window);
  rng::Engine eng(seed);
  std::vector<Atom> atoms(count);
  for (auto& at : atoms) at = {eng.uniform(window.a, window.b), 1.0};
  return AtomicMeasure(window, std::move(atoms));
}

AtomicMeasure kronig_penney(Interval window) {
  return sample_bernoulli_crystal(1.0, 1.0, window, 0);
}

AtomicMeasure sample(const SamplerSpec& spec, std::uint64_t seed) {
  return std::visit(
      [seed](const auto& s) -> AtomicMeasure {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PoissonSpec>)
          return sample_poisson(s.intensity, s.window, seed);
        else if constexpr (std::is_same_v<T, BernoulliSpec>)
          return sample_bernoulli_crystal(s.spacing, s.probability, s.window, seed);
        else
          return sample_canonical(s.count, s.window, seed);
      },
      spec);
}

// ---------------------------------------------------------------------------
// Laplace functionals

namespace {

template <class F>
double trapezoid(F f, Interval iv, double step) {
  if (!(step > 0.0)) throw ArgumentError("quadrature step must be positive");
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(iv.length() / step)));
  const double h = iv.length() / static_cast<double>(n);
  double s = 0.5 * (f(iv.a) + f(iv.b));
  for (std::size_t i = 1; i < n; ++i) s += f(iv.a + static_cast<double>(i) * h);
  return s * h;
}

}  // namespace

double poisson_laplace_functional(const TestFunction& phi, double step, double intensity) {
  const double inner = trapezoid([&](double x) { return -std::expm1(-phi(x)); }, phi.support(), step);
  return std::exp(-intensity * inner);
}

double bernoulli_laplace_functional(const TestFunction& phi, double spacing, double probability) {
  if (!(spacing > 0.0)) throw ArgumentError("bernoulli_laplace_functional: spacing must be positive");
  if (!(probability >= 0.0 && probability <= 1.0))
    throw ArgumentError("bernoulli_laplace_functional: probability must lie in [0, 1]");
  const auto& sup = phi.support();
  const auto k_lo = static_cast<long long>(std::ceil(sup.a / spacing - 1e-9));
  const auto k_hi = static_cast<long long>(std::floor(sup.b / spacing + 1e-9));
  double log_prod = 0.0;
  for (long long k = k_lo; k <= k_hi; ++k)
    log_prod += std::log1p(probability * std::expm1(-phi(static_cast<double>(k) * spacing)));
  return std::exp(log_prod);
}

double canonical_laplace_functional(const TestFunction& phi, std::size_t count, Interval window,
                                    double step) {
  validate(window);
  const double avg =
      trapezoid([&](double x) { return std::expm1(-phi(x)); }, window, step) / window.length();
  return std::exp(static_cast<double>(count) * std::log1p(avg));
}

MonteCarloEstimate empirical_laplace_functional(const SamplerSpec& spec, const TestFunction& phi,
                                                std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw ArgumentError("empirical_laplace_functional: need at least 2 samples");
  std::vector<double> values(n_samples);
  parallel_for(n_samples, [&](std::size_t i) {
    const auto mu = sample(spec, rng::substream_seed(seed, i));
    double s = 0.0;
    for (const auto& at : mu.atoms()) s += at.mass * phi(at.position);
    values[i] = std::exp(-s);
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n_samples);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(n_samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(n_samples)), n_samples};
}

// ---------------------------------------------------------------------------
// Serialization

void write_csv(std::ostream& os, const AtomicMeasure& mu) {
  csv::write_header(os, {"position", "mass"});
  for (const auto& at : mu.atoms()) csv::write_row(os, {at.position, at.mass});
}

AtomicMeasure read_csv(std::istream& is, Interval window) {
  const auto table = csv::read(is);
  const auto ip = table.column("position");
  const auto im = table.column("mass");
  std::vector<Atom> atoms;
  atoms.reserve(table.rows.size());
  for (const auto& row : table.rows) atoms.push_back({row[ip], row[im]});
  return AtomicMeasure(window, std::move(atoms));
}

nlohmann::json to_json(const AtomicMeasure& mu) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& at : mu.atoms()) atoms.push_back({at.position, at.mass});
  return {{"window", {mu.window().a, mu.window().b}}, {"atoms", atoms}};
}

AtomicMeasure atomic_measure_from_json(const nlohmann::json& j) {
  try {
    const auto& w = j.at("window");
    Interval window{w.at(0).get<double>(), w.at(1).get<double>()};
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    return AtomicMeasure(window, std::move(atoms));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("atomic measure json: ") + e.what());
  }
}

}  // namespace snls
