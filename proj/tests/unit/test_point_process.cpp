#include <doctest.h>

#include <cmath>
#include <sstream>

#include "snls/errors.hpp"
#include "snls/point_process.hpp"
#include "snls/rng.hpp"

using namespace snls;

namespace {

// exp(-int (1 - e^{-phi})) for c * smoothed_indicator([0, len], ramp): the
// plateau gives len (1 - e^{-c}), each linear ramp r (1 - (1 - e^{-c}) / c).
double smoothed_poisson_lf(double c, double len, double ramp) {
  const double a = 1.0 - std::exp(-c);
  return std::exp(-(len * a + 2.0 * ramp * (1.0 - a / c)));
}

struct CountStats {
  double mean = 0.0, var = 0.0, mean_se = 0.0, var_se = 0.0;
};

CountStats count_stats(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  CountStats s;
  for (double x : xs) s.mean += x;
  s.mean /= n;
  double m4 = 0.0;
  for (double x : xs) {
    const double d = (x - s.mean) * (x - s.mean);
    s.var += d;
    m4 += d * d;
  }
  s.var /= n - 1.0;
  m4 /= n;
  s.mean_se = std::sqrt(s.var / n);
  s.var_se = std::sqrt((m4 - s.var * s.var) / n);
  return s;
}

}  // namespace

TEST_CASE("atomic measure keeps atoms sorted and drops zero masses") {
  const AtomicMeasure mu({0.0, 10.0}, {{5.0, 1.0}, {2.0, 0.0}, {1.0, 2.0}, {9.0, 0.5}});
  REQUIRE(mu.size() == 3);
  CHECK(mu.atoms()[0].position == 1.0);
  CHECK(mu.atoms()[1].position == 5.0);
  CHECK(mu.atoms()[2].position == 9.0);
  CHECK(mu.total_mass() == doctest::Approx(3.5));
  CHECK(mu.mass_in(1.0, 5.0) == 2.0);
  CHECK(mu.mass_in(1.0, 5.0000001) == 3.0);
  CHECK_THROWS_AS(AtomicMeasure({0.0, 1.0}, {{2.0, 1.0}}), ArgumentError);
  CHECK_THROWS_AS(AtomicMeasure({0.0, 1.0}, {{0.5, -1.0}}), ArgumentError);
  CHECK_THROWS_AS(AtomicMeasure({1.0, 1.0}), ArgumentError);
}

TEST_CASE("test functions vanish outside their support") {
  const auto phi = smoothed_indicator({0.0, 1.0}, 2.0);
  CHECK(phi(0.5) == 2.0);
  CHECK(phi(-0.025) == doctest::Approx(1.0));
  CHECK(phi(1.025) == doctest::Approx(1.0));
  CHECK(phi(-0.06) == 0.0);
  CHECK(phi(3.0) == 0.0);
  const TestFunction wide([](double) { return 7.0; }, {0.0, 1.0});
  CHECK(wide(2.0) == 0.0);
}

TEST_CASE("poisson sampler validates its arguments") {
  CHECK_THROWS_AS(sample_poisson(1.0, {1.0, 0.0}, 1), ArgumentError);
  CHECK_THROWS_AS(sample_poisson(0.0, {0.0, 1.0}, 1), ArgumentError);
  CHECK_THROWS_AS(sample_poisson(-1.0, {0.0, 1.0}, 1), ArgumentError);
}

TEST_CASE("poisson samples are deterministic, sorted, unit mass and inside the window") {
  const auto a = sample_poisson(1.0, {-5.0, 7.0}, 42);
  const auto b = sample_poisson(1.0, {-5.0, 7.0}, 42);
  CHECK(a == b);
  CHECK_FALSE(a == sample_poisson(1.0, {-5.0, 7.0}, 43));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.atoms()[i].mass == 1.0);
    CHECK(a.window().contains(a.atoms()[i].position));
    if (i) CHECK(a.atoms()[i - 1].position <= a.atoms()[i].position);
  }
}

TEST_CASE("poisson count law: mean and variance match the window length") {
  for (double len : {10.0, 100.0}) {
    std::vector<double> counts(20000);
    for (std::size_t i = 0; i < counts.size(); ++i)
      counts[i] = static_cast<double>(sample_poisson(1.0, {0.0, len}, rng::substream_seed(11, i)).size());
    const auto s = count_stats(counts);
    CHECK(std::abs(s.mean - len) <= 4.0 * s.mean_se);
    CHECK(std::abs(s.var - len) <= 4.0 * s.var_se);
  }
}

TEST_CASE("poisson counts in disjoint intervals are uncorrelated") {
  const std::size_t n = 10000;
  std::vector<double> left(n), right(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto mu = sample_poisson(1.0, {0.0, 10.0}, rng::substream_seed(12, i));
    left[i] = mu.mass_in(0.0, 5.0);
    right[i] = mu.mass_in(5.0, 10.0 + 1e-12);
  }
  const auto sl = count_stats(left), sr = count_stats(right);
  double cov = 0.0;
  for (std::size_t i = 0; i < n; ++i) cov += (left[i] - sl.mean) * (right[i] - sr.mean);
  cov /= static_cast<double>(n - 1);
  CHECK(std::abs(cov / std::sqrt(sl.var * sr.var)) < 0.05);
}

TEST_CASE("vanishing windows are almost always empty") {
  std::size_t nonempty = 0;
  for (std::size_t i = 0; i < 10000; ++i)
    nonempty += sample_poisson(1.0, {0.0, 1e-4}, rng::substream_seed(13, i)).empty() ? 0 : 1;
  CHECK(nonempty < 10);
}

TEST_CASE("bernoulli crystal") {
  CHECK(sample_bernoulli_crystal(1.0, 0.0, {0.0, 5.0}, 3).empty());
  const auto comb = sample_bernoulli_crystal(1.0, 1.0, {0.0, 5.0}, 3);
  REQUIRE(comb.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(comb.atoms()[k].position == static_cast<double>(k));
  CHECK(comb == kronig_penney({0.0, 5.0}));
  CHECK_THROWS_AS(sample_bernoulli_crystal(1.0, 1.5, {0.0, 5.0}, 3), ArgumentError);
  CHECK_THROWS_AS(sample_bernoulli_crystal(1.0, -0.1, {0.0, 5.0}, 3), ArgumentError);
  CHECK_THROWS_AS(sample_bernoulli_crystal(0.0, 0.5, {0.0, 5.0}, 3), ArgumentError);
}

TEST_CASE("canonical ensemble") {
  CHECK(sample_canonical(0, {0.0, 1.0}, 1).empty());
  const auto mu = sample_canonical(100, {-50.0, 50.0}, 5);
  CHECK(mu.size() == 100);
  std::vector<double> counts(4000);
  for (std::size_t i = 0; i < counts.size(); ++i)
    counts[i] = sample_canonical(100, {-50.0, 50.0}, rng::substream_seed(14, i)).mass_in(-10.0, 10.0);
  const auto s = count_stats(counts);
  CHECK(std::abs(s.mean - 20.0) <= 4.0 * s.mean_se);

  const double c = 0.7;
  const TestFunction flat([c](double) { return c; }, {0.0, 1.0});
  CHECK(canonical_laplace_functional(flat, 2, {0.0, 1.0}, 1e-3) == doctest::Approx(std::exp(-2.0 * c)).epsilon(1e-14));
  const auto est = empirical_laplace_functional(CanonicalSpec{2, {0.0, 1.0}}, flat, 100, 9);
  CHECK(est.estimate == doctest::Approx(std::exp(-2.0 * c)).epsilon(1e-14));
  CHECK(est.standard_error < 1e-14);
}

TEST_CASE("poisson laplace functional closed forms") {
  CHECK(poisson_laplace_functional(zero_test_function(), 1e-3) == 1.0);
  for (double c : {1.0, 2.0}) {
    const auto phi = smoothed_indicator({0.0, 1.0}, c);
    CHECK(poisson_laplace_functional(phi, 1e-5) == doctest::Approx(smoothed_poisson_lf(c, 1.0, 0.05)).epsilon(1e-8));
  }
  // Sharp-edge limit.
  CHECK(poisson_laplace_functional(smoothed_indicator({0.0, 1.0}, 1.0, 1e-6), 1e-6) ==
        doctest::Approx(0.53146).epsilon(1e-5));
  CHECK(poisson_laplace_functional(smoothed_indicator({0.0, 1.0}, 2.0, 1e-6), 1e-6) ==
        doctest::Approx(0.421193).epsilon(1e-5));
  // Intensity scales the exponent.
  const auto phi = smoothed_indicator({0.0, 1.0}, 1.0);
  CHECK(poisson_laplace_functional(phi, 1e-4, 2.0) ==
        doctest::Approx(std::pow(poisson_laplace_functional(phi, 1e-4), 2.0)).epsilon(1e-12));
}

TEST_CASE("empirical laplace functionals") {
  const auto zero = empirical_laplace_functional(PoissonSpec{1.0, {0.0, 1.0}}, zero_test_function(), 100, 1);
  CHECK(zero.estimate == 1.0);
  CHECK(zero.standard_error == 0.0);
  CHECK_THROWS_AS(empirical_laplace_functional(PoissonSpec{1.0, {0.0, 1.0}}, zero_test_function(), 1, 1),
                  ArgumentError);

  const auto phi = smoothed_indicator({0.0, 1.0}, 1.0);
  const auto pois = empirical_laplace_functional(PoissonSpec{1.0, {-0.1, 1.1}}, phi, 100000, 21);
  CHECK(std::abs(pois.estimate - smoothed_poisson_lf(1.0, 1.0, 0.05)) <= 3.0 * pois.standard_error);

  const double h = 1.0 / 64.0;
  const auto bern = empirical_laplace_functional(BernoulliSpec{h, h, {-0.1, 1.1}}, phi, 100000, 22);
  const double product = bernoulli_laplace_functional(phi, h, h);
  CHECK(std::abs(bern.estimate - product) <= 3.0 * bern.standard_error);
  CHECK(std::abs(product - poisson_laplace_functional(phi, 1e-4)) < 0.01);
}

TEST_CASE("bernoulli and canonical functionals approach the poisson functional") {
  const auto phi = smoothed_indicator({0.0, 1.0}, 1.0);
  const double pois = poisson_laplace_functional(phi, 1e-5);
  double prev = INFINITY;
  for (double h : {0.25, 1.0 / 16.0, 1.0 / 64.0}) {
    const double gap = std::abs(bernoulli_laplace_functional(phi, h, h) - pois);
    CHECK(gap < prev);
    prev = gap;
  }
  prev = INFINITY;
  for (std::size_t n : {10, 100, 1000}) {
    const double half = 0.5 * static_cast<double>(n);
    const double gap = std::abs(canonical_laplace_functional(phi, n, {0.5 - half, 0.5 + half}, 1e-5) - pois) / pois;
    CHECK(gap * 2.0 <= prev);
    prev = gap;
  }
}

TEST_CASE("large-mean poisson variates") {
  rng::Engine eng(99);
  std::vector<double> xs(50000);
  for (auto& x : xs) x = static_cast<double>(eng.poisson(250.0));
  const auto s = count_stats(xs);
  CHECK(std::abs(s.mean - 250.0) <= 4.0 * s.mean_se);
  CHECK(std::abs(s.var - 250.0) <= 4.0 * s.var_se);
  CHECK(eng.poisson(0.0) == 0);
}

TEST_CASE("substream seeds are distinct and reproducible") {
  CHECK(rng::substream_seed(1, 0) == rng::substream_seed(1, 0));
  CHECK(rng::substream_seed(1, 0) != rng::substream_seed(1, 1));
  CHECK(rng::substream_seed(1, 0) != rng::substream_seed(2, 0));
  rng::Engine a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
}

TEST_CASE("csv and json round trips are exact") {
  const auto mu = sample_poisson(1.0, {-3.0, 3.0}, 17);
  std::stringstream ss;
  write_csv(ss, mu);
  CHECK(ss.str().rfind("position,mass\n", 0) == 0);
  CHECK(read_csv(ss, {-3.0, 3.0}) == mu);
  CHECK(atomic_measure_from_json(to_json(mu)) == mu);
  const auto j = to_json(mu);
  CHECK(j["window"][0] == -3.0);
  CHECK(j["atoms"].size() == mu.size());
}
