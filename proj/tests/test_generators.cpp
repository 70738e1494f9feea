#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "lrd/error.hpp"
#include "lrd/generators.hpp"
#include "lrd/spectral.hpp"

using namespace lrd;

namespace {

std::vector<double> values_of(const TimeSeries& s) { return {s.values().begin(), s.values().end()}; }

GeneratorSpec spec(GeneratorKind kind, std::size_t n, std::uint64_t seed) {
  GeneratorSpec g;
  g.kind = kind;
  g.n = n;
  g.seed = seed;
  return g;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// Mass split recursively: left child gets 1 - p, right child p.
std::vector<double> recursive_cascade(unsigned levels, double p) {
  std::vector<double> mass{1.0};
  for (unsigned k = 0; k < levels; ++k) {
    std::vector<double> next;
    for (double m : mass) {
      next.push_back(m * (1.0 - p));
      next.push_back(m * p);
    }
    mass = std::move(next);
  }
  for (double& m : mass) m *= static_cast<double>(mass.size());
  return mass;
}

}  // namespace

TEST_CASE("fgn autocovariance") {
  const auto g = fgn_autocovariance(0.5, 5);
  CHECK(g == std::vector<double>{1, 0, 0, 0, 0});
  const auto h = fgn_autocovariance(0.75, 3);
  CHECK(h[0] == doctest::Approx(1.0));
  CHECK(h[1] == doctest::Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("fgn: white noise at H = 1/2") {
  const std::size_t n = 1 << 14;
  const auto x = values_of(generate(spec(GeneratorKind::fgn, n, 1)));
  CHECK(std::abs(acf(x, 1).rho[1]) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("fgn: lag-one correlation at H = 0.75") {
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = spec(GeneratorKind::fgn, 4096, seed);
    g.hurst = 0.75;
    sum += acf(values_of(generate(g)), 1).rho[1];
  }
  CHECK(std::abs(sum / 100 - (std::sqrt(2.0) - 1.0)) < 0.03);
}

TEST_CASE("fgn: sample covariances match the target within three standard errors") {
  const std::size_t n = 512;
  const std::size_t lags = 10;
  const int seeds = 2000;
  for (double h : {0.3, 0.6, 0.9}) {
    const auto target = fgn_autocovariance(h, n);
    std::vector<double> mean(lags + 1, 0.0), sq(lags + 1, 0.0);
    for (int seed = 0; seed < seeds; ++seed) {
      NormalStream normals(static_cast<std::uint64_t>(seed) + 100000);
      const auto x = simulate_gaussian(target, normals);
      for (std::size_t k = 0; k <= lags; ++k) {
        double c = 0;
        for (std::size_t t = 0; t + k < n; ++t) c += x[t] * x[t + k];
        c /= static_cast<double>(n - k);
        mean[k] += c;
        sq[k] += c * c;
      }
    }
    for (std::size_t k = 0; k <= lags; ++k) {
      const double m = mean[k] / seeds;
      const double se = std::sqrt((sq[k] / seeds - m * m) / (seeds - 1));
      CHECK(std::abs(m - target[k]) <= 3.0 * se);
    }
  }
}

TEST_CASE("fbm is the running sum of fgn with the same seed") {
  auto a = spec(GeneratorKind::fgn, 3000, 9);
  a.hurst = 0.35;
  auto b = a;
  b.kind = GeneratorKind::fbm;
  auto x = values_of(generate(a));
  std::partial_sum(x.begin(), x.end(), x.begin());
  CHECK(values_of(generate(b)) == x);
}

TEST_CASE("seeds: reproducible and independent") {
  const auto a = generate(spec(GeneratorKind::fgn, 10000, 77));
  const auto b = generate(spec(GeneratorKind::fgn, 10000, 77));
  CHECK(a == b);
  const auto c = generate(spec(GeneratorKind::fgn, 10000, 78));
  CHECK(std::abs(correlation(values_of(a), values_of(c))) < 0.05);

  NormalStream s(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("non-embeddable covariance falls back to Cholesky") {
  const std::vector<double> acov{1.0, 0.5, -0.4};
  CHECK_FALSE(circulant_embeddable(acov));
  CHECK(circulant_embeddable(fgn_autocovariance(0.9, 1000)));
  std::vector<double> c01(3, 0.0), c02(3, 0.0), c00(3, 0.0);
  const int draws = 20000;
  NormalStream normals(3);
  double s01 = 0, s02 = 0, s00 = 0;
  for (int i = 0; i < draws; ++i) {
    const auto x = simulate_gaussian(acov, normals);
    REQUIRE(x.size() == 3);
    s00 += x[0] * x[0];
    s01 += x[0] * x[1];
    s02 += x[0] * x[2];
  }
  CHECK(std::abs(s00 / draws - 1.0) < 0.05);
  CHECK(std::abs(s01 / draws - 0.5) < 0.05);
  CHECK(std::abs(s02 / draws + 0.4) < 0.05);

  NormalStream more(4);
  try {
    simulate_gaussian(std::vector<double>{1.0, 2.0, 1.0}, more);
    FAIL("indefinite covariance accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }
}

TEST_CASE("ar1: stationary moments") {
  double rho = 0, var = 0;
  const int seeds = 50;
  for (int seed = 0; seed < seeds; ++seed) {
    auto g = spec(GeneratorKind::ar1, 5000, static_cast<std::uint64_t>(seed));
    g.phi = 0.6;
    const auto x = values_of(generate(g));
    rho += acf(x, 1).rho[1] / seeds;
    double ss = 0;
    for (double v : x) ss += v * v;
    var += ss / static_cast<double>(x.size()) / seeds;
  }
  CHECK(std::abs(rho - 0.6) < 0.02);
  CHECK(std::abs(var - 1.0 / (1.0 - 0.36)) < 0.05);
}

TEST_CASE("sinusoid plus fgn adds a deterministic wave") {
  auto a = spec(GeneratorKind::sinusoid_plus_fgn, 500, 3);
  a.hurst = 0.8;
  a.amplitude = 2.0;
  a.period = 24.0;
  auto b = a;
  b.kind = GeneratorKind::fgn;
  const auto x = values_of(generate(a));
  const auto y = values_of(generate(b));
  for (std::size_t t = 0; t < x.size(); ++t)
    CHECK(x[t] - y[t] == doctest::Approx(2.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / 24.0)).scale(1.0));
}

TEST_CASE("binomial cascade") {
  const auto x = binomial_cascade(1 << 10, 0.7);
  const auto want = recursive_cascade(10, 0.7);
  REQUIRE(x.size() == want.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == doctest::Approx(want[i]).epsilon(1e-12));
  CHECK(std::accumulate(x.begin(), x.end(), 0.0) == doctest::Approx(1024.0));

  const auto cut = binomial_cascade(1000, 0.7);
  CHECK(cut.size() == 1000);
  CHECK(std::equal(cut.begin(), cut.end(), x.begin()));

  auto g = spec(GeneratorKind::cascade, 256, 1);
  auto h = spec(GeneratorKind::cascade, 256, 2);
  CHECK(generate(g) == generate(h));
}

TEST_CASE("generator validation") {
  auto bad = [](auto mutate) {
    GeneratorSpec g;
    mutate(g);
    try {
      generate(g);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::invalid_config;
    }
    return false;
  };
  CHECK(bad([](GeneratorSpec& g) { g.hurst = 1.0; }));
  CHECK(bad([](GeneratorSpec& g) { g.hurst = 0.0; }));
  CHECK(bad([](GeneratorSpec& g) { g.n = 1; }));
  CHECK(bad([](GeneratorSpec& g) { g.kind = GeneratorKind::ar1; g.phi = 1.0; }));
  CHECK(bad([](GeneratorSpec& g) { g.kind = GeneratorKind::cascade; g.cascade_p = 0.5; }));
  CHECK(bad([](GeneratorSpec& g) { g.kind = GeneratorKind::sinusoid_plus_fgn; g.period = 0.0; }));
  CHECK(parse_generator_kind("sinusoid-plus-fgn") == GeneratorKind::sinusoid_plus_fgn);
  CHECK_THROWS_AS(parse_generator_kind("levy"), Error);
}
