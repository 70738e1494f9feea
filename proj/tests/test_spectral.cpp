#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lrd/error.hpp"
#include "lrd/spectral.hpp"

using namespace lrd;

namespace {

std::vector<double> white_noise(std::size_t n, std::uint64_t seed, double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, sigma);
  std::vector<double> x(n);
  for (double& v : x) v = d(rng);
  return x;
}

std::vector<double> cosine(std::size_t n, double period) {
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = std::cos(2.0 * std::numbers::pi * static_cast<double>(t) / period);
  return x;
}

double variance(const std::vector<double>& x) {
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(x.size());
}

// Direct O(T m) lag-window estimate.
std::vector<double> naive_spectrum(const std::vector<double>& x, std::size_t m) {
  const std::size_t n = x.size();
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> gamma(m);
  for (std::size_t k = 0; k < m; ++k) {
    double acc = 0;
    for (std::size_t t = 0; t + k < n; ++t) acc += (x[t] - mean) * (x[t + k] - mean);
    gamma[k] = acc / static_cast<double>(n);
  }
  std::vector<double> f(n / 2);
  for (std::size_t j = 1; j <= n / 2; ++j) {
    const double lambda = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    double acc = gamma[0];
    for (std::size_t k = 1; k < m; ++k)
      acc += 2.0 * (1.0 - static_cast<double>(k) / static_cast<double>(m)) * gamma[k] * std::cos(static_cast<double>(k) * lambda);
    f[j - 1] = std::max(acc / (2.0 * std::numbers::pi), 0.0);
  }
  return f;
}

}  // namespace

TEST_CASE("acf of a pure cosine") {
  const auto r = acf(cosine(24 * 400, 24.0), 48);
  CHECK(r.rho[0] == 1.0);
  CHECK(r.rho[24] > 0.99);
  CHECK(r.rho[12] < -0.99);
  CHECK(r.max_lag() == 48);
}

TEST_CASE("acf: bounds, affine invariance, errors") {
  const auto x = white_noise(3000, 2);
  const auto a = acf(x, 200);
  for (double v : a.rho) CHECK(std::abs(v) <= 1.0);
  for (std::size_t k = 1; k <= 200; ++k) CHECK(std::abs(a.rho[k]) < 4.0 / std::sqrt(3000.0));

  std::vector<double> y(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) y[t] = -0.3 + 12.0 * x[t];
  const auto b = acf(y, 200);
  for (std::size_t k = 0; k <= 200; ++k) CHECK(b.rho[k] == doctest::Approx(a.rho[k]).epsilon(1e-9).scale(1.0));

  CHECK_THROWS_AS(acf(x, 3000), Error);
  try {
    acf(std::vector<double>(100, 7.0), 5);
    FAIL("constant series accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::undefined);
  }
}

TEST_CASE("smoothed_periodogram agrees with the direct sum") {
  const auto x = white_noise(997, 4);
  for (std::size_t m : {1u, 7u, 100u, 996u}) {
    const auto s = smoothed_periodogram(x, m);
    const auto want = naive_spectrum(x, m);
    REQUIRE(s.density.size() == want.size());
    for (std::size_t j = 0; j < want.size(); ++j)
      REQUIRE(s.density[j] == doctest::Approx(want[j]).epsilon(1e-9).scale(1e-3));
    CHECK(s.kernel == "bartlett");
    CHECK(s.bandwidth == m);
  }
}

TEST_CASE("smoothed_periodogram: peak of a cosine") {
  const std::size_t n = 24 * 300;
  const auto s = smoothed_periodogram(cosine(n, 24.0), default_bandwidth(n));
  const auto peak = std::max_element(s.density.begin(), s.density.end()) - s.density.begin();
  CHECK(s.frequencies[static_cast<std::size_t>(peak)] == doctest::Approx(2.0 * std::numbers::pi / 24.0));
}

TEST_CASE("smoothed_periodogram: white noise is flat at sigma^2 / 2pi") {
  const double sigma = 3.0;
  const auto x = white_noise(1 << 14, 6, sigma);
  const auto s = smoothed_periodogram(x, default_bandwidth(x.size()));
  CHECK(s.frequencies.size() == x.size() / 2);
  CHECK(s.frequencies.front() == doctest::Approx(2.0 * std::numbers::pi / static_cast<double>(x.size())));
  CHECK(s.frequencies.back() == doctest::Approx(std::numbers::pi));
  double mean = 0;
  for (double f : s.density) mean += f;
  mean /= static_cast<double>(s.density.size());
  CHECK(std::abs(mean / (sigma * sigma / (2 * std::numbers::pi)) - 1.0) < 0.1);
  CHECK(std::abs(log_log_slope(s, s.frequencies.front(), std::numbers::pi)) < 0.1);
}

TEST_CASE("smoothed_periodogram: Parseval and non-negativity") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> d;
  for (double phi : {0.0, 0.5, -0.4}) {
    std::vector<double> x(8192);
    double state = 0;
    for (double& v : x) v = state = phi * state + d(rng);
    const auto s = smoothed_periodogram(x, default_bandwidth(x.size()));
    double integral = 0;
    for (double f : s.density) {
      CHECK(f >= 0.0);
      integral += 2.0 * f * 2.0 * std::numbers::pi / static_cast<double>(x.size());
    }
    CHECK(std::abs(integral / variance(x) - 1.0) < 0.05);
  }
}

TEST_CASE("spectral errors") {
  const auto x = white_noise(100, 1);
  CHECK_THROWS_AS(smoothed_periodogram(x, 0), Error);
  CHECK_THROWS_AS(smoothed_periodogram(x, 100), Error);
  try {
    smoothed_periodogram(std::vector<double>(64, -2.0), 6);
    FAIL("constant series accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::undefined);
  }
  CHECK(default_bandwidth(3) == 1);
  CHECK(default_bandwidth(16384) == 1638);
  const auto s = smoothed_periodogram(x, 10);
  CHECK_THROWS_AS(log_log_slope(s, 0.001, 0.002), Error);
}

TEST_CASE("acf of white noise stays inside the Bartlett band") {
  int outside = 0;
  const auto r = acf(white_noise(10000, 21), 100);
  for (std::size_t k = 1; k <= 100; ++k) outside += std::abs(r.rho[k]) >= 3.0 / 100.0;
  CHECK(outside < 5);
}
