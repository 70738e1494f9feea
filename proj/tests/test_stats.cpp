#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lrd/error.hpp"
#include "lrd/stats.hpp"

using namespace lrd;

namespace {

// Weyl-sequence noise and its walk; reference statistics for these exact
// inputs were computed once with statsmodels (adfuller / kpss).
std::vector<double> weyl_noise(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = std::fmod(static_cast<double>(t) * 0.6180339887498949, 1.0) * 2.0 - 1.0;
  return x;
}

std::vector<double> weyl_walk(std::size_t n) {
  auto x = weyl_noise(n);
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    acc += x[t];
    x[t] = acc + std::sin(static_cast<double>(t) / 7.0);
  }
  return x;
}

std::vector<double> normal_sample(std::size_t n, std::uint64_t seed, double mu = 0.0, double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(mu, sigma);
  std::vector<double> x(n);
  for (double& v : x) v = d(rng);
  return x;
}

std::vector<double> affine(std::vector<double> x, double a, double b) {
  for (double& v : x) v = a * v + b;
  return x;
}

}  // namespace

TEST_CASE("describe: degenerate and symmetric inputs") {
  const auto c = describe(std::vector<double>(10, 3.25));
  CHECK(c.sd == 0.0);
  CHECK(c.mean == 3.25);
  CHECK(c.degenerate());
  CHECK_FALSE(c.skewness.has_value());

  const auto s = describe(std::vector<double>{-2, -1, 0, 1, 2});
  CHECK(s.mean == doctest::Approx(0.0));
  CHECK(*s.skewness == doctest::Approx(0.0));
  CHECK(s.sd == doctest::Approx(std::sqrt(2.5)));
  CHECK(*s.excess_kurtosis == doctest::Approx(-1.3));
  CHECK(s.min == -2.0);
  CHECK(s.max == 2.0);

  CHECK_THROWS_AS(describe(std::vector<double>{1.0}), Error);
}

TEST_CASE("describe agrees with a two-pass computation") {
  auto x = normal_sample(5000, 3, 43.77, 16.0);
  for (double& v : x) v = v + 0.02 * v * v;  // some skew
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(x.size());
  const auto s = describe(x);
  CHECK(s.mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(s.sd == doctest::Approx(std::sqrt(m2 / (n - 1))).epsilon(1e-12));
  CHECK(*s.skewness == doctest::Approx((m3 / n) / std::pow(m2 / n, 1.5)).epsilon(1e-10));
  CHECK(*s.excess_kurtosis == doctest::Approx((m4 / n) / ((m2 / n) * (m2 / n)) - 3.0).epsilon(1e-10));
}

TEST_CASE("describe: moment inequality and affine equivariance") {
  std::mt19937_64 rng(8);
  std::exponential_distribution<double> expo(1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(20 + trial);
    for (double& v : x) v = expo(rng) * (trial % 2 ? 1.0 : -1.0);
    const auto s = describe(x);
    CHECK(*s.excess_kurtosis >= *s.skewness * *s.skewness - 2.0 - 1e-12);

    const double a = 0.5 + trial * 0.1;
    const double b = -17.0 + trial;
    const auto t = describe(affine(x, a, b));
    CHECK(t.mean == doctest::Approx(a * s.mean + b).epsilon(1e-10));
    CHECK(t.sd == doctest::Approx(a * s.sd).epsilon(1e-10));
    CHECK(*t.skewness == doctest::Approx(*s.skewness).epsilon(1e-8));
    CHECK(*t.excess_kurtosis == doctest::Approx(*s.excess_kurtosis).epsilon(1e-8));
  }
}

TEST_CASE("jarque_bera") {
  CHECK(jarque_bera_statistic(100, 0.0, 0.0) == 0.0);
  CHECK(chi2_2dof_sf(0.0) == 1.0);
  // 1..5: S = 0, K = -1.3.
  CHECK(jarque_bera_statistic(5, 0.0, -1.3) == doctest::Approx(0.35208333333333336));

  std::vector<double> rep;
  for (int r = 0; r < 2; ++r)
    for (int v = 1; v <= 5; ++v) rep.push_back(v);
  const auto jb = jarque_bera(rep);
  // scipy.stats.jarque_bera on the same ten values.
  CHECK(jb.statistic == doctest::Approx(0.7041666666666667));
  CHECK(*jb.p_value == doctest::Approx(0.7032215177413865));
  CHECK_FALSE(jb.rejects(0.05));
  CHECK(jb.p_bracket == ">0.1");

  CHECK_THROWS_AS(jarque_bera(std::vector<double>{1, 2, 3}), Error);
  try {
    jarque_bera(std::vector<double>(20, 1.0));
    FAIL("zero variance accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::undefined);
  }
}

TEST_CASE("jarque_bera is invariant under positive affine maps") {
  auto x = normal_sample(3000, 17);
  for (double& v : x) v = std::exp(0.4 * v);
  const auto base = jarque_bera(x);
  CHECK(base.rejects(0.01));
  CHECK(base.p_bracket == "<0.01");
  const auto moved = jarque_bera(affine(x, 3.5, -12.0));
  CHECK(moved.statistic == doctest::Approx(base.statistic).epsilon(1e-9));
}

TEST_CASE("adf_test matches statsmodels on a fixed series") {
  const auto walk = weyl_walk(400);
  const auto r = adf_test(walk, 3);
  CHECK(r.statistic == doctest::Approx(-4.84991518378817).epsilon(1e-9));
  CHECK(r.critical_values.at(0.01) == doctest::Approx(-3.4469717056192213).epsilon(1e-9));
  CHECK(r.critical_values.at(0.05) == doctest::Approx(-2.868866381945153).epsilon(1e-9));
  CHECK(r.critical_values.at(0.10) == doctest::Approx(-2.570672761197837).epsilon(1e-9));
  CHECK(r.rejects(0.01));
  CHECK(r.p_bracket == "<0.01");
  CHECK_FALSE(r.p_value.has_value());

  const auto noise = adf_test(weyl_noise(400), 0);
  CHECK(noise.statistic == doctest::Approx(-31.1396857366828).epsilon(1e-9));
}

TEST_CASE("adf_test: invariance to an added constant, errors") {
  const auto walk = weyl_walk(400);
  const auto a = adf_test(walk, 5);
  const auto b = adf_test(affine(walk, 1.0, 250.0), 5);
  CHECK(b.statistic == doctest::Approx(a.statistic).epsilon(1e-8));

  CHECK_THROWS_AS(adf_test(walk, -1), Error);
  CHECK_THROWS_AS(adf_test(std::vector<double>{1, 2, 3, 4}, 2), Error);
  try {
    adf_test(std::vector<double>(100, 4.0), 2);
    FAIL("constant series accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }
}

TEST_CASE("kpss_test matches statsmodels on fixed series") {
  const auto r = kpss_test(weyl_walk(400), 5);
  CHECK(r.statistic == doctest::Approx(0.251760401476267).epsilon(1e-9));
  CHECK_FALSE(r.rejects(0.10));
  CHECK(r.p_bracket == ">0.1");
  const auto n = kpss_test(weyl_noise(400), 12);
  CHECK(n.statistic == doctest::Approx(0.11878787826817).epsilon(1e-9));
  CHECK(r.critical_values.at(0.01) == 0.739);
  CHECK(r.critical_values.at(0.10) == 0.347);
}

TEST_CASE("kpss_test: scale invariance, rejection direction, errors") {
  auto x = normal_sample(2000, 5);
  double acc = 0;
  for (double& v : x) v = acc += v;
  const auto a = kpss_test(x, 20);
  CHECK(a.rejects(0.01));
  CHECK(a.p_bracket == "<0.01");
  const auto b = kpss_test(affine(x, 7.0, 3.0), 20);
  CHECK(b.statistic == doctest::Approx(a.statistic).epsilon(1e-10));

  CHECK_THROWS_AS(kpss_test(x, -2), Error);
  CHECK_THROWS_AS(kpss_test(std::vector<double>{1, 2, 3}, 5), Error);
  try {
    kpss_test(std::vector<double>(50, 0.1), 3);
    FAIL("constant series accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::undefined);
  }
}

TEST_CASE("test reports: decisions agree with statistics and critical values") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto x = normal_sample(600, seed);
    if (seed % 3 == 0) {
      double acc = 0;
      for (double& v : x) v = acc += v;
    }
    for (const auto& r : {jarque_bera(x), adf_test(x, 4), kpss_test(x, 8)}) {
      for (const auto& [level, cv] : r.critical_values) {
        const bool expected = r.direction == RejectWhen::above ? r.statistic > cv : r.statistic < cv;
        CHECK(r.reject_at.at(level) == expected);
      }
      if (r.p_value) {
        CHECK(*r.p_value >= 0.0);
        CHECK(*r.p_value <= 1.0);
      }
      CHECK_FALSE(r.p_bracket.empty());
    }
  }
}
