#include "lrd/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "fft.hpp"
#include "lrd/error.hpp"

namespace lrd {

namespace {

constexpr std::size_t kCholeskyLimit = 4096;
constexpr double kEmbeddingTolerance = 1e-10;

std::vector<double> embedding_eigenvalues(std::span<const double> acov) {
  const std::size_t n = acov.size();
  const std::size_t m = 2 * (n - 1);
  std::vector<double> c(m);
  for (std::size_t k = 0; k < n; ++k) c[k] = acov[k];
  for (std::size_t k = 1; k + 1 < n; ++k) c[m - k] = acov[k];
  const auto spec = detail::rfft(c);
  std::vector<double> lambda(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) lambda[j] = spec[j].real();
  return lambda;
}

bool embeddable(const std::vector<double>& lambda) {
  const double top = *std::max_element(lambda.begin(), lambda.end());
  const double bottom = *std::min_element(lambda.begin(), lambda.end());
  return top > 0.0 && bottom >= -kEmbeddingTolerance * top;
}

std::vector<double> cholesky_path(std::span<const double> acov, NormalStream& normals) {
  const auto n = static_cast<Eigen::Index>(acov.size());
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) cov(i, j) = acov[static_cast<std::size_t>(std::abs(i - j))];
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::degenerate, "autocovariance is not positive definite");
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = normals();
  const Eigen::VectorXd x = llt.matrixL() * z;
  return std::vector<double>(x.data(), x.data() + n);
}

}  // namespace

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::fgn: return "fgn";
    case GeneratorKind::fbm: return "fbm";
    case GeneratorKind::ar1: return "ar1";
    case GeneratorKind::sinusoid_plus_fgn: return "sinusoid-plus-fgn";
    case GeneratorKind::cascade: return "cascade";
  }
  return "unknown";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  if (text == "fgn") return GeneratorKind::fgn;
  if (text == "fbm") return GeneratorKind::fbm;
  if (text == "ar1") return GeneratorKind::ar1;
  if (text == "sinusoid-plus-fgn") return GeneratorKind::sinusoid_plus_fgn;
  if (text == "cascade") return GeneratorKind::cascade;
  throw Error(ErrorKind::invalid_config, "unknown generator kind '" + std::string(text) + "'");
}

void GeneratorSpec::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::invalid_config, why); };
  if (n < 2) fail("generator length must be at least 2");
  if (spacing <= 0) fail("spacing must be positive");
  switch (kind) {
    case GeneratorKind::fgn:
    case GeneratorKind::fbm:
      if (!(hurst > 0.0 && hurst < 1.0)) fail("H must lie in (0, 1)");
      break;
    case GeneratorKind::sinusoid_plus_fgn:
      if (!(hurst > 0.0 && hurst < 1.0)) fail("H must lie in (0, 1)");
      if (!(period > 0.0) || !std::isfinite(period)) fail("period must be positive");
      if (!std::isfinite(amplitude)) fail("amplitude must be finite");
      break;
    case GeneratorKind::ar1:
      if (!(phi > -1.0 && phi < 1.0)) fail("phi must lie in (-1, 1)");
      break;
    case GeneratorKind::cascade:
      if (!(cascade_p > 0.5 && cascade_p < 1.0)) fail("cascade weight p must lie in (0.5, 1)");
      break;
  }
}

double NormalStream::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::vector<double> fgn_autocovariance(double hurst, std::size_t n) {
  const double h2 = 2.0 * hurst;
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    g[k] = 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) + std::pow(std::abs(kk - 1.0), h2));
  }
  return g;
}

bool circulant_embeddable(std::span<const double> acov) {
  if (acov.size() < 2) return acov.size() == 1 && acov[0] >= 0.0;
  return embeddable(embedding_eigenvalues(acov));
}

std::vector<double> simulate_gaussian(std::span<const double> acov, NormalStream& normals) {
  const std::size_t n = acov.size();
  if (n == 0) return {};
  if (n == 1) return {std::sqrt(acov[0]) * normals()};

  const auto lambda = embedding_eigenvalues(acov);
  if (!embeddable(lambda)) {
    if (n <= kCholeskyLimit) return cholesky_path(acov, normals);
    throw Error(ErrorKind::degenerate,
                "circulant embedding of length " + std::to_string(2 * (n - 1)) +
                    " has negative eigenvalues; use a larger embedding (longer covariance) "
                    "or a path of at most " + std::to_string(kCholeskyLimit) + " points");
  }

  // Hermitian spectrum whose inverse transform is real with covariance acov:
  // end bins get real N(0, lambda/M), interior bins complex N(0, lambda/M).
  const std::size_t m = 2 * (n - 1);
  const double md = static_cast<double>(m);
  std::vector<std::complex<double>> w(m / 2 + 1);
  w[0] = std::sqrt(std::max(lambda[0], 0.0) / md) * normals();
  for (std::size_t k = 1; k < m / 2; ++k) {
    const double a = std::sqrt(std::max(lambda[k], 0.0) / (2.0 * md));
    const double re = normals();
    const double im = normals();
    w[k] = {a * re, a * im};
  }
  w[m / 2] = std::sqrt(std::max(lambda[m / 2], 0.0) / md) * normals();

  auto path = detail::irfft(w, m);
  path.resize(n);
  return path;
}

std::vector<double> binomial_cascade(std::size_t n, double p) {
  const unsigned levels = static_cast<unsigned>(std::bit_width(n - 1));
  const std::size_t points = std::size_t{1} << levels;
  std::vector<double> out(std::min(n, points));
  const double scale = static_cast<double>(points);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int ones = std::popcount(i);
    out[i] = scale * std::pow(p, ones) * std::pow(1.0 - p, static_cast<int>(levels) - ones);
  }
  return out;
}

TimeSeries generate(const GeneratorSpec& spec) {
  spec.validate();
  NormalStream normals(spec.seed);
  std::vector<double> x;
  switch (spec.kind) {
    case GeneratorKind::fgn:
      x = simulate_gaussian(fgn_autocovariance(spec.hurst, spec.n), normals);
      break;
    case GeneratorKind::fbm:
      x = simulate_gaussian(fgn_autocovariance(spec.hurst, spec.n), normals);
      std::partial_sum(x.begin(), x.end(), x.begin());
      break;
    case GeneratorKind::sinusoid_plus_fgn: {
      x = simulate_gaussian(fgn_autocovariance(spec.hurst, spec.n), normals);
      for (std::size_t t = 0; t < x.size(); ++t)
        x[t] += spec.amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / spec.period);
      break;
    }
    case GeneratorKind::ar1: {
      const double burn_d = std::ceil(10.0 * static_cast<double>(spec.n) / (1.0 - std::abs(spec.phi)));
      const auto burn = static_cast<std::size_t>(std::min(burn_d, 1e6));
      double state = 0.0;
      for (std::size_t t = 0; t < burn; ++t) state = spec.phi * state + normals();
      x.resize(spec.n);
      for (std::size_t t = 0; t < spec.n; ++t) x[t] = state = spec.phi * state + normals();
      break;
    }
    case GeneratorKind::cascade:
      x = binomial_cascade(spec.n, spec.cascade_p);
      break;
  }
  return TimeSeries::regular(std::move(x), spec.start, spec.spacing);
}

}  // namespace lrd
