#include "lrd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fft.hpp"
#include "lrd/error.hpp"

namespace lrd {

namespace {

// Variance at rounding level of the data counts as zero.
bool negligible_variance(std::span<const double> x, double gamma0) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  const double floor = 64.0 * 2.220446049250313e-16 * scale;
  return !(gamma0 > floor * floor);
}

}  // namespace

AcfResult acf(std::span<const double> values, std::size_t max_lag) {
  if (max_lag >= values.size())
    throw Error(ErrorKind::insufficient_data, "acf: max_lag " + std::to_string(max_lag) +
                                                  " must be below the series length " +
                                                  std::to_string(values.size()));
  const auto gamma = detail::autocovariance(values, max_lag);
  if (negligible_variance(values, gamma[0])) throw Error(ErrorKind::undefined, "acf undefined for a zero-variance series");
  AcfResult r;
  r.n = values.size();
  r.rho.resize(max_lag + 1);
  r.rho[0] = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k) r.rho[k] = std::clamp(gamma[k] / gamma[0], -1.0, 1.0);
  return r;
}

std::size_t default_bandwidth(std::size_t length) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(length))));
}

SpectrumResult smoothed_periodogram(std::span<const double> values, std::size_t bandwidth) {
  const std::size_t n = values.size();
  if (bandwidth < 1 || bandwidth >= n)
    throw Error(ErrorKind::invalid_config, "bandwidth must lie in [1, T), got " + std::to_string(bandwidth));
  const auto gamma = detail::autocovariance(values, bandwidth - 1);
  if (negligible_variance(values, gamma[0]))
    throw Error(ErrorKind::undefined, "spectrum undefined for a zero-variance series");

  // Tapered autocovariance, folded so a single real transform yields
  // gamma0 + 2 sum_k w_k gamma_k cos(k lambda_j).
  std::vector<double> a(n, 0.0);
  a[0] = gamma[0];
  const double m = static_cast<double>(bandwidth);
  for (std::size_t k = 1; k < bandwidth; ++k)
    a[k] = 2.0 * (1.0 - static_cast<double>(k) / m) * gamma[k];
  const auto spec = detail::rfft(a);

  SpectrumResult r;
  r.bandwidth = bandwidth;
  const std::size_t half = n / 2;
  r.frequencies.resize(half);
  r.density.resize(half);
  for (std::size_t j = 1; j <= half; ++j) {
    r.frequencies[j - 1] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    // Bartlett weights make the estimate non-negative; clip rounding noise.
    r.density[j - 1] = std::max(0.0, spec[j].real() / (2.0 * std::numbers::pi));
  }
  return r;
}

double log_log_slope(const SpectrumResult& spectrum, double lo, double hi) {
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t j = 0; j < spectrum.frequencies.size(); ++j) {
    const double l = spectrum.frequencies[j];
    if (l < lo || l > hi || !(spectrum.density[j] > 0.0)) continue;
    x.push_back(std::log(l));
    y.push_back(std::log(spectrum.density[j]));
  }
  if (x.size() < 2) throw Error(ErrorKind::insufficient_data, "fewer than 2 frequencies in band");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

}  // namespace lrd
