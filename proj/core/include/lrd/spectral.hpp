#ifndef LRD_SPECTRAL_HPP
#define LRD_SPECTRAL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lrd/series.hpp"

namespace lrd {

struct AcfResult {
  std::vector<double> rho;  // rho[k] for lags k = 0..max_lag
  std::size_t n = 0;

  std::size_t max_lag() const noexcept { return rho.empty() ? 0 : rho.size() - 1; }
};

struct SpectrumResult {
  std::vector<double> frequencies;  // 2 pi j / T, j = 1..floor(T/2)
  std::vector<double> density;
  std::size_t bandwidth = 0;
  std::string kernel = "bartlett";
};

/// Sample autocorrelation from the biased (1/T) autocovariance.
AcfResult acf(std::span<const double> values, std::size_t max_lag);
inline AcfResult acf(const TimeSeries& s, std::size_t max_lag) { return acf(s.values(), max_lag); }

/// Lag-window spectral estimate
///   f(l) = (1/2pi) sum_{|k| < m} (1 - |k|/m) gamma(k) cos(k l)
/// on the Fourier frequencies, with m = `bandwidth`.
SpectrumResult smoothed_periodogram(std::span<const double> values, std::size_t bandwidth);
inline SpectrumResult smoothed_periodogram(const TimeSeries& s, std::size_t bandwidth) {
  return smoothed_periodogram(s.values(), bandwidth);
}

/// round(0.1 T), at least 1.
std::size_t default_bandwidth(std::size_t length);

/// OLS slope of ln f against ln lambda over frequencies in [lo, hi].
double log_log_slope(const SpectrumResult& spectrum, double lo, double hi);

}  // namespace lrd

#endif  // LRD_SPECTRAL_HPP
