#ifndef LRD_STATS_HPP
#define LRD_STATS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "lrd/series.hpp"

namespace lrd {

/// Sample moments. Skewness and excess kurtosis use 1/n central moments and
/// are absent when the variance is zero.
struct DescriptiveStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // n-1 denominator
  std::optional<double> skewness;
  std::optional<double> excess_kurtosis;
  double min = 0.0;
  double max = 0.0;

  bool degenerate() const noexcept { return !skewness.has_value(); }
};

/// Direction in which a statistic rejects the null hypothesis.
enum class RejectWhen { above, below };

struct TestReport {
  std::string test;
  double statistic = 0.0;
  int lags_or_bandwidth = 0;
  std::optional<double> p_value;
  /// Bracketing statement against the tabulated levels, e.g. "<0.01" or ">0.1".
  std::string p_bracket;
  RejectWhen direction = RejectWhen::above;
  /// Keyed by significance level (0.01, 0.05, 0.10, ...).
  std::map<double, double> critical_values;
  std::map<double, bool> reject_at;

  bool rejects(double level) const;
};

DescriptiveStats describe(std::span<const double> values);
inline DescriptiveStats describe(const TimeSeries& series) { return describe(series.values()); }

/// (n/6)(S^2 + K^2/4).
double jarque_bera_statistic(std::size_t n, double skewness, double excess_kurtosis);

/// Normality test; p-value from chi-squared with 2 degrees of freedom.
TestReport jarque_bera(std::span<const double> values);
inline TestReport jarque_bera(const TimeSeries& s) { return jarque_bera(s.values()); }

/// Augmented Dickey-Fuller with a constant and no trend. The statistic is the
/// OLS t-ratio on x[t-1] in
///   dx[t] = a + b x[t-1] + sum_{j=1..lags} c_j dx[t-j] + e[t].
/// Critical values come from MacKinnon's finite-sample response surface.
TestReport adf_test(std::span<const double> values, int lags);
inline TestReport adf_test(const TimeSeries& s, int lags) { return adf_test(s.values(), lags); }

/// KPSS level-stationarity test with a Bartlett-kernel long-run variance,
/// weights 1 - k/(bandwidth+1).
TestReport kpss_test(std::span<const double> values, int bandwidth);
inline TestReport kpss_test(const TimeSeries& s, int bandwidth) {
  return kpss_test(s.values(), bandwidth);
}

/// Upper-tail probability of the chi-squared distribution with 2 dof.
double chi2_2dof_sf(double x);

}  // namespace lrd

#endif  // LRD_STATS_HPP
