#ifndef LRD_MFDFA_HPP
#define LRD_MFDFA_HPP

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "lrd/series.hpp"

namespace lrd {

/// Parameters of a multifractal detrended fluctuation analysis run.
struct MfdfaConfig {
  std::size_t s_min = 10;
  /// 0 resolves to floor(T/4) at run time.
  std::size_t s_max = 0;
  /// Target number of log-spaced scales before rounding to unique integers.
  std::size_t scale_count = 40;
  /// Degree of the per-window polynomial trend.
  int detrend_order = 1;
  std::vector<double> q_list{-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0};
  /// Worker threads used across scales; 0 means hardware concurrency.
  /// Results do not depend on this value.
  unsigned threads = 1;

  bool operator==(const MfdfaConfig&) const = default;
};

/// Largest usable scale for a series of length `length`.
std::size_t resolve_s_max(const MfdfaConfig& config, std::size_t length);

/// Validates `config` against a series of length `length` and returns the
/// geometric scale grid rounded to unique integers. Throws invalid_config.
std::vector<std::size_t> scale_grid(const MfdfaConfig& config, std::size_t length);

/// F_q(s) on a grid of scales and orders. Values are stored scale-major:
/// `value(i, j)` is F at `scales[i]` and `orders[j]`.
struct FluctuationCurve {
  std::vector<std::size_t> scales;
  std::vector<double> orders;
  std::vector<double> values;
  /// Windows with zero residual variance at each scale. They are skipped for
  /// q <= 0 and contribute 0 for q > 0.
  std::vector<std::size_t> zero_windows;
  MfdfaConfig config;
  std::size_t length = 0;

  /// Checks shape, ordering and positivity. Throws degenerate on violation.
  void validate() const;

  double value(std::size_t scale_index, std::size_t order_index) const {
    return values[scale_index * orders.size() + order_index];
  }
  std::size_t order_index(double q) const;
  /// F_q over all scales.
  std::vector<double> at_order(double q) const;
};

/// Log-log regression of F_q(s) on s.
struct ScalingFit {
  double q = 2.0;
  /// Exponent after any integration adjustment.
  double h = 0.0;
  /// Slope actually measured on the analysed series.
  double raw_slope = 0.0;
  /// Intercept of ln F against ln s.
  double intercept = 0.0;
  double std_error = 0.0;
  double r_squared = 0.0;
  std::size_t s_lo = 0;
  std::size_t s_hi = 0;
  std::size_t points = 0;
  /// 0, or -1 when the exponent was measured on the integrated series.
  int integrated_adjustment = 0;
};

/// Two-regime description of a fluctuation curve.
///
/// The regimes are fitted jointly as a continuous broken line in log-log
/// space with its knot at `crossover_scale`, so the single-line fit is a
/// special case and `sse_total <= sse_single` always holds.
struct CrossoverAnalysis {
  std::size_t crossover_scale = 0;
  ScalingFit fit_below;
  ScalingFit fit_above;
  double sse_total = 0.0;
  double sse_single = 0.0;
  /// (sse_single - sse_total) / total sum of squares of ln F.
  double improvement = 0.0;
  bool material = false;
  std::vector<std::size_t> candidates;
};

/// Default minimum `improvement` for a crossover to count as material.
inline constexpr double kMaterialCrossover = 0.01;

/// Exponent below which `hurst` re-estimates on the integrated series.
inline constexpr double kIntegrationTrigger = 0.2;

/// Cumulative sum of the demeaned input.
std::vector<double> profile(std::span<const double> values);

/// Mean squared residuals F^2(k, s) around a degree-`detrend_order`
/// polynomial in each of the floor(T/s) windows counted from the start, then
/// the same number counted back from the end. Residuals at rounding level are
/// reported as exactly 0.
std::vector<double> window_fluctuations(std::span<const double> profile, std::size_t s,
                                        int detrend_order);

/// Aggregates window variances into F_q for every order in `orders`.
/// `zero_count` receives the number of zero windows.
std::vector<double> aggregate_fluctuations(std::span<const double> window_f2,
                                           std::span<const double> orders, std::size_t s,
                                           std::size_t* zero_count = nullptr);

FluctuationCurve fluctuation_function(std::span<const double> values, const MfdfaConfig& config);
inline FluctuationCurve fluctuation_function(const TimeSeries& series, const MfdfaConfig& config) {
  return fluctuation_function(series.values(), config);
}

/// OLS fit over the grid scales inside [s_lo, s_hi]; needs at least 4.
ScalingFit fit_scaling(const FluctuationCurve& curve, double q, std::size_t s_lo,
                       std::size_t s_hi);
/// Over the full grid.
ScalingFit fit_scaling(const FluctuationCurve& curve, double q);

/// Exhaustive search for the knot minimizing the broken-line SSE. Every grid
/// scale leaving at least 4 points on each side (knot included) is tried.
CrossoverAnalysis detect_crossover(const FluctuationCurve& curve, double q,
                                   double material_threshold = kMaterialCrossover);

/// Broken-line fit with the knot forced at `scale` (need not be a grid point).
CrossoverAnalysis split_at(const FluctuationCurve& curve, double q, double scale,
                           double material_threshold = kMaterialCrossover);

/// DFA estimate at q = 2. With `use_crossover`, a material crossover restricts
/// the fit to the regime below it. Estimates under 0.2 are redone on the
/// integrated series and reduced by one.
ScalingFit hurst(std::span<const double> values, const MfdfaConfig& config, bool use_crossover);
inline ScalingFit hurst(const TimeSeries& series, const MfdfaConfig& config, bool use_crossover) {
  return hurst(series.values(), config, use_crossover);
}

/// One fit per order of the curve.
std::map<double, ScalingFit> generalized_hurst(const FluctuationCurve& curve, std::size_t s_lo,
                                               std::size_t s_hi);

/// True when F_q(s) is non-decreasing in q at every scale, to a relative
/// tolerance.
bool monotone_in_q(const FluctuationCurve& curve, double rel_tol = 1e-12);

}  // namespace lrd

#endif  // LRD_MFDFA_HPP
