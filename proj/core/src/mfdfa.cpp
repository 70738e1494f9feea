#include "lrd/mfdfa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include <Eigen/Dense>

#include "lrd/error.hpp"

namespace lrd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Columns of an s x (m+1) matrix with orthonormal columns spanning the
// polynomials of degree <= m on i = 0..s-1. Built from powers of the index
// mapped onto [-1, 1], orthogonalized twice with modified Gram-Schmidt.
std::vector<double> polynomial_basis(std::size_t s, int m) {
  const std::size_t cols = static_cast<std::size_t>(m) + 1;
  std::vector<double> q(s * cols);
  const double half = s > 1 ? (static_cast<double>(s) - 1.0) / 2.0 : 1.0;
  for (std::size_t j = 0; j < cols; ++j) {
    double* col = &q[j * s];
    for (std::size_t i = 0; i < s; ++i) col[i] = std::pow((static_cast<double>(i) - half) / half, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const double* prev = &q[k * s];
        double dot = 0.0;
        for (std::size_t i = 0; i < s; ++i) dot += prev[i] * col[i];
        for (std::size_t i = 0; i < s; ++i) col[i] -= dot * prev[i];
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < s; ++i) norm += col[i] * col[i];
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < s; ++i) col[i] /= norm;
    }
  }
  return q;
}

double window_residual_variance(const double* w, std::size_t s, const std::vector<double>& basis,
                                std::size_t cols, std::vector<double>& resid) {
  double scale = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    resid[i] = w[i];
    scale = std::max(scale, std::abs(w[i]));
  }
  for (std::size_t j = 0; j < cols; ++j) {
    const double* col = &basis[j * s];
    double c = 0.0;
    for (std::size_t i = 0; i < s; ++i) c += col[i] * resid[i];
    for (std::size_t i = 0; i < s; ++i) resid[i] -= c * col[i];
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < s; ++i) ss += resid[i] * resid[i];
  const double f2 = ss / static_cast<double>(s);
  const double floor = 64.0 * kEps * scale;
  return f2 <= floor * floor ? 0.0 : f2;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double sse = 0.0;
  double sst = 0.0;
  double std_error = 0.0;
};

LineFit ols_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    f.sse += r * r;
  }
  f.sst = syy;
  f.std_error = x.size() > 2 ? std::sqrt(f.sse / (n - 2.0) / sxx) : 0.0;
  return f;
}

double r_squared(double sse, double sst) {
  if (sst <= 0.0) return sse <= 0.0 ? 1.0 : 0.0;
  return std::clamp(1.0 - sse / sst, 0.0, 1.0);
}

struct LogCurve {
  std::vector<double> x;  // ln s
  std::vector<double> y;  // ln F_q(s)
  std::vector<std::size_t> scales;
};

LogCurve log_curve(const FluctuationCurve& curve, double q, std::size_t s_lo, std::size_t s_hi) {
  const std::size_t j = curve.order_index(q);
  LogCurve c;
  for (std::size_t i = 0; i < curve.scales.size(); ++i) {
    const std::size_t s = curve.scales[i];
    if (s < s_lo || s > s_hi) continue;
    c.x.push_back(std::log(static_cast<double>(s)));
    c.y.push_back(std::log(curve.value(i, j)));
    c.scales.push_back(s);
  }
  return c;
}

// Continuous broken line y = a + b1 min(x - k, 0) + b2 max(x - k, 0).
CrossoverAnalysis broken_line(const LogCurve& c, double q, double knot_log, std::size_t knot_scale,
                              double material_threshold) {
  const auto n = static_cast<Eigen::Index>(c.x.size());
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = c.x[static_cast<std::size_t>(i)] - knot_log;
    X(i, 0) = 1.0;
    X(i, 1) = std::min(d, 0.0);
    X(i, 2) = std::max(d, 0.0);
    y(i) = c.y[static_cast<std::size_t>(i)];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < 3) throw Error(ErrorKind::degenerate, "broken-line fit is rank deficient");
  const Eigen::Vector3d beta = qr.solve(y);
  const Eigen::VectorXd resid = y - X * beta;
  const Eigen::Matrix3d cov_unscaled = (X.transpose() * X).inverse();
  const double sigma2 = n > 3 ? resid.squaredNorm() / static_cast<double>(n - 3) : 0.0;

  CrossoverAnalysis out;
  out.crossover_scale = knot_scale;
  out.sse_total = resid.squaredNorm();
  const LineFit single = ols_line(c.x, c.y);
  out.sse_single = single.sse;
  out.improvement = single.sst > 0.0 ? (single.sse - out.sse_total) / single.sst : 0.0;
  out.material = out.improvement >= material_threshold;

  auto side = [&](bool below) {
    ScalingFit f;
    f.q = q;
    f.raw_slope = f.h = beta(below ? 1 : 2);
    f.intercept = beta(0) - f.h * knot_log;
    f.std_error = std::sqrt(sigma2 * cov_unscaled(below ? 1 : 2, below ? 1 : 2));
    double sse = 0.0;
    double my = 0.0;
    std::vector<double> ys;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = c.x[static_cast<std::size_t>(i)] - knot_log;
      if (below ? d <= 0.0 : d >= 0.0) {
        sse += resid(i) * resid(i);
        ys.push_back(y(i));
        my += y(i);
        if (f.points == 0) f.s_lo = c.scales[static_cast<std::size_t>(i)];
        f.s_hi = c.scales[static_cast<std::size_t>(i)];
        ++f.points;
      }
    }
    my /= static_cast<double>(ys.size());
    double sst = 0.0;
    for (double v : ys) sst += (v - my) * (v - my);
    f.r_squared = r_squared(sse, sst);
    return f;
  };
  out.fit_below = side(true);
  out.fit_above = side(false);
  return out;
}

}  // namespace

std::size_t resolve_s_max(const MfdfaConfig& config, std::size_t length) {
  return config.s_max == 0 ? length / 4 : config.s_max;
}

std::vector<std::size_t> scale_grid(const MfdfaConfig& config, std::size_t length) {
  const std::size_t s_max = resolve_s_max(config, length);
  auto fail = [](const std::string& why) { throw Error(ErrorKind::invalid_config, why); };
  if (config.s_min < 4) fail("s_min must be at least 4");
  if (s_max > length / 4)
    fail("s_max = " + std::to_string(s_max) + " exceeds T/4 = " + std::to_string(length / 4));
  if (config.s_min >= s_max)
    fail("s_min = " + std::to_string(config.s_min) + " must be below s_max = " +
         std::to_string(s_max) + " (T = " + std::to_string(length) + ")");
  if (config.detrend_order < 0) fail("detrend order must be non-negative");
  if (static_cast<std::size_t>(config.detrend_order) >= config.s_min)
    fail("detrend order must be below s_min");
  if (config.scale_count < 2) fail("scale_count must be at least 2");
  if (config.q_list.empty()) fail("q list is empty");
  bool has_two = false;
  for (double q : config.q_list) {
    if (!std::isfinite(q)) fail("q list contains a non-finite order");
    has_two = has_two || q == 2.0;
  }
  if (!has_two) fail("q list must include 2");

  std::vector<std::size_t> grid;
  const double lo = std::log(static_cast<double>(config.s_min));
  const double hi = std::log(static_cast<double>(s_max));
  const double steps = static_cast<double>(config.scale_count - 1);
  for (std::size_t i = 0; i < config.scale_count; ++i) {
    std::size_t s = static_cast<std::size_t>(std::llround(std::exp(lo + (hi - lo) * static_cast<double>(i) / steps)));
    s = std::clamp(s, config.s_min, s_max);
    if (grid.empty() || s > grid.back()) grid.push_back(s);
  }
  if (grid.front() != config.s_min) grid.insert(grid.begin(), config.s_min);
  if (grid.back() != s_max) grid.push_back(s_max);
  if (grid.size() < 8)
    fail("scale grid has only " + std::to_string(grid.size()) +
         " distinct scales; widen [s_min, s_max] or raise scale_count");
  return grid;
}

void FluctuationCurve::validate() const {
  if (scales.empty() || orders.empty() || values.size() != scales.size() * orders.size())
    throw Error(ErrorKind::degenerate, "fluctuation curve has inconsistent shape");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (scales[i] <= scales[i - 1])
      throw Error(ErrorKind::degenerate, "fluctuation curve scales must be strictly increasing");
  for (std::size_t i = 1; i < orders.size(); ++i)
    if (orders[i] <= orders[i - 1])
      throw Error(ErrorKind::degenerate, "fluctuation curve orders must be strictly increasing");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorKind::degenerate, "fluctuation values must be positive and finite");
}

std::size_t FluctuationCurve::order_index(double q) const {
  for (std::size_t j = 0; j < orders.size(); ++j)
    if (orders[j] == q) return j;
  throw Error(ErrorKind::invalid_config,
              "order q = " + std::to_string(q) + " not present in fluctuation curve");
}

std::vector<double> FluctuationCurve::at_order(double q) const {
  const std::size_t j = order_index(q);
  std::vector<double> out(scales.size());
  for (std::size_t i = 0; i < scales.size(); ++i) out[i] = value(i, j);
  return out;
}

std::vector<double> profile(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorKind::insufficient_data, "profile needs at least 2 values");
  // Neumaier-compensated sums keep X(T) at rounding level.
  auto compensated = [](double& sum, double& comp, double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) compensated(sum, comp, v);
  const double mean = (sum + comp) / static_cast<double>(values.size());

  std::vector<double> out(values.size());
  sum = 0.0;
  comp = 0.0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    compensated(sum, comp, values[t] - mean);
    out[t] = sum + comp;
  }
  return out;
}

std::vector<double> window_fluctuations(std::span<const double> prof, std::size_t s,
                                        int detrend_order) {
  const std::size_t T = prof.size();
  if (detrend_order < 0) throw Error(ErrorKind::invalid_config, "detrend order must be non-negative");
  if (static_cast<std::size_t>(detrend_order) >= s)
    throw Error(ErrorKind::degenerate, "detrend order " + std::to_string(detrend_order) +
                                           " leaves no residual in windows of length " +
                                           std::to_string(s));
  if (s == 0 || s > T)
    throw Error(ErrorKind::insufficient_data,
                "scale " + std::to_string(s) + " does not fit a profile of length " + std::to_string(T));

  const std::size_t windows = T / s;
  const std::size_t cols = static_cast<std::size_t>(detrend_order) + 1;
  const auto basis = polynomial_basis(s, detrend_order);
  std::vector<double> resid(s);
  std::vector<double> out(2 * windows);
  for (std::size_t k = 0; k < windows; ++k)
    out[k] = window_residual_variance(prof.data() + k * s, s, basis, cols, resid);
  for (std::size_t k = 0; k < windows; ++k)
    out[windows + k] = window_residual_variance(prof.data() + (T - (k + 1) * s), s, basis, cols, resid);
  return out;
}

std::vector<double> aggregate_fluctuations(std::span<const double> f2,
                                           std::span<const double> orders, std::size_t s,
                                           std::size_t* zero_count) {
  std::size_t zeros = 0;
  double largest = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (double v : f2) {
    if (v == 0.0) {
      ++zeros;
    } else {
      largest = std::max(largest, v);
      smallest = std::min(smallest, v);
    }
  }
  if (zero_count) *zero_count = zeros;
  if (zeros == f2.size())
    throw Error(ErrorKind::degenerate,
                "all windows have zero fluctuation at scale s = " + std::to_string(s));

  const double nonzero = static_cast<double>(f2.size() - zeros);
  std::vector<double> out(orders.size());
  for (std::size_t j = 0; j < orders.size(); ++j) {
    const double q = orders[j];
    if (q == 0.0) {
      double acc = 0.0;
      for (double v : f2)
        if (v > 0.0) acc += std::log(v);
      out[j] = std::exp(0.5 * acc / nonzero);
      continue;
    }
    // Factor out a reference window so the powers stay in range.
    const double ref = q > 0.0 ? largest : smallest;
    double acc = 0.0;
    for (double v : f2)
      if (v > 0.0) acc += std::pow(v / ref, q / 2.0);
    const double count = q > 0.0 ? static_cast<double>(f2.size()) : nonzero;
    out[j] = std::sqrt(ref) * std::pow(acc / count, 1.0 / q);
  }
  return out;
}

FluctuationCurve fluctuation_function(std::span<const double> values, const MfdfaConfig& config) {
  FluctuationCurve curve;
  curve.scales = scale_grid(config, values.size());
  curve.orders = config.q_list;
  std::sort(curve.orders.begin(), curve.orders.end());
  curve.orders.erase(std::unique(curve.orders.begin(), curve.orders.end()), curve.orders.end());
  curve.config = config;
  curve.length = values.size();

  const auto prof = profile(values);
  const std::size_t n_scales = curve.scales.size();
  const std::size_t n_orders = curve.orders.size();
  curve.values.assign(n_scales * n_orders, 0.0);
  curve.zero_windows.assign(n_scales, 0);
  std::vector<std::exception_ptr> failures(n_scales);

  auto work = [&](std::size_t i) {
    try {
      const auto f2 = window_fluctuations(prof, curve.scales[i], config.detrend_order);
      const auto fq = aggregate_fluctuations(f2, curve.orders, curve.scales[i], &curve.zero_windows[i]);
      std::copy(fq.begin(), fq.end(), curve.values.begin() + static_cast<std::ptrdiff_t>(i * n_orders));
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_scales));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n_scales; ++i) work(i);
  } else {
    // Each scale is written to its own slot, so scheduling cannot change results.
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n_scales; i = next++) work(i);
      });
  }
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);

  curve.validate();
  return curve;
}

ScalingFit fit_scaling(const FluctuationCurve& curve, double q, std::size_t s_lo, std::size_t s_hi) {
  const LogCurve c = log_curve(curve, q, s_lo, s_hi);
  if (c.x.size() < 4)
    throw Error(ErrorKind::insufficient_data,
                "only " + std::to_string(c.x.size()) + " grid scales in [" + std::to_string(s_lo) +
                    ", " + std::to_string(s_hi) + "]; need at least 4");
  const LineFit line = ols_line(c.x, c.y);
  ScalingFit f;
  f.q = q;
  f.h = f.raw_slope = line.slope;
  f.intercept = line.intercept;
  f.std_error = line.std_error;
  f.r_squared = r_squared(line.sse, line.sst);
  f.s_lo = c.scales.front();
  f.s_hi = c.scales.back();
  f.points = c.x.size();
  return f;
}

ScalingFit fit_scaling(const FluctuationCurve& curve, double q) {
  return fit_scaling(curve, q, curve.scales.front(), curve.scales.back());
}

CrossoverAnalysis detect_crossover(const FluctuationCurve& curve, double q, double material_threshold) {
  constexpr std::size_t kMinSide = 4;
  const LogCurve c = log_curve(curve, q, curve.scales.front(), curve.scales.back());
  const std::size_t n = c.x.size();
  if (n < 10 || n < 2 * kMinSide - 1)
    throw Error(ErrorKind::insufficient_data, "crossover search needs at least 10 scales, curve has " +
                                                  std::to_string(n));

  std::vector<std::size_t> candidates;
  for (std::size_t k = kMinSide - 1; k + kMinSide <= n; ++k) candidates.push_back(k);

  CrossoverAnalysis best;
  bool have = false;
  for (std::size_t k : candidates) {
    CrossoverAnalysis a = broken_line(c, q, c.x[k], c.scales[k], material_threshold);
    // Strict comparison keeps the smallest scale among ties.
    if (!have || a.sse_total < best.sse_total) {
      best = std::move(a);
      have = true;
    }
  }
  best.candidates.clear();
  for (std::size_t k : candidates) best.candidates.push_back(c.scales[k]);
  return best;
}

CrossoverAnalysis split_at(const FluctuationCurve& curve, double q, double scale,
                           double material_threshold) {
  constexpr std::size_t kMinSide = 4;
  const LogCurve c = log_curve(curve, q, curve.scales.front(), curve.scales.back());
  std::size_t below = 0;
  std::size_t above = 0;
  for (std::size_t s : c.scales) {
    below += static_cast<double>(s) <= scale;
    above += static_cast<double>(s) >= scale;
  }
  if (below < kMinSide || above < kMinSide)
    throw Error(ErrorKind::insufficient_data,
                "split at s = " + std::to_string(scale) + " leaves fewer than 4 scales on one side");
  auto out = broken_line(c, q, std::log(scale), static_cast<std::size_t>(std::llround(scale)),
                         material_threshold);
  out.candidates = {out.crossover_scale};
  return out;
}

ScalingFit hurst(std::span<const double> values, const MfdfaConfig& config, bool use_crossover) {
  MfdfaConfig dfa = config;
  dfa.q_list = {2.0};

  auto estimate = [&](std::span<const double> x) {
    const FluctuationCurve curve = fluctuation_function(x, dfa);
    if (use_crossover && curve.scales.size() >= 10) {
      const CrossoverAnalysis cross = detect_crossover(curve, 2.0);
      if (cross.material) return cross.fit_below;
    }
    return fit_scaling(curve, 2.0);
  };

  ScalingFit fit = estimate(values);
  if (fit.h < kIntegrationTrigger) {
    std::vector<double> integrated(values.size());
    std::partial_sum(values.begin(), values.end(), integrated.begin());
    fit = estimate(integrated);
    fit.h = fit.raw_slope - 1.0;
    fit.integrated_adjustment = -1;
  }
  return fit;
}

std::map<double, ScalingFit> generalized_hurst(const FluctuationCurve& curve, std::size_t s_lo,
                                               std::size_t s_hi) {
  std::map<double, ScalingFit> out;
  for (double q : curve.orders) out.emplace(q, fit_scaling(curve, q, s_lo, s_hi));
  return out;
}

bool monotone_in_q(const FluctuationCurve& curve, double rel_tol) {
  for (std::size_t i = 0; i < curve.scales.size(); ++i)
    for (std::size_t j = 1; j < curve.orders.size(); ++j)
      if (curve.value(i, j) < curve.value(i, j - 1) * (1.0 - rel_tol)) return false;
  return true;
}

}  // namespace lrd
