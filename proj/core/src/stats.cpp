#include "lrd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "lrd/error.hpp"

namespace lrd {

namespace {

// MacKinnon (2010) response-surface coefficients, constant / no trend, one
// integrated regressor: cv(T) = b0 + b1/T + b2/T^2 + b3/T^3.
struct ResponseSurface {
  double level;
  double b0, b1, b2, b3;
};
constexpr ResponseSurface kAdfConstant[] = {
    {0.01, -3.43035, -6.5393, -16.786, -79.433},
    {0.05, -2.86154, -2.8903, -4.234, -40.040},
    {0.10, -2.56677, -1.5384, -2.809, 0.0},
};

// Kwiatkowski et al. (1992), level stationarity.
constexpr std::pair<double, double> kKpssLevel[] = {
    {0.01, 0.739}, {0.025, 0.574}, {0.05, 0.463}, {0.10, 0.347}};

void fill_decisions(TestReport& r) {
  r.reject_at.clear();
  for (const auto& [level, cv] : r.critical_values)
    r.reject_at[level] = r.direction == RejectWhen::above ? r.statistic > cv : r.statistic < cv;

  // Strictest level at which we reject gives the bracket.
  auto g = [](double v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
  };
  double looser = 0.0;
  for (const auto& [level, rejected] : r.reject_at) {
    if (rejected) {
      r.p_bracket = looser == 0.0 ? "<" + g(level) : g(looser) + "-" + g(level);
      return;
    }
    looser = level;
  }
  r.p_bracket = ">" + g(looser);
}

}  // namespace

bool TestReport::rejects(double level) const {
  const auto it = reject_at.find(level);
  return it != reject_at.end() && it->second;
}

DescriptiveStats describe(std::span<const double> values) {
  if (values.size() < 2)
    throw Error(ErrorKind::insufficient_data, "describe needs at least 2 values");

  // Single-pass central moment updates (Terriberry's extension of Welford).
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  DescriptiveStats s;
  s.min = values.front();
  s.max = values.front();
  for (double x : values) {
    const double n1 = n;
    n += 1.0;
    const double delta = x - mean;
    const double delta_n = delta / n;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean += delta_n;
    m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2 - 4.0 * delta_n * m3;
    m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2;
    m2 += term1;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.n = values.size();
  s.mean = mean;
  s.sd = std::sqrt(m2 / (n - 1.0));
  if (m2 > 0.0) {
    const double c2 = m2 / n;
    s.skewness = (m3 / n) / std::pow(c2, 1.5);
    s.excess_kurtosis = (m4 / n) / (c2 * c2) - 3.0;
  }
  return s;
}

double jarque_bera_statistic(std::size_t n, double skewness, double excess_kurtosis) {
  return static_cast<double>(n) / 6.0 *
         (skewness * skewness + excess_kurtosis * excess_kurtosis / 4.0);
}

double chi2_2dof_sf(double x) { return x <= 0.0 ? 1.0 : std::exp(-x / 2.0); }

TestReport jarque_bera(std::span<const double> values) {
  if (values.size() < 8)
    throw Error(ErrorKind::insufficient_data, "Jarque-Bera needs at least 8 values");
  const DescriptiveStats d = describe(values);
  if (d.degenerate())
    throw Error(ErrorKind::undefined, "Jarque-Bera undefined for a zero-variance sample");

  TestReport r;
  r.test = "jarque_bera";
  r.statistic = jarque_bera_statistic(d.n, *d.skewness, *d.excess_kurtosis);
  r.p_value = chi2_2dof_sf(r.statistic);
  r.direction = RejectWhen::above;
  for (double level : {0.01, 0.05, 0.10}) r.critical_values[level] = -2.0 * std::log(level);
  fill_decisions(r);
  return r;
}

TestReport adf_test(std::span<const double> values, int lags) {
  if (lags < 0) throw Error(ErrorKind::invalid_config, "ADF lag order must be non-negative");
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  const std::ptrdiff_t p = lags;
  const std::ptrdiff_t k = p + 2;
  const std::ptrdiff_t rows = n - 1 - p;
  if (n <= p + 2 || rows <= k)
    throw Error(ErrorKind::insufficient_data,
                "ADF(" + std::to_string(lags) + ") needs more than " +
                    std::to_string(2 * p + 3) + " observations, got " + std::to_string(n));

  std::vector<double> dx(static_cast<std::size_t>(n - 1));
  for (std::ptrdiff_t t = 0; t + 1 < n; ++t) dx[t] = values[t + 1] - values[t];

  Eigen::MatrixXd X(rows, k);
  Eigen::VectorXd y(rows);
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const std::ptrdiff_t t = r + p;  // index into dx
    y(r) = dx[t];
    X(r, 0) = 1.0;
    X(r, 1) = values[t];
    for (std::ptrdiff_t j = 1; j <= p; ++j) X(r, 1 + j) = dx[t - j];
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivoted(X);
  if (pivoted.rank() < k)
    throw Error(ErrorKind::degenerate, "ADF regressor matrix is rank deficient");

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - X * beta;
  const double sigma2 = resid.squaredNorm() / static_cast<double>(rows - k);

  // [(X'X)^-1]_11 = |R^-T e_1|^2.
  const Eigen::MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
  e(1) = 1.0;
  const Eigen::VectorXd z = R.transpose().triangularView<Eigen::Lower>().solve(e);
  const double se = std::sqrt(sigma2 * z.squaredNorm());
  if (!(se > 0.0) || !std::isfinite(se))
    throw Error(ErrorKind::degenerate, "ADF standard error is zero or not finite");

  TestReport r;
  r.test = "adf";
  r.statistic = beta(1) / se;
  r.lags_or_bandwidth = lags;
  r.direction = RejectWhen::below;
  const double T = static_cast<double>(rows);
  for (const auto& c : kAdfConstant)
    r.critical_values[c.level] = c.b0 + c.b1 / T + c.b2 / (T * T) + c.b3 / (T * T * T);
  fill_decisions(r);
  return r;
}

TestReport kpss_test(std::span<const double> values, int bandwidth) {
  if (bandwidth < 0) throw Error(ErrorKind::invalid_config, "KPSS bandwidth must be non-negative");
  const std::size_t n = values.size();
  const auto l = static_cast<std::size_t>(bandwidth);
  if (n <= l + 1)
    throw Error(ErrorKind::insufficient_data,
                "KPSS(" + std::to_string(bandwidth) + ") needs more than " + std::to_string(l + 1) +
                    " observations");

  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= static_cast<double>(n);
  std::vector<double> e(n);
  for (std::size_t t = 0; t < n; ++t) e[t] = values[t] - mean;

  double partial = 0.0;
  double numerator = 0.0;
  for (double v : e) {
    partial += v;
    numerator += partial * partial;
  }
  const double T = static_cast<double>(n);
  numerator /= T * T;

  auto autocov = [&](std::size_t lag) {
    double acc = 0.0;
    for (std::size_t t = lag; t < n; ++t) acc += e[t] * e[t - lag];
    return acc / T;
  };
  double lrv = autocov(0);
  for (std::size_t lag = 1; lag <= l; ++lag)
    lrv += 2.0 * (1.0 - static_cast<double>(lag) / static_cast<double>(l + 1)) * autocov(lag);
  double scale = 0.0;
  for (double x : values) scale = std::max(scale, std::abs(x));
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  if (!(lrv > floor * floor))
    throw Error(ErrorKind::undefined, "KPSS long-run variance is zero");

  TestReport r;
  r.test = "kpss";
  r.statistic = numerator / lrv;
  r.lags_or_bandwidth = bandwidth;
  r.direction = RejectWhen::above;
  for (const auto& [level, cv] : kKpssLevel) r.critical_values[level] = cv;
  fill_decisions(r);
  return r;
}

}  // namespace lrd
