#include "fft.hpp"

#include <algorithm>
#include <cstring>
#include <memory>
#include <mutex>

#include <fftw3.h>

namespace lrd::detail {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using fftw_buffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
fftw_buffer<T> allocate(std::size_t n) {
  return fftw_buffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1))));
}

struct PlanDeleter {
  void operator()(fftw_plan p) const noexcept {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using plan_ptr = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x) {
  const std::size_t n = x.size();
  auto in = allocate<double>(n);
  auto out = allocate<fftw_complex>(n / 2 + 1);
  plan_ptr plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(n / 2 + 1);
  for (std::size_t j = 0; j < result.size(); ++j) result[j] = {out[j][0], out[j][1]};
  return result;
}

std::vector<double> irfft(std::span<const std::complex<double>> half, std::size_t n) {
  auto in = allocate<fftw_complex>(n / 2 + 1);
  auto out = allocate<double>(n);
  plan_ptr plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  for (std::size_t j = 0; j < n / 2 + 1; ++j) {
    in[j][0] = half[j].real();
    in[j][1] = half[j].imag();
  }
  fftw_execute(plan.get());
  return std::vector<double>(out.get(), out.get() + n);
}

std::vector<double> autocovariance(std::span<const double> x, std::size_t max_lag) {
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  const std::size_t padded = next_pow2(2 * n);
  std::vector<double> buf(padded, 0.0);
  for (std::size_t t = 0; t < n; ++t) buf[t] = x[t] - mean;
  auto spec = rfft(buf);
  for (auto& c : spec) c = std::norm(c);
  const auto circ = irfft(spec, padded);

  std::vector<double> gamma(max_lag + 1);
  const double scale = 1.0 / (static_cast<double>(padded) * static_cast<double>(n));
  for (std::size_t k = 0; k <= max_lag; ++k) gamma[k] = circ[k] * scale;
  return gamma;
}

}  // namespace lrd::detail
