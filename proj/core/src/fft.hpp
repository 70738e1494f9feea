#ifndef LRD_SRC_FFT_HPP
#define LRD_SRC_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lrd::detail {

// Thin wrappers over FFTW. Plans use FFTW_ESTIMATE on aligned scratch
// buffers, so repeated calls with the same length execute the same codelets
// and give bit-identical results.

/// Forward real-to-complex DFT, sum_t x[t] exp(-2 pi i j t / n), j = 0..n/2.
std::vector<std::complex<double>> rfft(std::span<const double> x);

/// Unnormalized inverse of `rfft`: sum_j c[j] exp(+2 pi i j t / n) over the
/// full Hermitian-extended spectrum, t = 0..n-1.
std::vector<double> irfft(std::span<const std::complex<double>> half, std::size_t n);

/// Biased autocovariances (1/n) of the demeaned input for lags 0..max_lag,
/// via a zero-padded transform.
std::vector<double> autocovariance(std::span<const double> x, std::size_t max_lag);

}  // namespace lrd::detail

#endif
