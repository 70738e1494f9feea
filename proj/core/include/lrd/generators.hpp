#ifndef LRD_GENERATORS_HPP
#define LRD_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrd/series.hpp"

namespace lrd {

enum class GeneratorKind { fgn, fbm, ar1, sinusoid_plus_fgn, cascade };

std::string to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view text);

/// Synthetic process description. Only the fields relevant to `kind` are read.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::fgn;
  std::size_t n = 1024;
  double hurst = 0.5;      // fgn, fbm, sinusoid-plus-fgn: (0, 1)
  double phi = 0.0;        // ar1: (-1, 1)
  double period = 24.0;    // sinusoid-plus-fgn, in samples
  double amplitude = 1.0;  // sinusoid-plus-fgn
  double cascade_p = 0.7;  // cascade: (0.5, 1)
  std::uint64_t seed = 0;
  EpochSeconds start = 0;
  EpochSeconds spacing = 3600;

  /// Throws invalid_config when a parameter is out of its domain.
  void validate() const;
};

/// Standard normal variates from std::mt19937_64 via the Box-Muller
/// transform on 53-bit uniforms in (0, 1). Both the engine and the transform
/// are fully specified, so a seed gives the same stream on every platform
/// (up to the last ulp of the libm cos/sin/log).
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // (0, 1)
  double operator()();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Exact autocovariance of unit-variance fractional Gaussian noise,
/// 0.5 (|k+1|^2H - 2|k|^2H + |k-1|^2H), for k = 0..n-1.
std::vector<double> fgn_autocovariance(double hurst, std::size_t n);

/// Stationary Gaussian path of length autocovariance.size() with the given
/// autocovariance. Uses circulant embedding; if the embedding has a negative
/// eigenvalue beyond rounding, falls back to a Cholesky factorization for
/// paths up to 4096 points and throws otherwise.
std::vector<double> simulate_gaussian(std::span<const double> autocovariance, NormalStream& normals);

/// True when the minimal circulant embedding of `autocovariance` is
/// non-negative definite to rounding.
bool circulant_embeddable(std::span<const double> autocovariance);

/// Binomial multiplicative cascade on 2^ceil(log2 n) points, truncated to n:
/// point i carries p^ones(i) (1-p)^(K-ones(i)), rescaled to unit mean.
std::vector<double> binomial_cascade(std::size_t n, double p);

TimeSeries generate(const GeneratorSpec& spec);

}  // namespace lrd

#endif  // LRD_GENERATORS_HPP
