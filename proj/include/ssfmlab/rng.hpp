#ifndef SSFMLAB_RNG_HPP
#define SSFMLAB_RNG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace ssfmlab {

// Labels the consumer of a derived random stream. Each (realization, step,
// purpose) triple maps to its own engine, so Monte-Carlo results do not
// depend on evaluation order or thread count.
enum class StreamPurpose : std::uint64_t {
  kInput = 1,
  kNoise = 2,
  kJitter = 3,
  kBootstrap = 4,
  kSampling = 5,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t realization,
                                 std::uint64_t step, StreamPurpose purpose) {
  std::uint64_t s = master;
  std::uint64_t h = detail::splitmix64(s);
  s = h ^ (realization * 0xD1342543DE82EF95ULL);
  h = detail::splitmix64(s);
  s = h ^ (step * 0xA0761D6478BD642FULL);
  h = detail::splitmix64(s);
  s = h ^ static_cast<std::uint64_t>(purpose);
  return detail::splitmix64(s);
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t realization,
                                   std::uint64_t step, StreamPurpose purpose) {
  return std::mt19937_64(derive_seed(master, realization, step, purpose));
}

// Proper complex Gaussian with total per-sample variance `variance`
// (variance/2 in each real component).
inline std::complex<double> proper_gaussian(std::mt19937_64& rng, double variance) {
  if (variance <= 0.0) return {0.0, 0.0};
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

inline Eigen::VectorXcd proper_gaussian_vector(std::mt19937_64& rng, Eigen::Index n,
                                               double variance) {
  if (variance <= 0.0) return Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd out(n);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    out[i] = {re, im};
  }
  return out;
}

}  // namespace ssfmlab

#endif
