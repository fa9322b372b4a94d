#ifndef SSFMLAB_ENTROPY_HPP
#define SSFMLAB_ENTROPY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "ssfmlab/field.hpp"

namespace ssfmlab {

enum class EntropyEstimator { kKnn, kHistogram };

struct EntropyEstimate {
  double value = 0.0;           // nats
  double standard_error = 0.0;  // nats, bootstrap
  EntropyEstimator estimator = EntropyEstimator::kKnn;
  int k = 0;                    // neighbor count (knn) or bins per axis (histogram)
  int sample_count = 0;
  int dimension = 0;            // real dimensions
  int jittered_points = 0;      // duplicates perturbed at 1e-12 scale
};

struct KnnOptions {
  int k = 4;
  int bootstrap_resamples = 100;
  std::uint64_t seed = 0;
  int num_threads = 0;
};

// Kozachenko-Leonenko k-NN differential entropy of M points in d real
// dimensions (rows of `points`), in nats. Exact duplicates are jittered at
// 1e-12 of the per-axis spread so the k-th neighbor distance never vanishes;
// the count of affected points is reported in the estimate. Reliable for
// d <= 8 at desk-scale sample counts.
EntropyEstimate knn_entropy(const Eigen::MatrixXd& points, const KnnOptions& options = {});

// Plug-in histogram estimator, mostly a cross-check for d <= 2.
EntropyEstimate histogram_entropy(const Eigen::MatrixXd& points, int bins_per_axis = 0);

// Entropy power of a complex vector of dimension `complex_dim` with entropy
// h nats: V = exp(h / L) / (pi e), in W per complex dimension.
double entropy_power(double h_nats, int complex_dim);
double entropy_power(const EntropyEstimate& h, int complex_dim);

// Embedding of complex samples into 2L real coordinates (re, im interleaved),
// one row per realization.
Eigen::MatrixXd real_embedding(const Ensemble& e);
Eigen::MatrixXd real_embedding(const std::vector<Eigen::VectorXcd>& samples);

// Digamma at positive integer argument (exact harmonic form with an
// asymptotic tail for large n).
double digamma_int(std::int64_t n);

// Closed-form entropy of a proper complex Gaussian with per-component
// variance `variance`: L log(pi e variance).
double gaussian_entropy_nats(int complex_dim, double variance);

}  // namespace ssfmlab

#endif
