#ifndef SSFMLAB_STATS_HPP
#define SSFMLAB_STATS_HPP

#include <Eigen/Dense>

#include "ssfmlab/field.hpp"

namespace ssfmlab {

// Empirical second-moment matrix R = (1/M) sum x x^H (Hermitian-symmetrized)
// and pseudo-covariance Q~ = (1/M) sum (x - xbar)(x - xbar)^T. A proper
// ensemble has Q~ ~ 0.
struct CorrelationEstimate {
  Eigen::MatrixXcd r;
  Eigen::MatrixXcd pseudo;
  int sample_count = 0;

  double trace() const { return r.trace().real(); }
};

CorrelationEstimate estimate_correlation(const Ensemble& e);

// Basic scalar moments used by the normality checks.
struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

MomentSummary summarize_moments(const Eigen::VectorXd& samples);

// Mean and standard error of a sample.
struct MeanWithError {
  double mean = 0.0;
  double standard_error = 0.0;
};

MeanWithError mean_with_error(const std::vector<double>& values);

}  // namespace ssfmlab

#endif
