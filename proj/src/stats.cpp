#include "ssfmlab/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ssfmlab {

CorrelationEstimate estimate_correlation(const Ensemble& e) {
  e.validate();
  if (e.size() < 2)
    throw std::invalid_argument("correlation estimation needs at least 2 realizations");
  const Eigen::Index l = e.length();
  const int m = e.size();

  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(l, l);
  Eigen::VectorXcd mean = Eigen::VectorXcd::Zero(l);
  for (const auto& f : e.realizations) {
    r.noalias() += f.samples * f.samples.adjoint();
    mean += f.samples;
  }
  r /= static_cast<double>(m);
  mean /= static_cast<double>(m);

  Eigen::MatrixXcd pseudo = Eigen::MatrixXcd::Zero(l, l);
  for (const auto& f : e.realizations) {
    const Eigen::VectorXcd centered = f.samples - mean;
    pseudo.noalias() += centered * centered.transpose();
  }
  pseudo /= static_cast<double>(m);

  CorrelationEstimate est;
  est.r = 0.5 * (r + r.adjoint().eval());
  est.pseudo = std::move(pseudo);
  est.sample_count = m;
  return est;
}

MomentSummary summarize_moments(const Eigen::VectorXd& samples) {
  const auto n = static_cast<double>(samples.size());
  if (samples.size() < 2) throw std::invalid_argument("need at least 2 samples");
  MomentSummary s;
  s.mean = samples.mean();
  const Eigen::VectorXd centered = samples.array() - s.mean;
  s.variance = centered.squaredNorm() / n;
  const double sd = std::sqrt(s.variance);
  if (sd > 0.0) {
    s.skewness = centered.array().cube().mean() / (sd * sd * sd);
    s.excess_kurtosis = centered.array().square().square().mean() / (s.variance * s.variance) - 3.0;
  }
  return s;
}

MeanWithError mean_with_error(const std::vector<double>& values) {
  if (values.size() < 2) throw std::invalid_argument("need at least 2 values");
  const auto n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, sd / std::sqrt(n)};
}

}  // namespace ssfmlab
