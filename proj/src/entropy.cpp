#include "ssfmlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "ssfmlab/parallel.hpp"
#include "ssfmlab/rng.hpp"

namespace ssfmlab {

namespace {

using std::numbers::pi;

// Median-split kd-tree over row-major points; answers "distance to the k-th
// nearest neighbor excluding the query point itself".
class KdTree {
 public:
  KdTree(const double* data, int n, int d) : n_(n), d_(d) {
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    pts_.assign(data, data + static_cast<std::size_t>(n) * d);
    nodes_.reserve(2 * n / kLeafSize + 2);
    build(0, n);
  }

  double kth_distance(int query, int k) const {
    // Max-heap of the k best squared distances seen so far; per-call storage
    // keeps concurrent queries safe.
    std::vector<double> best(k, std::numeric_limits<double>::infinity());
    search(0, row(query), query, best);
    return std::sqrt(best.front());
  }

 private:
  static constexpr int kLeafSize = 16;

  struct Node {
    double split = 0.0;
    int axis = -1;  // -1 marks a leaf
    int begin = 0, end = 0;
    int left = -1, right = -1;
  };

  const double* row(int i) const { return pts_.data() + static_cast<std::size_t>(i) * d_; }

  int build(int begin, int end) {
    const int node_index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Node node;
    node.begin = begin;
    node.end = end;
    if (end - begin <= kLeafSize) {
      nodes_[node_index] = node;
      return node_index;
    }
    // Split on the widest axis at the median.
    int axis = 0;
    double widest = -1.0;
    for (int a = 0; a < d_; ++a) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (int i = begin; i < end; ++i) {
        const double v = row(order_[i])[a];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi - lo > widest) {
        widest = hi - lo;
        axis = a;
      }
    }
    const int mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) { return row(a)[axis] < row(b)[axis]; });
    node.axis = axis;
    node.split = row(order_[mid])[axis];
    node.left = build(begin, mid);
    node.right = build(mid, end);
    nodes_[node_index] = node;
    return node_index;
  }

  void offer(double dist2) const {
    if (dist2 >= best_.front()) return;
    std::pop_heap(best_.begin(), best_.end());
    best_.back() = dist2;
    std::push_heap(best_.begin(), best_.end());
  }

  void search(int node_index, const double* q, int skip) const {
    const Node& node = nodes_[node_index];
    if (node.axis < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int p = order_[i];
        if (p == skip) continue;
        const double* r = row(p);
        double dist2 = 0.0;
        for (int a = 0; a < d_; ++a) {
          const double diff = q[a] - r[a];
          dist2 += diff * diff;
        }
        offer(dist2);
      }
      return;
    }
    const double delta = q[node.axis] - node.split;
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    search(near, q, skip);
    if (delta * delta < best_.front()) search(far, q, skip);
  }

  int n_, d_;
  std::vector<double> pts_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  mutable std::vector<double> best_;
  mutable int heap_size_ = 0;
};

double log_unit_ball_volume(int d) {
  return 0.5 * d * std::log(pi) - std::lgamma(0.5 * d + 1.0);
}

// Jitters every member of each exact-duplicate group; returns the number of
// points touched.
int jitter_duplicates(Eigen::MatrixXd& pts, std::uint64_t seed, std::uint64_t stream_id) {
  const int n = static_cast<int>(pts.rows());
  const int d = static_cast<int>(pts.cols());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](int a, int b) {
    for (int c = 0; c < d; ++c) {
      if (pts(a, c) < pts(b, c)) return true;
      if (pts(a, c) > pts(b, c)) return false;
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);

  std::vector<int> dups;
  for (int i = 0; i + 1 < n;) {
    int j = i + 1;
    while (j < n && !less(order[i], order[j])) ++j;
    if (j - i > 1)
      for (int t = i; t < j; ++t) dups.push_back(order[t]);
    i = j;
  }
  if (dups.empty()) return 0;

  Eigen::VectorXd scale(d);
  for (int c = 0; c < d; ++c) {
    const double spread = pts.col(c).maxCoeff() - pts.col(c).minCoeff();
    scale[c] = 1e-12 * (spread > 0.0 ? spread : 1.0);
  }
  auto rng = make_stream(seed, stream_id, 0, StreamPurpose::kJitter);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int idx : dups)
    for (int c = 0; c < d; ++c) pts(idx, c) += scale[c] * uniform(rng);
  return static_cast<int>(dups.size());
}

double knn_point_estimate(const Eigen::MatrixXd& pts, int k, int num_threads) {
  const int n = static_cast<int>(pts.rows());
  const int d = static_cast<int>(pts.cols());
  // Row-major copy for cache-friendly queries.
  std::vector<double> data(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) data[static_cast<std::size_t>(i) * d + c] = pts(i, c);
  KdTree tree(data.data(), n, d);

  std::vector<double> log_dists(n);
  parallel_for(
      n, [&](std::int64_t i) { log_dists[i] = std::log(tree.kth_distance(static_cast<int>(i), k)); },
      num_threads);
  double sum = 0.0;
  for (double v : log_dists) sum += v;

  return digamma_int(n) - digamma_int(k) + log_unit_ball_volume(d) +
         d * sum / static_cast<double>(n);
}

}  // namespace

double digamma_int(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("digamma_int requires n >= 1");
  constexpr double kEulerGamma = 0.57721566490153286060651209;
  if (n <= 64) {
    double h = 0.0;
    for (std::int64_t i = 1; i < n; ++i) h += 1.0 / static_cast<double>(i);
    return h - kEulerGamma;
  }
  const double x = static_cast<double>(n);
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return std::log(x) - 0.5 * inv - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

double gaussian_entropy_nats(int complex_dim, double variance) {
  return complex_dim * std::log(pi * std::numbers::e * variance);
}

EntropyEstimate knn_entropy(const Eigen::MatrixXd& points, const KnnOptions& options) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  if (n < 100) throw std::invalid_argument("knn_entropy needs at least 100 samples");
  if (options.k < 1 || options.k > 20)
    throw std::invalid_argument("knn_entropy neighbor count must lie in [1, 20]");
  if (options.k >= n) throw std::invalid_argument("knn_entropy needs k < sample count");

  EntropyEstimate est;
  est.estimator = EntropyEstimator::kKnn;
  est.k = options.k;
  est.sample_count = n;
  est.dimension = d;

  Eigen::MatrixXd pts = points;
  est.jittered_points = jitter_duplicates(pts, options.seed, ~std::uint64_t{0});
  est.value = knn_point_estimate(pts, options.k, options.num_threads);

  const int resamples = options.bootstrap_resamples;
  if (resamples >= 2) {
    std::vector<double> boot(resamples);
    parallel_for(
        resamples,
        [&](std::int64_t r) {
          auto rng = make_stream(options.seed, static_cast<std::uint64_t>(r), 0,
                                 StreamPurpose::kBootstrap);
          std::uniform_int_distribution<int> pick(0, n - 1);
          Eigen::MatrixXd sample(n, d);
          for (int i = 0; i < n; ++i) sample.row(i) = points.row(pick(rng));
          jitter_duplicates(sample, options.seed, static_cast<std::uint64_t>(r));
          boot[r] = knn_point_estimate(sample, options.k, 1);
        },
        options.num_threads);
    double mean = 0.0;
    for (double v : boot) mean += v;
    mean /= resamples;
    double ss = 0.0;
    for (double v : boot) ss += (v - mean) * (v - mean);
    est.standard_error = std::sqrt(ss / (resamples - 1.0));
  }
  return est;
}

EntropyEstimate histogram_entropy(const Eigen::MatrixXd& points, int bins_per_axis) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  if (n < 100) throw std::invalid_argument("histogram_entropy needs at least 100 samples");
  if (d > 3) throw std::invalid_argument("histogram_entropy supports at most 3 dimensions");
  int bins = bins_per_axis;
  if (bins <= 0)
    bins = std::max(8, static_cast<int>(std::floor(std::pow(n, 1.0 / (d + 2)))) * 4);

  Eigen::VectorXd lo(d), width(d);
  for (int c = 0; c < d; ++c) {
    lo[c] = points.col(c).minCoeff();
    const double hi = points.col(c).maxCoeff();
    width[c] = (hi - lo[c]) > 0 ? (hi - lo[c]) / bins : 1.0;
  }

  std::vector<std::int64_t> counts(static_cast<std::size_t>(std::pow(bins, d)), 0);
  for (int i = 0; i < n; ++i) {
    std::size_t cell = 0;
    for (int c = 0; c < d; ++c) {
      int b = static_cast<int>((points(i, c) - lo[c]) / width[c]);
      b = std::clamp(b, 0, bins - 1);
      cell = cell * bins + b;
    }
    ++counts[cell];
  }

  double cell_volume = 1.0;
  for (int c = 0; c < d; ++c) cell_volume *= width[c];
  double h = 0.0;
  for (std::int64_t count : counts) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / n;
    h -= p * std::log(p);
  }
  h += std::log(cell_volume);

  EntropyEstimate est;
  est.value = h;
  est.standard_error = 0.0;
  est.estimator = EntropyEstimator::kHistogram;
  est.k = bins;
  est.sample_count = n;
  est.dimension = d;
  return est;
}

double entropy_power(double h_nats, int complex_dim) {
  return std::exp(h_nats / complex_dim) / (pi * std::numbers::e);
}

double entropy_power(const EntropyEstimate& h, int complex_dim) {
  return entropy_power(h.value, complex_dim);
}

Eigen::MatrixXd real_embedding(const Ensemble& e) {
  e.validate();
  const int m = e.size();
  const auto l = e.length();
  Eigen::MatrixXd out(m, 2 * l);
  for (int i = 0; i < m; ++i) {
    const auto& s = e.realizations[i].samples;
    for (Eigen::Index j = 0; j < l; ++j) {
      out(i, 2 * j) = s[j].real();
      out(i, 2 * j + 1) = s[j].imag();
    }
  }
  return out;
}

Eigen::MatrixXd real_embedding(const std::vector<Eigen::VectorXcd>& samples) {
  if (samples.empty()) throw std::invalid_argument("empty sample set");
  const auto l = samples.front().size();
  Eigen::MatrixXd out(samples.size(), 2 * l);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() != l)
      throw std::invalid_argument("sample length mismatch");
    for (Eigen::Index j = 0; j < l; ++j) {
      out(static_cast<Eigen::Index>(i), 2 * j) = samples[i][j].real();
      out(static_cast<Eigen::Index>(i), 2 * j + 1) = samples[i][j].imag();
    }
  }
  return out;
}

}  // namespace ssfmlab
