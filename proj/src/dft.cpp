#include "ssfmlab/dft.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

namespace ssfmlab {

namespace {
Eigen::FFT<double>& fft_engine() {
  // Plans are cached per size inside the object; one per thread keeps the
  // cache lock-free.
  thread_local Eigen::FFT<double> fft;
  return fft;
}
}  // namespace

void dft_into(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) {
  if (x.size() == 0) throw std::invalid_argument("dft: empty input");
  fft_engine().fwd(out, x);
  out *= 1.0 / std::sqrt(static_cast<double>(x.size()));
}

void idft_into(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) {
  if (x.size() == 0) throw std::invalid_argument("idft: empty input");
  // Eigen's inv includes a 1/L factor; rescale to the unitary convention.
  fft_engine().inv(out, x);
  out *= std::sqrt(static_cast<double>(x.size()));
}

Eigen::VectorXcd dft(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd out;
  dft_into(x, out);
  return out;
}

Eigen::VectorXcd idft(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd out;
  idft_into(x, out);
  return out;
}

}  // namespace ssfmlab
