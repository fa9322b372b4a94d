#ifndef SSFMLAB_DFT_HPP
#define SSFMLAB_DFT_HPP

#include <Eigen/Dense>

namespace ssfmlab {

// Unitary DFT pair: dft applies F with F[l,m] = exp(-j 2 pi l m / L)/sqrt(L),
// idft applies the adjoint. Both preserve the Euclidean norm and work for any
// length (not just powers of two).
Eigen::VectorXcd dft(const Eigen::VectorXcd& x);
Eigen::VectorXcd idft(const Eigen::VectorXcd& x);

// In-place-style variants writing into `out` (resized as needed); used by the
// propagation hot loop to avoid temporaries.
void dft_into(const Eigen::VectorXcd& x, Eigen::VectorXcd& out);
void idft_into(const Eigen::VectorXcd& x, Eigen::VectorXcd& out);

}  // namespace ssfmlab

#endif
