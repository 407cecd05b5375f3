#include "halfdm/random.hpp"

#include <Eigen/QR>

#include <cmath>

namespace halfdm {

ComplexMatrix random_complex_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return out;
}

ComplexVector random_unit_vector(Rng& rng, Index n) {
  ComplexVector v = random_complex_matrix(rng, n, 1).col(0);
  return v / v.norm();
}

ComplexMatrix random_unitary(Rng& rng, Index n) {
  const ComplexMatrix z = random_complex_matrix(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix random_hermitian(Rng& rng, Index n) {
  const ComplexMatrix a = random_complex_matrix(rng, n, n);
  return (a + a.adjoint()) * 0.5;
}

ComplexMatrix random_density(Rng& rng, Index n, Index rank) {
  const ComplexMatrix a = random_complex_matrix(rng, n, rank);
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) * 0.5;
}

}  // namespace halfdm
