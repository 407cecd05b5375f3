#include "halfdm/mat_core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace halfdm {

namespace {

std::string shape_of(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_bipartite(const ComplexMatrix& m, BipartiteDims dims, std::string_view what) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": expected " + std::to_string(dims.total()) + "x" +
                    std::to_string(dims.total()) + ", got " + shape_of(m));
  }
}

}  // namespace

BipartiteDims::BipartiteDims(Index first, Index second) : s(first), L(second) {
  if (s < 1 || L < 1) {
    throw Error(ErrorCode::InvalidArgument, "bipartite dimensions must be >= 1");
  }
}

double Spectrum::spectral_radius() const {
  if (eigenvalues.size() == 0) return 0.0;
  return std::max(std::abs(max()), std::abs(min()));
}

Index Spectrum::count_above(double threshold) const {
  return (eigenvalues.array() > threshold).count();
}

Index Spectrum::count_below(double threshold) const {
  return (eigenvalues.array() < threshold).count();
}

ComplexMatrix Spectrum::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix Svd::reconstruct() const {
  const Index k = singular.size();
  return U.leftCols(k) * singular.cast<Complex>().asDiagonal() * V.leftCols(k).adjoint();
}

bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!all_finite(m)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": non-finite entry");
  }
}

void require_square(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::NotSquare, std::string(what) + ": got " + shape_of(m));
  }
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> solver(m);
  return solver.singularValues()(0);
}

ComplexMatrix hermitian_part(const ComplexMatrix& h, double tol) {
  require_square(h, "hermitian_part");
  const double asym = (h - h.adjoint()).norm();
  if (asym > tol * h.norm()) {
    throw Error(ErrorCode::NotHermitian,
                "asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  return (h + h.adjoint()) * 0.5;
}

Spectrum hermitian_eig(const ComplexMatrix& h) {
  const ComplexMatrix sym = hermitian_part(h);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
  }
  const Index n = sym.rows();
  Spectrum out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  for (Index k = 0; k < n; ++k) {
    auto col = out.eigenvectors.col(k);
    for (Index i = 0; i < n; ++i) {
      const double mod = std::abs(col(i));
      if (mod > 1e-12) {
        col *= std::conj(col(i)) / mod;
        col(i) = Complex(col(i).real(), 0.0);
        break;
      }
    }
  }
  return out;
}

Svd svd(const ComplexMatrix& a, SvdMode mode) {
  const unsigned options = mode == SvdMode::Full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
                                                 : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<ComplexMatrix> solver(a, options);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "SVD did not converge");
  }
  return Svd{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Factor traced) {
  require_bipartite(m, dims, "partial_trace");
  const Index s = dims.s;
  const Index L = dims.L;
  if (traced == Factor::Second) {
    ComplexMatrix out = ComplexMatrix::Zero(s, s);
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j)
        for (Index k = 0; k < L; ++k) out(i, j) += m(i * L + k, j * L + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(L, L);
  for (Index k = 0; k < L; ++k)
    for (Index l = 0; l < L; ++l)
      for (Index i = 0; i < s; ++i) out(k, l) += m(i * L + k, i * L + l);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Factor which) {
  require_bipartite(m, dims, "partial_transpose");
  const Index s = dims.s;
  const Index L = dims.L;
  ComplexMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j)
      for (Index k = 0; k < L; ++k)
        for (Index l = 0; l < L; ++l) {
          out(i * L + k, j * L + l) = which == Factor::Second ? m(i * L + l, j * L + k)
                                                              : m(j * L + k, i * L + l);
        }
  return out;
}

ComplexMatrix partial_expectation(const ComplexMatrix& m, BipartiteDims dims, Factor which,
                                  const ComplexVector& v) {
  require_bipartite(m, dims, "partial_expectation");
  const Index s = dims.s;
  const Index L = dims.L;
  if (which == Factor::Second) {
    if (v.size() != L) throw Error(ErrorCode::DimensionMismatch, "partial_expectation: |v| != L");
    ComplexMatrix out(s, s);
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j)
        out(i, j) = v.dot(m.block(i * L, j * L, L, L) * v);
    return out;
  }
  if (v.size() != s) throw Error(ErrorCode::DimensionMismatch, "partial_expectation: |v| != s");
  ComplexMatrix out = ComplexMatrix::Zero(L, L);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j)
      out += std::conj(v(i)) * v(j) * m.block(i * L, j * L, L, L);
  return out;
}

PsdReport is_psd(const ComplexMatrix& h, double tol) {
  const Spectrum spec = hermitian_eig(h);
  const double lmin = spec.min();
  return PsdReport{lmin >= -tol * std::max(1.0, spec.spectral_radius()), lmin};
}

Index numerical_rank(const ComplexMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> solver(m);
  return (solver.singularValues().array() > tol).count();
}

ComplexMatrix basis_op(Index n, Index row, Index col) {
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  out(row, col) = 1.0;
  return out;
}

ComplexVector basis_vector(Index n, Index i) {
  ComplexVector out = ComplexVector::Zero(n);
  out(i) = 1.0;
  return out;
}

}  // namespace halfdm
