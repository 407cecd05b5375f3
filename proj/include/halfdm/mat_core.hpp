#pragma once

// Dense complex linear algebra used by every other module.
//
// Index convention, fixed project-wide: a composite index of H_s (x) H_L is
// (first-factor index) * L + (second-factor index).

#include <Eigen/Dense>

#include <complex>

#include "halfdm/error.hpp"

namespace halfdm {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

struct BipartiteDims {
  Index s = 1;
  Index L = 1;

  BipartiteDims() = default;
  BipartiteDims(Index first, Index second);

  Index total() const { return s * L; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

enum class Factor { First, Second };

// Eigenvalues sorted descending; eigenvector columns in matching order. The
// first component of modulus > 1e-12 in every column is real and >= 0.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Index size() const { return eigenvalues.size(); }
  double max() const { return eigenvalues(0); }
  double min() const { return eigenvalues(eigenvalues.size() - 1); }
  // Largest |eigenvalue|, i.e. the operator norm of the decomposed matrix.
  double spectral_radius() const;
  Index count_above(double threshold) const;
  Index count_below(double threshold) const;
  ComplexMatrix reconstruct() const;
};

struct Svd {
  ComplexMatrix U;
  RealVector singular;  // descending, >= 0
  ComplexMatrix V;

  // U * diag(singular) * V^dagger, using the leading columns when U/V are full.
  ComplexMatrix reconstruct() const;
};

enum class SvdMode { Thin, Full };

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;

  explicit operator bool() const { return psd; }
};

bool all_finite(const ComplexMatrix& m);
void require_finite(const ComplexMatrix& m, std::string_view what);
void require_square(const ComplexMatrix& m, std::string_view what);

// Largest singular value.
double operator_norm(const ComplexMatrix& m);

// (H + H^dagger)/2 if ||H - H^dagger||_F <= tol * ||H||_F; NotHermitian otherwise.
ComplexMatrix hermitian_part(const ComplexMatrix& h, double tol = kHermitianTol);

Spectrum hermitian_eig(const ComplexMatrix& h);

Svd svd(const ComplexMatrix& a, SvdMode mode = SvdMode::Thin);

// First factor is the slow index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// Traces out `traced`; the surviving factor keeps its dimension.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Factor traced);

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Factor which);

// Sandwich of one factor by a vector: for Factor::Second returns the s x s
// matrix (I (x) <v|) M (I (x) |v>), for Factor::First the L x L matrix
// (<v| (x) I) M (|v> (x) I).
ComplexMatrix partial_expectation(const ComplexMatrix& m, BipartiteDims dims,
                                  Factor which, const ComplexVector& v);

// psd iff lambda_min >= -tol * max(1, ||H||_op).
PsdReport is_psd(const ComplexMatrix& h, double tol = kPsdTol);

// Number of singular values above `tol` (absolute).
Index numerical_rank(const ComplexMatrix& m, double tol = 1e-10);

ComplexMatrix basis_op(Index n, Index row, Index col);
ComplexVector basis_vector(Index n, Index i);

}  // namespace halfdm
