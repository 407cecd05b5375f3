#pragma once

// Half density matrices: an s x L matrix T describes the mixed state
// rho = T T^dagger and, read as a coefficient matrix, the bipartite pure
// state T|Phi_L> in H_s (x) H_L.

#include <span>
#include <vector>

#include "halfdm/mat_core.hpp"

namespace halfdm {

class HalfDensityMatrix {
 public:
  HalfDensityMatrix() = default;
  explicit HalfDensityMatrix(ComplexMatrix mat);

  const ComplexMatrix& matrix() const { return mat_; }
  Index rows() const { return mat_.rows(); }
  Index cols() const { return mat_.cols(); }
  BipartiteDims dims() const { return {mat_.rows(), mat_.cols()}; }

  // Tr(T^dagger T), the squared norm of the associated pure state.
  double norm_squared() const { return mat_.squaredNorm(); }
  bool is_normalized(double tol = kHermitianTol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
  }
  ComplexMatrix density() const { return mat_ * mat_.adjoint(); }

 private:
  ComplexMatrix mat_;
};

// M_L = |Phi_L><Phi_L| with the unnormalized |Phi_L> = sum_n |n>|n>.
class MirrorOperator {
 public:
  explicit MirrorOperator(Index L);

  Index dim() const { return L_; }
  ComplexVector ket() const;
  ComplexMatrix matrix() const;
  // <w*|_1 M_L |w*>_1 for an index state |w*>; equals |w><w|.
  ComplexMatrix sandwich(const ComplexVector& index_state) const;

 private:
  Index L_;
};

ComplexVector maximally_entangled(Index L);
ComplexMatrix mirror_operator(Index L);

// |w*> = <w|Phi_L>, the componentwise conjugate in the fixed basis.
ComplexVector index_state(const ComplexVector& w);

struct EnsembleMember {
  double weight = 0.0;
  ComplexVector state;
};

// Weighted pure-state decomposition of a density matrix.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const { return members_; }
  ComplexMatrix density() const;
  // A_i with A_i|Phi_L> = sqrt(p_i)|phi_i>.
  std::vector<HalfDensityMatrix> hdm_family(BipartiteDims dims) const;

 private:
  std::vector<EnsembleMember> members_;
};

// T_e = V (Delta, 0): eigenvectors of rho scaled by the square roots of the
// eigenvalues (descending), padded with zero columns up to L.
HalfDensityMatrix eigen_hdm(const ComplexMatrix& rho, Index L);

HalfDensityMatrix hdm_from_pure(const ComplexVector& phi, BipartiteDims dims);
ComplexVector pure_from_hdm(const HalfDensityMatrix& t);

struct ReducedStates {
  ComplexMatrix first;   // T T^dagger
  ComplexMatrix second;  // T^T T^*
};

ReducedStates reduced_states(const HalfDensityMatrix& t);

// Unitary U with to = from * U, provided both describe the same rho.
// Throws ShapeMismatch or NotRelated.
ComplexMatrix connecting_unitary(const HalfDensityMatrix& from, const HalfDensityMatrix& to);

// sum_i (A_i (x) I) M_L (A_i (x) I)^dagger.
ComplexMatrix ensemble_state(std::span<const HalfDensityMatrix> family, BipartiteDims dims);

// Tr(A^dagger) I - A^dagger. Anti-linear; introduced for two-qubit states but
// defined for any square A. Applying it twice gives A + (s - 2) Tr(A) I.
HalfDensityMatrix tilde(const HalfDensityMatrix& a);

// Schmidt coefficients (singular values of T), descending.
RealVector schmidt(const HalfDensityMatrix& t);

}  // namespace halfdm
