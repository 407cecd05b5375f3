#pragma once

// Hermitian linear maps H_L -> H_s and their Choi matrices.
//
// The Choi matrix is built with the map acting on the FIRST factor of the
// mirror operator: H = (Map (x) I_L)(M_L) = sum_{m,n} Map(|m><n|) (x) |m><n|.
// Maps applied to the second subsystem of a bipartite operator go through
// apply_on_second_factor.

#include <functional>
#include <span>
#include <vector>

#include "halfdm/hdm.hpp"

namespace halfdm {

class ChoiMatrix {
 public:
  // Symmetrizes `h`; throws DimensionMismatch or NotHermitian.
  ChoiMatrix(const ComplexMatrix& h, BipartiteDims dims, double hermitian_tol = kHermitianTol);

  const ComplexMatrix& matrix() const { return h_; }
  BipartiteDims dims() const { return dims_; }
  Index output_dim() const { return dims_.s; }
  Index input_dim() const { return dims_.L; }

 private:
  ComplexMatrix h_;
  BipartiteDims dims_;
};

using MapAction = std::function<ComplexMatrix(const ComplexMatrix&)>;

// A map given as the difference of two CP maps with orthogonal HDM families.
struct SignedKrausRep {
  BipartiteDims dims;
  std::vector<HalfDensityMatrix> positive;
  std::vector<HalfDensityMatrix> negative;
};

// Element of the pseudo-unitary group: S eta S^dagger = eta, eta = I_M (+) -I_N.
class PseudoUnitary {
 public:
  PseudoUnitary(ComplexMatrix s, Index m, Index n, double tol = 1e-9);

  const ComplexMatrix& matrix() const { return s_; }
  Index positive_size() const { return m_; }
  Index negative_size() const { return n_; }
  static ComplexMatrix eta(Index m, Index n);

 private:
  ComplexMatrix s_;
  Index m_;
  Index n_;
};

struct TraceIdentity {
  Complex lhs;  // <Phi_s| (I_s (x) Map)(Sigma) |Phi_s>
  Complex rhs;  // Tr(H Sigma^T)
};

// Probes `apply` on the L^2 basis operators |m><n|. Throws
// NonHermitianImage if any apply(|m><m|) is not Hermitian within 1e-9.
ChoiMatrix choi_of_action(const MapAction& apply, BipartiteDims dims);

// Tr_L(H (I_s (x) rho^T)).
ComplexMatrix apply_via_choi(const ChoiMatrix& choi, const ComplexMatrix& rho);

// (I_d (x) Map)(x) for an operator x on H_d (x) H_L, block by block.
ComplexMatrix apply_on_second_factor(const ChoiMatrix& choi, const ComplexMatrix& x, Index first_dim);

SignedKrausRep signed_rep(const ChoiMatrix& choi);

ComplexMatrix apply_signed(const SignedKrausRep& rep, const ComplexMatrix& h);

// sum_i A_i M_L A_i^dagger - sum_j B_j M_L B_j^dagger.
ComplexMatrix choi_of_signed(const SignedKrausRep& rep);

TraceIdentity trace_identity_check(const ChoiMatrix& choi, const ComplexMatrix& sigma);

// Zero-pads the families to (M, N) = padding and mixes them with S.
SignedKrausRep pseudo_transform(const SignedKrausRep& rep, const PseudoUnitary& s,
                                std::pair<Index, Index> padding);

// Operator-sum representation; throws NotCP when the Choi matrix has a
// negative eigenvalue beyond the PSD tolerance.
std::vector<HalfDensityMatrix> kraus_of_cp(const ChoiMatrix& choi);

bool is_trace_preserving(std::span<const HalfDensityMatrix> kraus, double tol = 1e-9);

}  // namespace halfdm
