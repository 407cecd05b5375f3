#pragma once

// Named maps and states: transposition through the antisymmetric sigma
// basis, the swap operator, the reduction and trace maps, unextendible
// product bases, and the indecomposable map built from a UPB.

#include <vector>

#include "halfdm/positivity.hpp"

namespace halfdm {

// sigma_mn = (|m><n| - |n><m|) / sqrt(2).
HalfDensityMatrix sigma(Index L, Index m, Index n);

// The L(L-1)/2 generators with m > n, ordered row-major by (m, n).
std::vector<HalfDensityMatrix> sigma_basis(Index L);

// sum over all ordered pairs (m, n) of sigma_mn rho sigma_mn^dagger.
// Each unordered pair therefore contributes twice.
ComplexMatrix sigma_cp_map(const ComplexMatrix& rho);

// Tr(rho) I - sigma_cp_map(rho); equals rho^T for every square rho.
ComplexMatrix transpose_via_sigma(const ComplexMatrix& rho);

ChoiMatrix identity_choi(Index L);
// X = sum_{m,n} |m,n><n,m|, the Choi matrix of transposition.
ChoiMatrix swap_operator(Index L);
// I (x) I - M_L, the Choi matrix of rho -> Tr(rho) I - rho.
ChoiMatrix reduction_choi(Index L);
// I_{sL}, the Choi matrix of rho -> I_s Tr(rho).
ChoiMatrix trace_choi(Index s, Index L);
ChoiMatrix negated_identity_choi(Index s, Index L);

struct ProductPair {
  ComplexVector alpha;  // in H_s
  ComplexVector beta;   // in H_L
};

// Orthonormal product vectors alpha_i (x) beta_i with fewer members than s*L.
// Unextendibility is not checked here; see epsilon_of_upb.
class UPB {
 public:
  UPB(BipartiteDims dims, std::vector<ProductPair> members);

  BipartiteDims dims() const { return dims_; }
  const std::vector<ProductPair>& members() const { return members_; }
  Index size() const { return static_cast<Index>(members_.size()); }
  ComplexVector product(Index i) const;
  ComplexMatrix gram() const;

 private:
  BipartiteDims dims_;
  std::vector<ProductPair> members_;
};

// The five-member 3x3 "Tiles" basis.
UPB tiles_upb();

// sum_i |alpha_i beta_i><alpha_i beta_i|.
ComplexMatrix upb_projector(const UPB& u);
// (I - P) / (sL - S).
ComplexMatrix upb_state(const UPB& u);

// Raw see-saw minimum of <alpha beta|P|alpha beta>, no bound check.
ProductMinimum upb_product_minimum(const UPB& u, const SeeSawConfig& cfg);

// min over product states of <alpha beta|P|alpha beta>; throws BoundViolated
// unless the value lies in (0, S/sL] up to tolerance.
double epsilon_of_upb(const UPB& u, const SeeSawConfig& cfg);

struct UpbMap {
  ChoiMatrix choi;                       // P - eps d rho0
  std::vector<HalfDensityMatrix> kraus;  // T_i = |alpha_i><beta_i^*|
  double eps = 0.0;
  double d = 0.0;        // 1 / max product expectation of rho0
  double epsilon = 0.0;  // product minimum of P used for the admissibility check
};

// Throws Rho0Invalid, EpsTooLarge (eps above the product minimum of P) or
// InvalidArgument (eps <= 0).
UpbMap upb_map(const UPB& u, const ComplexMatrix& rho0, double eps, const SeeSawConfig& cfg);

}  // namespace halfdm
