#include "halfdm/hdm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace halfdm {

namespace {

constexpr double kRelationTol = 1e-8;
constexpr double kSupportCutoff = 1e-9;

}  // namespace

HalfDensityMatrix::HalfDensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  require_finite(mat_, "HalfDensityMatrix");
}

MirrorOperator::MirrorOperator(Index L) : L_(L) {
  if (L < 1) throw Error(ErrorCode::InvalidArgument, "mirror operator needs L >= 1");
}

ComplexVector MirrorOperator::ket() const { return maximally_entangled(L_); }

ComplexMatrix MirrorOperator::matrix() const {
  const ComplexVector phi = ket();
  return phi * phi.adjoint();
}

ComplexMatrix MirrorOperator::sandwich(const ComplexVector& index_state) const {
  return partial_expectation(matrix(), BipartiteDims(L_, L_), Factor::First, index_state);
}

ComplexVector maximally_entangled(Index L) {
  ComplexVector phi = ComplexVector::Zero(L * L);
  for (Index n = 0; n < L; ++n) phi(n * L + n) = 1.0;
  return phi;
}

ComplexMatrix mirror_operator(Index L) { return MirrorOperator(L).matrix(); }

ComplexVector index_state(const ComplexVector& w) { return w.conjugate(); }

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorCode::InvalidState, "empty ensemble");
  double total = 0.0;
  const Index n = members_.front().state.size();
  for (const auto& m : members_) {
    if (!(m.weight > 0.0 && m.weight <= 1.0)) {
      throw Error(ErrorCode::InvalidState, "ensemble weight outside (0, 1]");
    }
    if (m.state.size() != n) throw Error(ErrorCode::ShapeMismatch, "ensemble state sizes differ");
    if (std::abs(m.state.norm() - 1.0) > kHermitianTol) {
      throw Error(ErrorCode::InvalidState, "ensemble state is not a unit vector");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kHermitianTol) {
    throw Error(ErrorCode::InvalidState, "ensemble weights do not sum to one");
  }
}

ComplexMatrix Ensemble::density() const {
  const Index n = members_.front().state.size();
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (const auto& m : members_) rho += m.weight * m.state * m.state.adjoint();
  return rho;
}

std::vector<HalfDensityMatrix> Ensemble::hdm_family(BipartiteDims dims) const {
  std::vector<HalfDensityMatrix> family;
  family.reserve(members_.size());
  for (const auto& m : members_) {
    family.push_back(hdm_from_pure(std::sqrt(m.weight) * m.state, dims));
  }
  return family;
}

HalfDensityMatrix eigen_hdm(const ComplexMatrix& rho, Index L) {
  require_square(rho, "eigen_hdm");
  const Index s = rho.rows();
  const Spectrum spec = hermitian_eig(rho);
  if (spec.min() < -kPsdTol * std::max(1.0, spec.spectral_radius())) {
    throw Error(ErrorCode::NotPSD, "eigen_hdm: rho has eigenvalue " + std::to_string(spec.min()));
  }
  if (rho.trace().real() > 1.0 + kHermitianTol) {
    throw Error(ErrorCode::InvalidState, "eigen_hdm: trace exceeds one");
  }
  const Index rank = spec.count_above(kHermitianTol);
  if (rank > L) {
    throw Error(ErrorCode::RankExceedsL, "eigen_hdm: rank " + std::to_string(rank) +
                                             " exceeds L = " + std::to_string(L));
  }
  if (L < s) {
    throw Error(ErrorCode::DimensionMismatch, "eigen_hdm: zero-padding requires L >= s");
  }
  // Rounding-level eigenvalues are zero; their square roots would not be.
  const double noise = 1e-14 * std::max(1.0, spec.spectral_radius());
  ComplexMatrix t = ComplexMatrix::Zero(s, L);
  for (Index k = 0; k < s; ++k) {
    const double lambda = spec.eigenvalues(k);
    if (lambda > noise) t.col(k) = spec.eigenvectors.col(k) * std::sqrt(lambda);
  }
  return HalfDensityMatrix(std::move(t));
}

HalfDensityMatrix hdm_from_pure(const ComplexVector& phi, BipartiteDims dims) {
  if (phi.size() != dims.total()) {
    throw Error(ErrorCode::DimensionMismatch, "hdm_from_pure: vector length " +
                                                  std::to_string(phi.size()) + " != s*L");
  }
  ComplexMatrix t(dims.s, dims.L);
  for (Index m = 0; m < dims.s; ++m)
    for (Index n = 0; n < dims.L; ++n) t(m, n) = phi(m * dims.L + n);
  return HalfDensityMatrix(std::move(t));
}

ComplexVector pure_from_hdm(const HalfDensityMatrix& t) {
  const Index L = t.cols();
  ComplexVector phi(t.rows() * L);
  for (Index m = 0; m < t.rows(); ++m)
    for (Index n = 0; n < L; ++n) phi(m * L + n) = t.matrix()(m, n);
  return phi;
}

ReducedStates reduced_states(const HalfDensityMatrix& t) {
  const ComplexMatrix& m = t.matrix();
  return ReducedStates{m * m.adjoint(), m.transpose() * m.conjugate()};
}

ComplexMatrix connecting_unitary(const HalfDensityMatrix& from, const HalfDensityMatrix& to) {
  if (from.rows() != to.rows() || from.cols() != to.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "connecting_unitary: HDM shapes differ");
  }
  const double gram_gap = (from.density() - to.density()).norm();
  if (gram_gap > kRelationTol) {
    throw Error(ErrorCode::NotRelated,
                "Gram matrices differ by " + std::to_string(gram_gap));
  }
  const Index L = from.cols();
  const Svd a = svd(from.matrix(), SvdMode::Full);
  const Svd b = svd(to.matrix(), SvdMode::Full);
  // Directions with singular value below the cutoff are treated as kernel;
  // each contributes at most its singular value to the residual.
  const double cutoff = kSupportCutoff * std::max(1.0, a.singular.size() ? a.singular(0) : 0.0);
  const Index r = (a.singular.array() > cutoff).count();

  // On the support, to = from * V_a Q V_b^dagger with Q = S_a^-1 U_a^dagger U_b S_b;
  // Q is unitary up to rounding, so project it back onto the unitary group.
  ComplexMatrix u = a.V.rightCols(L - r) * b.V.rightCols(L - r).adjoint();
  if (r > 0) {
    const ComplexMatrix q = a.singular.head(r).cwiseInverse().cast<Complex>().asDiagonal() *
                            a.U.leftCols(r).adjoint() * to.matrix() * b.V.leftCols(r);
    const Svd polar = svd(q, SvdMode::Full);
    u += a.V.leftCols(r) * (polar.U * polar.V.adjoint()) * b.V.leftCols(r).adjoint();
  }
  return u;
}

ComplexMatrix ensemble_state(std::span<const HalfDensityMatrix> family, BipartiteDims dims) {
  const ComplexMatrix mirror = mirror_operator(dims.L);
  const ComplexMatrix id = ComplexMatrix::Identity(dims.L, dims.L);
  ComplexMatrix rho = ComplexMatrix::Zero(dims.total(), dims.total());
  for (const auto& a : family) {
    if (a.dims() != dims) throw Error(ErrorCode::ShapeMismatch, "ensemble_state: member shape");
    const ComplexMatrix lifted = kron(a.matrix(), id);
    rho += lifted * mirror * lifted.adjoint();
  }
  return rho;
}

HalfDensityMatrix tilde(const HalfDensityMatrix& a) {
  require_square(a.matrix(), "tilde");
  const ComplexMatrix adj = a.matrix().adjoint();
  return HalfDensityMatrix(adj.trace() * ComplexMatrix::Identity(a.rows(), a.cols()) - adj);
}

RealVector schmidt(const HalfDensityMatrix& t) { return svd(t.matrix()).singular; }

}  // namespace halfdm
