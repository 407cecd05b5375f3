#include "halfdm/chmap.hpp"

#include <cmath>
#include <string>

namespace halfdm {

namespace {

constexpr double kImageHermitianTol = 1e-9;

// Tr_L(H (I (x) x^T)) without the Hermiticity requirement; the map extends
// linearly to arbitrary complex inputs.
ComplexMatrix apply_linear(const ComplexMatrix& h, BipartiteDims dims, const ComplexMatrix& x) {
  const Index s = dims.s;
  const Index L = dims.L;
  ComplexMatrix out(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j)
      out(i, j) = (h.block(i * L, j * L, L, L).cwiseProduct(x)).sum();
  return out;
}

void require_input(const ChoiMatrix& choi, const ComplexMatrix& x, std::string_view what) {
  if (x.rows() != choi.input_dim() || x.cols() != choi.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": input must be " + std::to_string(choi.input_dim()) +
                    "x" + std::to_string(choi.input_dim()));
  }
}

}  // namespace

ChoiMatrix::ChoiMatrix(const ComplexMatrix& h, BipartiteDims dims, double hermitian_tol)
    : dims_(dims) {
  if (h.rows() != dims.total() || h.cols() != dims.total()) {
    throw Error(ErrorCode::DimensionMismatch, "Choi matrix size does not match s*L");
  }
  require_finite(h, "ChoiMatrix");
  h_ = hermitian_part(h, hermitian_tol);
}

PseudoUnitary::PseudoUnitary(ComplexMatrix s, Index m, Index n, double tol)
    : s_(std::move(s)), m_(m), n_(n) {
  if (m < 0 || n < 0 || s_.rows() != m + n || s_.cols() != m + n) {
    throw Error(ErrorCode::SignatureMismatch, "pseudo-unitary size does not match (M, N)");
  }
  const ComplexMatrix e = eta(m, n);
  const double defect = (s_ * e * s_.adjoint() - e).norm();
  if (defect > tol) {
    throw Error(ErrorCode::NotPseudoUnitary, "S eta S^dagger - eta = " + std::to_string(defect));
  }
}

ComplexMatrix PseudoUnitary::eta(Index m, Index n) {
  ComplexMatrix e = ComplexMatrix::Identity(m + n, m + n);
  e.bottomRightCorner(n, n) *= -1.0;
  return e;
}

ChoiMatrix choi_of_action(const MapAction& apply, BipartiteDims dims) {
  const Index s = dims.s;
  const Index L = dims.L;
  ComplexMatrix h(s * L, s * L);
  for (Index m = 0; m < L; ++m) {
    for (Index n = 0; n < L; ++n) {
      const ComplexMatrix image = apply(basis_op(L, m, n));
      if (image.rows() != s || image.cols() != s) {
        throw Error(ErrorCode::DimensionMismatch, "map image is not s x s");
      }
      if (m == n && (image - image.adjoint()).norm() >
                        kImageHermitianTol * std::max(1.0, image.norm())) {
        throw Error(ErrorCode::NonHermitianImage,
                    "image of |" + std::to_string(m) + "><" + std::to_string(m) + "|");
      }
      // Block (i, j) of H is Map(|m><n|)_{ij}; entry (m, n) of the second factor.
      for (Index i = 0; i < s; ++i)
        for (Index j = 0; j < s; ++j) h(i * L + m, j * L + n) = image(i, j);
    }
  }
  return ChoiMatrix(h, dims, kImageHermitianTol);
}

ComplexMatrix apply_via_choi(const ChoiMatrix& choi, const ComplexMatrix& rho) {
  require_input(choi, rho, "apply_via_choi");
  return apply_linear(choi.matrix(), choi.dims(), rho);
}

ComplexMatrix apply_on_second_factor(const ChoiMatrix& choi, const ComplexMatrix& x, Index first_dim) {
  const Index L = choi.input_dim();
  const Index s = choi.output_dim();
  if (x.rows() != first_dim * L || x.cols() != first_dim * L) {
    throw Error(ErrorCode::DimensionMismatch, "apply_on_second_factor: operator size");
  }
  ComplexMatrix out(first_dim * s, first_dim * s);
  for (Index i = 0; i < first_dim; ++i)
    for (Index j = 0; j < first_dim; ++j)
      out.block(i * s, j * s, s, s) =
          apply_linear(choi.matrix(), choi.dims(), x.block(i * L, j * L, L, L));
  return out;
}

SignedKrausRep signed_rep(const ChoiMatrix& choi) {
  const Spectrum spec = hermitian_eig(choi.matrix());
  const double rank_tol = kPsdTol * spec.spectral_radius();
  SignedKrausRep rep{choi.dims(), {}, {}};
  for (Index k = 0; k < spec.size(); ++k) {
    const double lambda = spec.eigenvalues(k);
    if (std::abs(lambda) <= rank_tol) continue;
    HalfDensityMatrix a =
        hdm_from_pure(std::sqrt(std::abs(lambda)) * spec.eigenvectors.col(k), choi.dims());
    (lambda > 0 ? rep.positive : rep.negative).push_back(std::move(a));
  }
  return rep;
}

ComplexMatrix apply_signed(const SignedKrausRep& rep, const ComplexMatrix& h) {
  if (h.rows() != rep.dims.L || h.cols() != rep.dims.L) {
    throw Error(ErrorCode::DimensionMismatch, "apply_signed: input must be L x L");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rep.dims.s, rep.dims.s);
  for (const auto& a : rep.positive) out += a.matrix() * h * a.matrix().adjoint();
  for (const auto& b : rep.negative) out -= b.matrix() * h * b.matrix().adjoint();
  return out;
}

ComplexMatrix choi_of_signed(const SignedKrausRep& rep) {
  ComplexMatrix h = ComplexMatrix::Zero(rep.dims.total(), rep.dims.total());
  for (const auto& a : rep.positive) {
    const ComplexVector v = pure_from_hdm(a);
    h += v * v.adjoint();
  }
  for (const auto& b : rep.negative) {
    const ComplexVector v = pure_from_hdm(b);
    h -= v * v.adjoint();
  }
  return h;
}

TraceIdentity trace_identity_check(const ChoiMatrix& choi, const ComplexMatrix& sigma) {
  const Index s = choi.output_dim();
  if (sigma.rows() != choi.dims().total() || sigma.cols() != choi.dims().total()) {
    throw Error(ErrorCode::DimensionMismatch, "trace_identity_check: Sigma must be sL x sL");
  }
  const ComplexMatrix image = apply_on_second_factor(choi, sigma, s);
  const ComplexVector phi = maximally_entangled(s);
  return TraceIdentity{phi.dot(image * phi), (choi.matrix() * sigma.transpose()).trace()};
}

SignedKrausRep pseudo_transform(const SignedKrausRep& rep, const PseudoUnitary& s,
                                std::pair<Index, Index> padding) {
  const auto [m, n] = padding;
  if (m != s.positive_size() || n != s.negative_size()) {
    throw Error(ErrorCode::SignatureMismatch, "padding does not match the signature of S");
  }
  if (m < static_cast<Index>(rep.positive.size()) || n < static_cast<Index>(rep.negative.size())) {
    throw Error(ErrorCode::SignatureMismatch, "padding smaller than the families");
  }
  const ComplexMatrix zero = ComplexMatrix::Zero(rep.dims.s, rep.dims.L);
  std::vector<ComplexMatrix> padded(static_cast<std::size_t>(m + n), zero);
  for (std::size_t i = 0; i < rep.positive.size(); ++i) padded[i] = rep.positive[i].matrix();
  for (std::size_t j = 0; j < rep.negative.size(); ++j)
    padded[static_cast<std::size_t>(m) + j] = rep.negative[j].matrix();

  SignedKrausRep out{rep.dims, {}, {}};
  for (Index i = 0; i < m + n; ++i) {
    ComplexMatrix t = zero;
    for (Index j = 0; j < m + n; ++j) t += s.matrix()(i, j) * padded[static_cast<std::size_t>(j)];
    (i < m ? out.positive : out.negative).emplace_back(std::move(t));
  }
  return out;
}

std::vector<HalfDensityMatrix> kraus_of_cp(const ChoiMatrix& choi) {
  const PsdReport psd = is_psd(choi.matrix());
  if (!psd) {
    throw Error(ErrorCode::NotCP, "Choi matrix has eigenvalue " +
                                      std::to_string(psd.min_eigenvalue) +
                                      "; use signed_rep for non-CP maps");
  }
  return signed_rep(choi).positive;
}

bool is_trace_preserving(std::span<const HalfDensityMatrix> kraus, double tol) {
  if (kraus.empty()) return false;
  const Index L = kraus.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(L, L);
  for (const auto& a : kraus) {
    if (a.cols() != L) throw Error(ErrorCode::ShapeMismatch, "Kraus operators differ in L");
    sum += a.matrix().adjoint() * a.matrix();
  }
  return (sum - ComplexMatrix::Identity(L, L)).norm() <= tol;
}

}  // namespace halfdm
