#include "halfdm/catalog.hpp"

#include <cmath>
#include <string>

namespace halfdm {

namespace {

void require_l_at_least_two(Index L, std::string_view what) {
  if (L < 2) throw Error(ErrorCode::LTooSmall, std::string(what) + " needs L >= 2");
}

}  // namespace

HalfDensityMatrix sigma(Index L, Index m, Index n) {
  ComplexMatrix out = (basis_op(L, m, n) - basis_op(L, n, m)) / std::sqrt(2.0);
  return HalfDensityMatrix(std::move(out));
}

std::vector<HalfDensityMatrix> sigma_basis(Index L) {
  require_l_at_least_two(L, "sigma_basis");
  std::vector<HalfDensityMatrix> out;
  out.reserve(static_cast<std::size_t>(L * (L - 1) / 2));
  for (Index m = 1; m < L; ++m)
    for (Index n = 0; n < m; ++n) out.push_back(sigma(L, m, n));
  return out;
}

ComplexMatrix sigma_cp_map(const ComplexMatrix& rho) {
  require_square(rho, "sigma_cp_map");
  const Index L = rho.rows();
  ComplexMatrix out = ComplexMatrix::Zero(L, L);
  for (Index m = 0; m < L; ++m)
    for (Index n = 0; n < L; ++n) {
      if (m == n) continue;
      const ComplexMatrix s = sigma(L, m, n).matrix();
      out += s * rho * s.adjoint();
    }
  return out;
}

ComplexMatrix transpose_via_sigma(const ComplexMatrix& rho) {
  require_square(rho, "transpose_via_sigma");
  return rho.trace() * ComplexMatrix::Identity(rho.rows(), rho.cols()) - sigma_cp_map(rho);
}

ChoiMatrix identity_choi(Index L) { return ChoiMatrix(mirror_operator(L), BipartiteDims(L, L)); }

ChoiMatrix swap_operator(Index L) {
  ComplexMatrix x = ComplexMatrix::Zero(L * L, L * L);
  for (Index m = 0; m < L; ++m)
    for (Index n = 0; n < L; ++n) x(m * L + n, n * L + m) = 1.0;
  return ChoiMatrix(x, BipartiteDims(L, L));
}

ChoiMatrix reduction_choi(Index L) {
  require_l_at_least_two(L, "reduction_choi");
  return ChoiMatrix(ComplexMatrix::Identity(L * L, L * L) - mirror_operator(L), BipartiteDims(L, L));
}

ChoiMatrix trace_choi(Index s, Index L) {
  return ChoiMatrix(ComplexMatrix::Identity(s * L, s * L), BipartiteDims(s, L));
}

ChoiMatrix negated_identity_choi(Index s, Index L) {
  return ChoiMatrix(-ComplexMatrix::Identity(s * L, s * L), BipartiteDims(s, L));
}

UPB::UPB(BipartiteDims dims, std::vector<ProductPair> members)
    : dims_(dims), members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorCode::InvalidUPB, "no members");
  if (size() >= dims_.total()) {
    throw Error(ErrorCode::InvalidUPB, "a UPB needs fewer than s*L members");
  }
  for (const auto& p : members_) {
    if (p.alpha.size() != dims_.s || p.beta.size() != dims_.L) {
      throw Error(ErrorCode::InvalidUPB, "member dimension mismatch");
    }
    if (!all_finite(p.alpha) || !all_finite(p.beta)) {
      throw Error(ErrorCode::InvalidUPB, "non-finite member");
    }
  }
  const ComplexMatrix g = gram();
  const double defect =
      (g - ComplexMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  if (defect > kHermitianTol) {
    throw Error(ErrorCode::InvalidUPB,
                "members are not orthonormal (Gram defect " + std::to_string(defect) + ")");
  }
}

ComplexVector UPB::product(Index i) const {
  const auto& p = members_[static_cast<std::size_t>(i)];
  return kron(p.alpha, p.beta);
}

ComplexMatrix UPB::gram() const {
  ComplexMatrix vecs(dims_.total(), size());
  for (Index i = 0; i < size(); ++i) vecs.col(i) = product(i);
  return vecs.adjoint() * vecs;
}

UPB tiles_upb() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  auto vec = [](Complex a, Complex b, Complex c) {
    ComplexVector v(3);
    v << a, b, c;
    return v;
  };
  std::vector<ProductPair> members{
      {vec(1, 0, 0), vec(r2, -r2, 0)},
      {vec(0, 0, 1), vec(0, r2, -r2)},
      {vec(r2, -r2, 0), vec(0, 0, 1)},
      {vec(0, r2, -r2), vec(1, 0, 0)},
      {vec(r3, r3, r3), vec(r3, r3, r3)},
  };
  return UPB(BipartiteDims(3, 3), std::move(members));
}

ComplexMatrix upb_projector(const UPB& u) {
  const Index n = u.dims().total();
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < u.size(); ++i) {
    const ComplexVector v = u.product(i);
    p += v * v.adjoint();
  }
  return p;
}

ComplexMatrix upb_state(const UPB& u) {
  const Index n = u.dims().total();
  return (ComplexMatrix::Identity(n, n) - upb_projector(u)) / static_cast<double>(n - u.size());
}

ProductMinimum upb_product_minimum(const UPB& u, const SeeSawConfig& cfg) {
  return min_product_expectation(upb_projector(u), u.dims(), cfg);
}

double epsilon_of_upb(const UPB& u, const SeeSawConfig& cfg) {
  const double value = upb_product_minimum(u, cfg).value;
  const double bound = static_cast<double>(u.size()) / static_cast<double>(u.dims().total());
  if (value <= kPsdTol || value > bound + kPsdTol) {
    throw Error(ErrorCode::BoundViolated,
                "product minimum " + std::to_string(value) + " outside (0, S/sL]");
  }
  return value;
}

UpbMap upb_map(const UPB& u, const ComplexMatrix& rho0, double eps, const SeeSawConfig& cfg) {
  const BipartiteDims dims = u.dims();
  const Index n = dims.total();
  if (rho0.rows() != n || rho0.cols() != n || !all_finite(rho0)) {
    throw Error(ErrorCode::Rho0Invalid, "rho0 must be an sL x sL matrix");
  }
  try {
    if (!is_psd(rho0) || std::abs(rho0.trace() - Complex(1.0, 0.0)) > kPsdTol) {
      throw Error(ErrorCode::Rho0Invalid, "rho0 is not a density matrix");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Rho0Invalid) throw;
    throw Error(ErrorCode::Rho0Invalid, e.what());
  }
  const ComplexMatrix bound_state = upb_state(u);
  if ((rho0 * bound_state).trace().real() <= 1e-12) {
    throw Error(ErrorCode::Rho0Invalid, "rho0 has no overlap with the UPB state");
  }
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");

  UpbMap out{ChoiMatrix(ComplexMatrix::Identity(n, n), dims), {}, eps, 0.0, 0.0};
  out.epsilon = epsilon_of_upb(u, cfg);
  if (eps > out.epsilon) {
    throw Error(ErrorCode::EpsTooLarge, "eps " + std::to_string(eps) +
                                            " exceeds the product minimum " +
                                            std::to_string(out.epsilon));
  }
  const ComplexMatrix maximally_mixed = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  if ((rho0 - maximally_mixed).norm() <= 1e-14) {
    out.d = static_cast<double>(n);
  } else {
    const ProductMinimum pm = min_product_expectation(-rho0, dims, cfg);
    out.d = 1.0 / (-pm.value);
  }
  out.choi = ChoiMatrix(upb_projector(u) - eps * out.d * rho0, dims);
  for (const auto& p : u.members()) {
    out.kraus.emplace_back(ComplexMatrix(p.alpha * p.beta.transpose()));
  }
  return out;
}

}  // namespace halfdm
