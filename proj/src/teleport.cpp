#include "halfdm/teleport.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace halfdm {

namespace {

constexpr double kBasisTol = 1e-10;

void require_sizes(const HalfDensityMatrix& resource, const ComplexVector& psi) {
  if (resource.rows() != resource.cols() || resource.rows() != psi.size()) {
    throw Error(ErrorCode::DimensionMismatch, "resource must be s x s and psi of length s");
  }
}

}  // namespace

std::vector<HalfDensityMatrix> bell_basis(Index s) {
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "bell_basis needs s >= 2");
  ComplexMatrix shift = ComplexMatrix::Zero(s, s);
  ComplexMatrix clock = ComplexMatrix::Zero(s, s);
  for (Index j = 0; j < s; ++j) {
    shift((j + 1) % s, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(s));
  }
  std::vector<HalfDensityMatrix> out;
  ComplexMatrix xk = ComplexMatrix::Identity(s, s);
  for (Index k = 0; k < s; ++k) {
    ComplexMatrix zl = ComplexMatrix::Identity(s, s);
    for (Index l = 0; l < s; ++l) {
      out.emplace_back(ComplexMatrix(xk * zl / std::sqrt(static_cast<double>(s))));
      zl = zl * clock;
    }
    xk = xk * shift;
  }
  return out;
}

void verify_measurement_basis(std::span<const HalfDensityMatrix> basis, Index s) {
  if (static_cast<Index>(basis.size()) != s * s) {
    throw Error(ErrorCode::InvalidBasis, "basis needs s^2 members");
  }
  for (const auto& t : basis) {
    if (t.rows() != s || t.cols() != s) throw Error(ErrorCode::InvalidBasis, "members must be s x s");
  }
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Complex overlap = (basis[a].matrix() * basis[b].matrix().adjoint()).trace();
      if (std::abs(overlap - Complex(a == b ? 1.0 : 0.0, 0.0)) > kBasisTol) {
        throw Error(ErrorCode::InvalidBasis, "members are not orthonormal");
      }
    }
  for (Index m = 0; m < s; ++m)
    for (Index n = 0; n < s; ++n) {
      const ComplexMatrix o = basis_op(s, m, n);
      ComplexMatrix sum = ComplexMatrix::Zero(s, s);
      for (const auto& t : basis) sum += t.matrix() * o * t.matrix().adjoint();
      if ((sum - o.trace() * ComplexMatrix::Identity(s, s)).norm() > kBasisTol) {
        throw Error(ErrorCode::InvalidBasis, "completeness relation fails");
      }
    }
}

ComplexVector tripartite_input(const HalfDensityMatrix& resource, const ComplexVector& psi) {
  require_sizes(resource, psi);
  return kron(pure_from_hdm(resource), psi);
}

ComplexVector tripartite_expansion(const HalfDensityMatrix& resource, const ComplexVector& psi,
                                   std::span<const HalfDensityMatrix> basis) {
  require_sizes(resource, psi);
  const Index s = psi.size();
  ComplexVector rhs = ComplexVector::Zero(s * s * s);
  for (const auto& t : basis) {
    const ComplexVector conditional = resource.matrix() * t.matrix().conjugate() * psi;
    rhs += kron(conditional, pure_from_hdm(t));
  }
  return rhs;
}

TeleportReport teleport(const HalfDensityMatrix& resource, const ComplexVector& psi_in,
                        std::span<const HalfDensityMatrix> basis) {
  require_sizes(resource, psi_in);
  const Index s = psi_in.size();
  if (!(psi_in.norm() > 0.0)) throw Error(ErrorCode::InvalidState, "psi is the zero vector");
  const ComplexVector psi = psi_in / psi_in.norm();
  verify_measurement_basis(basis, s);

  TeleportReport report;
  report.s = s;
  const ComplexMatrix maximal = ComplexMatrix::Identity(s, s) / static_cast<double>(s);
  report.maximally_entangled = (resource.density() - maximal).norm() <= kBasisTol;
  report.corrected = report.maximally_entangled;

  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    const ComplexMatrix& t = basis[idx].matrix();
    TeleportOutcome o;
    o.k = static_cast<Index>(idx) / s;
    o.l = static_cast<Index>(idx) % s;
    const ComplexMatrix conditional_op = resource.matrix() * t.conjugate();
    o.conditional = conditional_op * psi;
    o.probability = o.conditional.squaredNorm();
    ComplexVector out = o.conditional;
    if (report.corrected) {
      const double largest = svd(conditional_op).singular(0);
      out = conditional_op.adjoint() * o.conditional / largest;
    }
    if (out.norm() > 0.0) {
      o.output = out / out.norm();
      o.fidelity = std::norm(psi.dot(o.output));
    } else {
      o.output = ComplexVector::Zero(s);
    }
    report.total_probability += o.probability;
    report.outcomes.push_back(std::move(o));
  }
  report.expansion_residual =
      (tripartite_input(resource, psi) - tripartite_expansion(resource, psi, basis)).norm();
  return report;
}

}  // namespace halfdm
