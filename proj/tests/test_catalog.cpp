#include <doctest.h>

#include <cmath>

#include "frozen.hpp"
#include "halfdm/catalog.hpp"
#include "halfdm/random.hpp"

using namespace halfdm;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

ComplexMatrix eye(Index n) { return ComplexMatrix::Identity(n, n); }

ComplexVector vec3(Complex a, Complex b, Complex c) {
  ComplexVector v(3);
  v << a, b, c;
  return v;
}

// (A (x) I)|Phi_L> laid out as a vector: entry (i, k) at i*L + k.
ComplexVector vectorize(const ComplexMatrix& a) {
  ComplexVector v(a.rows() * a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) v(i * a.cols() + k) = a(i, k);
  return v;
}

}  // namespace

TEST_CASE("sigma basis") {
  const std::vector<HalfDensityMatrix> two = sigma_basis(2);
  REQUIRE(two.size() == 1);
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(1, 0) = 1.0 / std::sqrt(2.0);
  expect(0, 1) = -1.0 / std::sqrt(2.0);
  CHECK((two[0].matrix() - expect).norm() == 0.0);
  for (Index L = 2; L <= 5; ++L) {
    const auto basis = sigma_basis(L);
    CHECK(static_cast<Index>(basis.size()) == L * (L - 1) / 2);
    for (const auto& s : basis) CHECK(s.norm_squared() == doctest::Approx(1.0));
  }
  const auto three = sigma_basis(3);
  CHECK((three[0].matrix() - sigma(3, 1, 0).matrix()).norm() == 0.0);
  CHECK((three[1].matrix() - sigma(3, 2, 0).matrix()).norm() == 0.0);
  CHECK((three[2].matrix() - sigma(3, 2, 1).matrix()).norm() == 0.0);
  CHECK(code_of([] { sigma_basis(1); }) == ErrorCode::LTooSmall);
}

TEST_CASE("transposition as the trace minus the sigma map") {
  Rng rng(21);
  for (Index L = 2; L <= 5; ++L)
    for (int trial = 0; trial < 100; ++trial) {
      const ComplexMatrix rho = random_complex_matrix(rng, L, L);
      CHECK((rho.transpose() - transpose_via_sigma(rho)).norm() < 1e-12);
    }
  // The m > n generators alone account for half of the sum.
  const ComplexMatrix rho = random_hermitian(rng, 3);
  ComplexMatrix half = ComplexMatrix::Zero(3, 3);
  for (const auto& s : sigma_basis(3)) half += s.matrix() * rho * s.matrix().adjoint();
  CHECK((2.0 * half - sigma_cp_map(rho)).norm() < 1e-12);
}

TEST_CASE("swap operator") {
  for (Index L = 1; L <= 4; ++L) {
    const ComplexMatrix x = swap_operator(L).matrix();
    CHECK(x == partial_transpose(mirror_operator(L), BipartiteDims(L, L), Factor::First));
    CHECK((x * x - eye(L * L)).norm() == 0.0);
    const Spectrum spec = hermitian_eig(x);
    CHECK(spec.count_above(0.5) == L * (L + 1) / 2);
    CHECK(spec.count_below(-0.5) == L * (L - 1) / 2);
  }
  for (Index L = 2; L <= 4; ++L)
    for (const auto& s : sigma_basis(L)) {
      const ComplexVector v = vectorize(s.matrix());
      CHECK((swap_operator(L).matrix() * v + v).norm() < 1e-14);
    }
  Rng rng(22);
  const ComplexMatrix rho = random_complex_matrix(rng, 3, 3);
  CHECK((apply_via_choi(swap_operator(3), rho) - rho.transpose()).norm() < 1e-13);
}

TEST_CASE("reduction map") {
  const Spectrum two = hermitian_eig(reduction_choi(2).matrix());
  CHECK(two.count_above(0.5) == 3);
  CHECK(two.min() == doctest::Approx(-1.0));
  const Spectrum three = hermitian_eig(reduction_choi(3).matrix());
  CHECK(three.min() == doctest::Approx(-2.0));
  const ComplexVector phi = maximally_entangled(3) / std::sqrt(3.0);
  CHECK(std::abs(std::abs(phi.dot(three.eigenvectors.col(8))) - 1.0) < 1e-12);

  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix rho = random_hermitian(rng, 3);
    const ComplexMatrix lambda = apply_via_choi(reduction_choi(3), rho);
    CHECK((lambda - (rho.trace() * eye(3) - rho)).norm() < 1e-12);
    CHECK((lambda - sigma_cp_map(ComplexMatrix(rho.transpose()))).norm() < 1e-12);
  }
  for (Index L = 2; L <= 4; ++L) CHECK(classify_map(reduction_choi(L), SeeSawConfig{}).verdict == Verdict::PositiveNotCP);
  CHECK(code_of([] { reduction_choi(1); }) == ErrorCode::LTooSmall);
}

TEST_CASE("trace and negated identity maps") {
  Rng rng(24);
  const ComplexMatrix rho = random_hermitian(rng, 3);
  CHECK((apply_via_choi(trace_choi(2, 3), rho) - rho.trace() * eye(2)).norm() < 1e-13);
  CHECK(hermitian_eig(trace_choi(2, 3).matrix()).count_above(0.5) == 6);
  CHECK(classify_map(trace_choi(3, 2), SeeSawConfig{}).verdict == Verdict::CP);
  CHECK((negated_identity_choi(2, 2).matrix() + eye(4)).norm() == 0.0);
}

TEST_CASE("UPB validation") {
  CHECK(tiles_upb().size() == 5);
  CHECK((tiles_upb().gram() - eye(5)).cwiseAbs().maxCoeff() < 1e-12);

  const ComplexVector e0 = vec3(1, 0, 0);
  const ComplexVector e1 = vec3(0, 1, 0);
  CHECK(code_of([&] { UPB(BipartiteDims(3, 3), {{e0, e0}, {e0, vec3(1, 1, 0) / std::sqrt(2.0)}}); }) ==
        ErrorCode::InvalidUPB);
  CHECK(code_of([&] { UPB(BipartiteDims(3, 3), {}); }) == ErrorCode::InvalidUPB);
  CHECK(code_of([&] { UPB(BipartiteDims(3, 2), {{e0, e0}}); }) == ErrorCode::InvalidUPB);
  std::vector<ProductPair> full;
  for (Index i = 0; i < 2; ++i)
    for (Index k = 0; k < 2; ++k) full.push_back({basis_vector(2, i), basis_vector(2, k)});
  CHECK(code_of([&] { UPB(BipartiteDims(2, 2), full); }) == ErrorCode::InvalidUPB);
  ComplexVector nan = e1;
  nan(0) = std::nan("");
  CHECK(code_of([&] { UPB(BipartiteDims(3, 3), {{nan, e0}}); }) == ErrorCode::InvalidUPB);
}

TEST_CASE("Tiles projector and state") {
  const UPB u = tiles_upb();
  const ComplexMatrix p = upb_projector(u);
  CHECK(numerical_rank(p) == 5);
  CHECK((p * p - p).norm() < 1e-12);
  for (Index i = 0; i < u.size(); ++i) CHECK((p * u.product(i) - u.product(i)).norm() < 1e-12);
  const ComplexMatrix rho = upb_state(u);
  CHECK(numerical_rank(rho) == 4);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  CHECK(is_psd(rho));
  CHECK(is_ppt(rho, u.dims()).min_eigenvalue >= -1e-9);
}

TEST_CASE("epsilon of a UPB") {
  const double eps = epsilon_of_upb(tiles_upb(), SeeSawConfig{});
  CHECK(eps > 1e-6);
  CHECK(eps <= 5.0 / 9.0);
  CHECK(std::abs(eps - frozen::kTilesEpsilon) < frozen::kTilesEpsilonTol);

  // Four computational basis products can be completed, so some product
  // state is orthogonal to all of them.
  std::vector<ProductPair> partial;
  for (Index i = 0; i < 2; ++i)
    for (Index k = 0; k < 2; ++k) partial.push_back({basis_vector(3, i), basis_vector(3, k)});
  const UPB extendible(BipartiteDims(3, 3), partial);
  CHECK(std::abs(upb_product_minimum(extendible, SeeSawConfig{}).value) < 1e-9);
  CHECK(code_of([&] { epsilon_of_upb(extendible, SeeSawConfig{}); }) == ErrorCode::BoundViolated);
}

TEST_CASE("S_eps from the Tiles basis, maximally mixed rho0") {
  const UPB u = tiles_upb();
  const double eps = frozen::kTilesEpsilon * 0.9;
  const UpbMap m = upb_map(u, eye(9) / 9.0, eps, SeeSawConfig{});
  CHECK(m.d == 9.0);
  CHECK(m.eps == eps);
  CHECK(std::abs(m.epsilon - frozen::kTilesEpsilon) < frozen::kTilesEpsilonTol);
  CHECK((m.choi.matrix() - (upb_projector(u) - eps * eye(9))).norm() < 1e-12);
  REQUIRE(m.kraus.size() == 5);
  for (std::size_t i = 0; i < m.kraus.size(); ++i) {
    CHECK(numerical_rank(m.kraus[i].matrix()) == 1);
    CHECK((vectorize(m.kraus[i].matrix()) - u.product(static_cast<Index>(i))).norm() < 1e-14);
  }
  Rng rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix rho = random_hermitian(rng, 3);
    ComplexMatrix direct = -eps * rho.trace() * eye(3);
    for (const auto& t : m.kraus) direct += t.matrix() * rho * t.matrix().adjoint();
    CHECK((apply_via_choi(m.choi, rho) - direct).norm() < 1e-9);
  }
  const ComplexMatrix rho_tilde = upb_state(u);
  CHECK(std::abs((m.choi.matrix() * rho_tilde).trace().real() + eps) < 1e-9);
  CHECK(classify_map(m.choi, SeeSawConfig{}).verdict == Verdict::PositiveNotCP);
}

TEST_CASE("S_eps storyline at the full epsilon") {
  const UPB u = tiles_upb();
  const ComplexMatrix rho_tilde = upb_state(u);
  const UpbMap m = upb_map(u, eye(9) / 9.0, frozen::kTilesEpsilon, SeeSawConfig{});
  CHECK(is_ppt(rho_tilde, u.dims()));
  CHECK(std::abs((m.choi.matrix() * rho_tilde).trace().real() + frozen::kTilesEpsilon) < 1e-9);
  CHECK(detect_entanglement(rho_tilde, u.dims(), m.choi).detected);
  CHECK(indecomposability_check(m.choi, rho_tilde, u.dims()));
}

TEST_CASE("S_eps with other rho0") {
  const UPB u = tiles_upb();
  const ComplexMatrix rho_tilde = upb_state(u);
  const double eps = frozen::kTilesEpsilon / 2.0;
  Rng rng(26);

  SUBCASE("generic mixed rho0") {
    const ComplexMatrix rho0 = 0.5 * random_density(rng, 9, 9) + 0.5 * eye(9) / 9.0;
    const UpbMap m = upb_map(u, rho0, eps, SeeSawConfig{});
    CHECK(m.d >= 1.0);
    CHECK(m.d <= 9.0 * (1.0 + 1e-9) * 2.0);
    const double overlap = (rho0 * rho_tilde).trace().real();
    CHECK(std::abs((m.choi.matrix() * rho_tilde).trace().real() + eps * m.d * overlap) < 1e-9);
  }
  SUBCASE("maximally entangled rho0 gives d = min(s, L)") {
    const ComplexMatrix v = random_unitary(rng, 3);
    const ComplexVector psi = kron(v, eye(3)) * maximally_entangled(3) / std::sqrt(3.0);
    const UpbMap m = upb_map(u, psi * psi.adjoint(), eps, SeeSawConfig{});
    CHECK(m.d == doctest::Approx(3.0).epsilon(1e-8));
  }
  SUBCASE("Phi_3 itself") {
    const ComplexVector phi = maximally_entangled(3) / std::sqrt(3.0);
    CHECK(phi.dot(rho_tilde * phi).real() == doctest::Approx(1.0 / 12.0));
    const UpbMap m = upb_map(u, phi * phi.adjoint(), eps, SeeSawConfig{});
    CHECK(m.d == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(std::abs((m.choi.matrix() * rho_tilde).trace().real() + eps * m.d / 12.0) < 1e-9);
  }
  SUBCASE("errors") {
    const ComplexMatrix mixed = eye(9) / 9.0;
    CHECK(code_of([&] { upb_map(u, mixed, 5.0 / 9.0, SeeSawConfig{}); }) == ErrorCode::EpsTooLarge);
    CHECK(code_of([&] { upb_map(u, mixed, 0.0, SeeSawConfig{}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { upb_map(u, eye(9), eps, SeeSawConfig{}); }) == ErrorCode::Rho0Invalid);
    CHECK(code_of([&] { upb_map(u, eye(4) / 4.0, eps, SeeSawConfig{}); }) == ErrorCode::Rho0Invalid);
    ComplexMatrix skew = mixed;
    skew(0, 1) = 0.3;
    CHECK(code_of([&] { upb_map(u, skew, eps, SeeSawConfig{}); }) == ErrorCode::Rho0Invalid);
  }
}
