#include "halfdm/positivity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "halfdm/random.hpp"

namespace halfdm {

namespace {

double psd_tolerance(const Spectrum& spec) {
  return kPsdTol * std::max(1.0, spec.spectral_radius());
}

void require_state(const ComplexMatrix& rho, BipartiteDims dims) {
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw Error(ErrorCode::DimensionMismatch, "state size does not match s*L");
  }
  const PsdReport psd = is_psd(rho);
  if (!psd) {
    throw Error(ErrorCode::InvalidState,
                "state has eigenvalue " + std::to_string(psd.min_eigenvalue));
  }
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > kPsdTol) {
    throw Error(ErrorCode::InvalidState, "state trace is not one");
  }
}

}  // namespace

void SeeSawConfig::validate() const {
  if (restarts < 1 || max_iters < 1 || !(conv_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "see-saw settings must be positive");
  }
}

ProductMinimum min_product_expectation(const ComplexMatrix& h, BipartiteDims dims,
                                       const SeeSawConfig& cfg, const SweepObserver& observer) {
  cfg.validate();
  if (h.rows() != dims.total() || h.cols() != dims.total()) {
    throw Error(ErrorCode::DimensionMismatch, "min_product_expectation: H must be sL x sL");
  }
  const ComplexMatrix herm = hermitian_part(h);

  ProductMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  best.restarts = cfg.restarts;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(r));
    ComplexVector beta = random_unit_vector(rng, dims.L);
    ComplexVector alpha;
    double previous = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int sweep = 1; sweep <= cfg.max_iters; ++sweep) {
      ++best.iterations;
      const Spectrum sa = hermitian_eig(partial_expectation(herm, dims, Factor::Second, beta));
      alpha = sa.eigenvectors.col(sa.size() - 1);
      const Spectrum sb = hermitian_eig(partial_expectation(herm, dims, Factor::First, alpha));
      beta = sb.eigenvectors.col(sb.size() - 1);
      const double value = sb.min();
      if (observer) observer(r, sweep, value);
      if (previous - value < cfg.conv_tol) {
        converged = true;
        break;
      }
      previous = value;
    }
    const ComplexVector product = kron(alpha, beta);
    const double value = product.dot(herm * product).real();
    if (value < best.value) {
      best.value = value;
      best.alpha = alpha;
      best.beta = beta;
      best.best_restart = r;
      best.converged = converged;
    }
  }
  return best;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::CP: return "CP";
    case Verdict::PositiveNotCP: return "PositiveNotCP";
    case Verdict::NotPositive: return "NotPositive";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

MapClass classify_map(const ChoiMatrix& choi, const SeeSawConfig& cfg) {
  const Spectrum spec = hermitian_eig(choi.matrix());
  const ProductMinimum pm = min_product_expectation(choi.matrix(), choi.dims(), cfg);

  MapClass out;
  out.min_eigenvalue = spec.min();
  out.product_min = pm.value;
  out.tolerance = psd_tolerance(spec);
  out.restarts = pm.restarts;
  out.iterations = pm.iterations;

  if (out.min_eigenvalue >= -out.tolerance) {
    out.verdict = Verdict::CP;
  } else if (pm.value < -out.tolerance) {
    out.verdict = Verdict::NotPositive;
    out.product_witness = ProductWitness{pm.alpha, pm.beta};
  } else {
    out.verdict = pm.converged ? Verdict::PositiveNotCP : Verdict::Undetermined;
    out.heuristic = true;
    out.negative_eigenvector = spec.eigenvectors.col(spec.size() - 1);
  }
  return out;
}

TheoremWitness theorem_witness_check(const ChoiMatrix& choi) {
  const Spectrum spec = hermitian_eig(choi.matrix());
  if (spec.min() >= -psd_tolerance(spec)) {
    throw Error(ErrorCode::NoNegativeEigenvalue, "Choi matrix is positive semidefinite");
  }
  TheoremWitness out;
  out.psi = spec.eigenvectors.col(spec.size() - 1);
  out.eigenvalue = spec.min();
  const ComplexMatrix projector_t = (out.psi * out.psi.adjoint()).transpose();
  const ComplexMatrix image = apply_on_second_factor(choi, projector_t, choi.output_dim());
  out.image_min_eig = hermitian_eig(image).min();
  return out;
}

Detection detect_entanglement(const ComplexMatrix& rho, BipartiteDims dims, const ChoiMatrix& map) {
  if (map.input_dim() != dims.L) {
    throw Error(ErrorCode::DimensionMismatch, "map input dimension differs from the second factor");
  }
  require_state(rho, dims);
  const Spectrum spec = hermitian_eig(apply_on_second_factor(map, rho, dims.s));
  return Detection{spec.min() < -psd_tolerance(spec), spec.min()};
}

PsdReport is_ppt(const ComplexMatrix& rho, BipartiteDims dims) {
  return is_psd(partial_transpose(rho, dims, Factor::Second));
}

bool indecomposability_check(const ChoiMatrix& map, const ComplexMatrix& rho_ppt, BipartiteDims dims) {
  const PsdReport ppt = is_ppt(rho_ppt, dims);
  if (!ppt) {
    throw Error(ErrorCode::NotPPTInput, "partial transpose has eigenvalue " +
                                            std::to_string(ppt.min_eigenvalue));
  }
  return detect_entanglement(rho_ppt, dims, map).detected;
}

}  // namespace halfdm
