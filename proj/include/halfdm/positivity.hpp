#pragma once

// Classification of Hermitian maps by their Choi matrix:
//   CP             - the Choi matrix is PSD;
//   PositiveNotCP  - not PSD, yet no product state with negative expectation
//                    was found (a heuristic certificate, see-saw based);
//   NotPositive    - an explicit product state with negative expectation.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "halfdm/chmap.hpp"

namespace halfdm {

struct SeeSawConfig {
  int restarts = 64;
  int max_iters = 500;
  double conv_tol = 1e-12;  // absolute decrease per sweep
  std::uint64_t seed = 0;

  void validate() const;
};

struct ProductMinimum {
  double value = 0.0;  // <alpha (x) beta| H |alpha (x) beta>
  ComplexVector alpha;
  ComplexVector beta;
  int best_restart = 0;
  int restarts = 0;
  long iterations = 0;     // sweeps summed over all restarts
  bool converged = false;  // of the restart that produced `value`
};

// Called after every sweep with the current objective value.
using SweepObserver = std::function<void(int restart, int sweep, double value)>;

// Alternating minimum-eigenvector search over product states. The result is
// an upper bound on the true product minimum. Restart r is seeded with
// cfg.seed + r; ties between restarts go to the lowest index.
ProductMinimum min_product_expectation(const ComplexMatrix& h, BipartiteDims dims,
                                       const SeeSawConfig& cfg,
                                       const SweepObserver& observer = {});

enum class Verdict { CP, PositiveNotCP, NotPositive, Undetermined };

std::string_view to_string(Verdict v);

struct ProductWitness {
  ComplexVector alpha;
  ComplexVector beta;
};

struct MapClass {
  Verdict verdict = Verdict::Undetermined;
  double min_eigenvalue = 0.0;
  double product_min = 0.0;
  double tolerance = 0.0;
  int restarts = 0;
  long iterations = 0;
  // PositiveNotCP/Undetermined rest on a search, not a proof.
  bool heuristic = false;
  std::optional<ComplexVector> negative_eigenvector;
  std::optional<ProductWitness> product_witness;
};

MapClass classify_map(const ChoiMatrix& choi, const SeeSawConfig& cfg);

struct TheoremWitness {
  ComplexVector psi;       // eigenvector of the most negative eigenvalue
  double eigenvalue = 0.0;
  double image_min_eig = 0.0;  // of (I_s (x) Map)(P_psi^T)
};

// Throws NoNegativeEigenvalue for PSD Choi matrices.
TheoremWitness theorem_witness_check(const ChoiMatrix& choi);

struct Detection {
  bool detected = false;
  double min_eig = 0.0;
};

// Applies the map to the second subsystem of `rho`.
Detection detect_entanglement(const ComplexMatrix& rho, BipartiteDims dims, const ChoiMatrix& map);

PsdReport is_ppt(const ComplexMatrix& rho, BipartiteDims dims);

// True iff a PPT state is detected by the map, which certifies the map is
// indecomposable. Throws NotPPTInput when rho_ppt is not PPT.
bool indecomposability_check(const ChoiMatrix& map, const ComplexMatrix& rho_ppt, BipartiteDims dims);

}  // namespace halfdm
