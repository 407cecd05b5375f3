#pragma once

// Teleportation through the HDM expansion
//   |phi>_12 |psi>_3 = sum_{k,l} T_phi T_kl^* |psi>_1 |k;l>_23,
// where T_phi is the HDM of the resource and |k;l> = T_kl|Phi_s> is the
// measurement basis on systems 2 and 3.

#include <span>
#include <vector>

#include "halfdm/hdm.hpp"

namespace halfdm {

// T_kl = X^k Z^l / sqrt(s) (shift and clock), member index k*s + l. For s = 2
// these are the Bell states.
std::vector<HalfDensityMatrix> bell_basis(Index s);

// Throws InvalidBasis unless Tr(T_kl T_k'l'^dagger) = delta and
// sum T_kl O T_kl^dagger = Tr(O) I hold within 1e-10.
void verify_measurement_basis(std::span<const HalfDensityMatrix> basis, Index s);

struct TeleportOutcome {
  Index k = 0;
  Index l = 0;
  ComplexVector conditional;  // T_phi T_kl^* psi, unnormalized
  double probability = 0.0;   // squared norm of `conditional`
  ComplexVector output;       // normalized state on system 1 after correction (if any)
  double fidelity = 0.0;      // |<psi|output>|^2
};

struct TeleportReport {
  Index s = 0;
  bool maximally_entangled = false;
  bool corrected = false;  // only maximally entangled resources are corrected
  std::vector<TeleportOutcome> outcomes;
  double total_probability = 0.0;
  double expansion_residual = 0.0;  // || lhs - rhs || of the expansion
};

ComplexVector tripartite_input(const HalfDensityMatrix& resource, const ComplexVector& psi);
ComplexVector tripartite_expansion(const HalfDensityMatrix& resource, const ComplexVector& psi,
                                   std::span<const HalfDensityMatrix> basis);

// psi is normalized before use; throws InvalidState for a zero vector and
// DimensionMismatch for inconsistent sizes.
TeleportReport teleport(const HalfDensityMatrix& resource, const ComplexVector& psi,
                        std::span<const HalfDensityMatrix> basis);

}  // namespace halfdm
