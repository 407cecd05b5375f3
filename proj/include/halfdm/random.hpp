#pragma once

#include <cstdint>
#include <random>

#include "halfdm/mat_core.hpp"

namespace halfdm {

using Rng = std::mt19937_64;

// Entries i.i.d. standard complex normal.
ComplexMatrix random_complex_matrix(Rng& rng, Index rows, Index cols);

// Haar-distributed unit vector.
ComplexVector random_unit_vector(Rng& rng, Index n);

// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix).
ComplexMatrix random_unitary(Rng& rng, Index n);

ComplexMatrix random_hermitian(Rng& rng, Index n);

// Trace-one PSD matrix of the given rank.
ComplexMatrix random_density(Rng& rng, Index n, Index rank);

}  // namespace halfdm
