#pragma once

#include <cstdint>
#include <random>

#include "qmeas/linalg.hpp"

namespace qm {

using Rng = std::mt19937_64;

// Independent stream for trial `index` of a run seeded with `seed`; the same
// (seed, index) pair always yields the same stream regardless of scheduling.
Rng stream_for(std::uint64_t seed, std::uint64_t index);

// Complex-Gaussian amplitudes, normalized (uniform on the unit sphere).
Vector random_pure_state(std::size_t dim, Rng& rng);

// Induced-measure mixed state: trace out an ancilla of dimension
// `ancilla_dim` from a random pure state (ancilla_dim == dim gives the
// Hilbert-Schmidt measure).
Matrix random_mixed_state(std::size_t dim, std::size_t ancilla_dim, Rng& rng);
inline Matrix random_mixed_state(std::size_t dim, Rng& rng) { return random_mixed_state(dim, dim, rng); }

// Haar-distributed unitary from the QR decomposition of a Ginibre matrix.
Matrix random_unitary(std::size_t dim, Rng& rng);

// Hermitian with Gaussian entries (GUE up to scale).
Matrix random_hermitian(std::size_t dim, Rng& rng);

// Uniform weights on the simplex: Dirichlet(1, ..., 1).
std::vector<double> random_simplex(std::size_t k, Rng& rng);

}  // namespace qm
