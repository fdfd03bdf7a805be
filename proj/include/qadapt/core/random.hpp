#pragma once

#include <cstdint>
#include <random>

#include "qadapt/core/linalg.hpp"

namespace qadapt::core {

using Rng = std::mt19937_64;

/// Independent child stream derived from a parent seed and a stream index.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

ComplexVector haar_vector(Rng& rng, std::size_t dim);
ComplexMatrix haar_unitary(Rng& rng, std::size_t dim);
ComplexMatrix random_hermitian(Rng& rng, std::size_t dim);
/// Mixed state of the given rank: Tr_R of a Haar-random pure state on dim ⊗ rank.
ComplexMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank);
ComplexMatrix random_projector(Rng& rng, std::size_t dim, std::size_t rank);
/// Random binary effect 0 ≤ E ≤ I with Haar eigenbasis and uniform spectrum.
ComplexMatrix random_effect(Rng& rng, std::size_t dim);

}  // namespace qadapt::core
