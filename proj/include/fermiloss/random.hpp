#pragma once

#include <cstdint>
#include <random>

#include "fermiloss/fock.hpp"

namespace fermiloss {

using Rng = std::mt19937_64;

/// Independent, reproducible stream for trial `index` of a seeded run.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

CMatrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
CVector random_gaussian_vector(Eigen::Index size, Rng& rng);

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
CMatrix haar_unitary(Eigen::Index n, Rng& rng);
/// Haar-distributed real orthogonal matrix.
RMatrix haar_orthogonal(Eigen::Index n, Rng& rng);

CMatrix random_hermitian(Eigen::Index n, Rng& rng);
CMatrix random_antisymmetric(Eigen::Index n, Rng& rng);

/// Normalized random vector supported on `space` (a parity sector gives a
/// state of definite parity).
CVector random_pure_state(const FockSpace& space, Rng& rng);

/// Random density matrix on `space` of the given rank (0 = full rank). On the
/// full space the result is block diagonal in parity, so it commutes with P.
CMatrix random_density_matrix(const FockSpace& space, Rng& rng, Eigen::Index rank = 0);

CMatrix pure_density(const CVector& psi);

}  // namespace fermiloss
