#include "fermiloss/random.hpp"

#include <bit>

namespace fermiloss {

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

CMatrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

CVector random_gaussian_vector(Eigen::Index size, Rng& rng) {
  return random_gaussian_matrix(size, 1, rng).col(0);
}

CMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  const CMatrix z = random_gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

RMatrix haar_orthogonal(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = normal(rng);
  Eigen::HouseholderQR<RMatrix> qr(z);
  RMatrix q = qr.householderQ() * RMatrix::Identity(n, n);
  const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  return q;
}

CMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const CMatrix z = random_gaussian_matrix(n, n, rng);
  return 0.5 * (z + z.adjoint());
}

CMatrix random_antisymmetric(Eigen::Index n, Rng& rng) {
  const CMatrix z = random_gaussian_matrix(n, n, rng);
  return 0.5 * (z - z.transpose());
}

CVector random_pure_state(const FockSpace& space, Rng& rng) {
  CVector psi = random_gaussian_vector(space.dim(), rng);
  return psi / psi.norm();
}

namespace {

CMatrix random_block_density(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  if (rank <= 0 || rank > dim) rank = dim;
  const CMatrix g = random_gaussian_matrix(dim, rank, rng);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace

CMatrix random_density_matrix(const FockSpace& space, Rng& rng, Eigen::Index rank) {
  if (!space.is_full()) {
    CMatrix rho = random_block_density(space.dim(), rank, rng);
    return 0.5 * (rho + rho.adjoint());
  }
  const auto even = FockSpace::build(space.modes(), Sector::Even, space.modes());
  const auto odd = FockSpace::build(space.modes(), Sector::Odd, space.modes());
  const Eigen::Index half_rank = rank <= 0 ? 0 : std::max<Eigen::Index>(1, rank / 2);
  const CMatrix rho_even = random_block_density(even.dim(), half_rank, rng);
  const CMatrix rho_odd = random_block_density(odd.dim(), half_rank, rng);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  const double weight = unit(rng);
  CMatrix rho = weight * even.embed(rho_even) + (1.0 - weight) * odd.embed(rho_odd);
  return 0.5 * (rho + rho.adjoint());
}

CMatrix pure_density(const CVector& psi) { return psi * psi.adjoint(); }

}  // namespace fermiloss
