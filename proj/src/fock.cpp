#include "fermiloss/fock.hpp"

#include <algorithm>
#include <bit>

#include "fermiloss/linalg.hpp"

namespace fermiloss {

std::string to_string(Sector sector) {
  switch (sector) {
    case Sector::Full: return "full";
    case Sector::Even: return "even";
    case Sector::Odd: return "odd";
  }
  return "full";
}

Sector parse_sector(std::string_view text) {
  if (text == "full") return Sector::Full;
  if (text == "even") return Sector::Even;
  if (text == "odd") return Sector::Odd;
  throw ValidationError("unknown sector '" + std::string(text) + "' (expected full, even or odd)");
}

FockSpace FockSpace::build(int n, Sector sector, int max_modes) {
  require(n >= 1 && n <= max_modes,
          "mode count " + std::to_string(n) + " outside [1, " + std::to_string(max_modes) + "]");
  const std::uint32_t full = std::uint32_t{1} << n;
  std::vector<std::uint32_t> basis;
  basis.reserve(sector == Sector::Full ? full : full / 2);
  for (std::uint32_t b = 0; b < full; ++b) {
    const bool odd = std::popcount(b) % 2 == 1;
    if (sector == Sector::Full || (sector == Sector::Odd) == odd) basis.push_back(b);
  }
  return FockSpace(n, sector, std::move(basis));
}

Eigen::Index FockSpace::index_of(std::uint32_t bits) const {
  if (bits >= (std::uint32_t{1} << n_)) return -1;
  if (sector_ == Sector::Full) return static_cast<Eigen::Index>(bits);
  const bool odd = std::popcount(bits) % 2 == 1;
  if ((sector_ == Sector::Odd) != odd) return -1;
  // Within a parity sector the labels alternate in a fixed pattern, but a
  // binary search keeps this independent of that detail.
  auto it = std::lower_bound(basis_.begin(), basis_.end(), bits);
  return static_cast<Eigen::Index>(it - basis_.begin());
}

CMatrix FockSpace::restrict(const CMatrix& full_op) const {
  require(full_op.rows() == full_dim() && full_op.cols() == full_dim(),
          "operator dimension does not match the full Fock space");
  if (is_full()) return full_op;
  const Eigen::Index d = dim();
  CMatrix out(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) out(i, j) = full_op(basis_[i], basis_[j]);
  return out;
}

CVector FockSpace::restrict(const CVector& full_vec) const {
  require(full_vec.size() == full_dim(), "vector dimension does not match the full Fock space");
  if (is_full()) return full_vec;
  CVector out(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) out(i) = full_vec(basis_[i]);
  return out;
}

CMatrix FockSpace::embed(const CMatrix& sector_op) const {
  require(sector_op.rows() == dim() && sector_op.cols() == dim(),
          "operator dimension does not match the sector");
  if (is_full()) return sector_op;
  CMatrix out = CMatrix::Zero(full_dim(), full_dim());
  for (Eigen::Index j = 0; j < dim(); ++j)
    for (Eigen::Index i = 0; i < dim(); ++i) out(basis_[i], basis_[j]) = sector_op(i, j);
  return out;
}

CVector FockSpace::embed(const CVector& sector_vec) const {
  require(sector_vec.size() == dim(), "vector dimension does not match the sector");
  if (is_full()) return sector_vec;
  CVector out = CVector::Zero(full_dim());
  for (Eigen::Index i = 0; i < dim(); ++i) out(basis_[i]) = sector_vec(i);
  return out;
}

namespace {

void check_mode(const FockSpace& space, int k) {
  require(k >= 0 && k < space.modes(),
          "mode index " + std::to_string(k) + " outside [0, " + std::to_string(space.modes()) + ")");
}

CMatrix jordan_wigner_annihilator(int n, int k) {
  const std::uint32_t d = std::uint32_t{1} << n;
  const std::uint32_t bit = std::uint32_t{1} << k;
  const std::uint32_t lower = bit - 1;
  CMatrix c = CMatrix::Zero(d, d);
  for (std::uint32_t b = 0; b < d; ++b) {
    if (!(b & bit)) continue;
    const double sign = (std::popcount(b & lower) % 2 == 0) ? 1.0 : -1.0;
    c(b ^ bit, b) = sign;
  }
  return c;
}

}  // namespace

ModeOperator annihilation_matrix(const FockSpace& space, int k) {
  check_mode(space, k);
  return {jordan_wigner_annihilator(space.modes(), k), OperatorKind::Annihilation, k};
}

ModeOperator creation_matrix(const FockSpace& space, int k) {
  check_mode(space, k);
  return {jordan_wigner_annihilator(space.modes(), k).adjoint(), OperatorKind::Creation, k};
}

ModeOperator number_matrix(const FockSpace& space, int k) {
  check_mode(space, k);
  const Eigen::Index d = space.dim();
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    if (space.basis()[i] & (std::uint32_t{1} << k)) m(i, i) = 1.0;
  return {std::move(m), OperatorKind::Number, k};
}

ModeOperator occupied_projector(const FockSpace& space, int k) {
  auto op = number_matrix(space, k);
  op.kind = OperatorKind::ProjectorOccupied;
  return op;
}

ModeOperator empty_projector(const FockSpace& space, int k) {
  auto op = number_matrix(space, k);
  op.matrix = CMatrix::Identity(space.dim(), space.dim()) - op.matrix;
  op.kind = OperatorKind::ProjectorEmpty;
  return op;
}

std::vector<CMatrix> annihilators(int n) {
  std::vector<CMatrix> ops;
  ops.reserve(n);
  for (int k = 0; k < n; ++k) ops.push_back(jordan_wigner_annihilator(n, k));
  return ops;
}

CMatrix parity_operator(const FockSpace& space) {
  const Eigen::Index d = space.dim();
  CMatrix p = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    p(i, i) = (std::popcount(space.basis()[i]) % 2 == 0) ? 1.0 : -1.0;
  return p;
}

CMatrix number_operator(const FockSpace& space) {
  const Eigen::Index d = space.dim();
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = std::popcount(space.basis()[i]);
  return m;
}

CMatrix one_body_hamiltonian_matrix(const FockSpace& space, const CMatrix& h,
                                    const CMatrix& delta) {
  const int n = space.modes();
  require(h.rows() == n && h.cols() == n && delta.rows() == n && delta.cols() == n,
          "one-body generator blocks must be n x n");
  require((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12, "h is not Hermitian");
  require((delta + delta.transpose()).cwiseAbs().maxCoeff() <= 1e-12, "Delta is not antisymmetric");

  const auto c = annihilators(n);
  const Eigen::Index d = space.full_dim();
  CMatrix H = CMatrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (h(i, j) != 0.0) H.noalias() += h(i, j) * (c[i].adjoint() * c[j]);
      if (delta(i, j) != 0.0) {
        const CMatrix pair = c[i].adjoint() * c[j].adjoint();
        H.noalias() += 0.5 * delta(i, j) * pair;
        H.noalias() += 0.5 * std::conj(delta(i, j)) * pair.adjoint();
      }
    }
  }
  return space.restrict(hermitian_part(H));
}

int modes_for_dimension(Eigen::Index dim) {
  for (int n = 0; n < 31; ++n)
    if ((Eigen::Index{1} << n) == dim) return n;
  return -1;
}

}  // namespace fermiloss
