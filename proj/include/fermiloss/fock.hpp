#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fermiloss/types.hpp"

namespace fermiloss {

enum class Sector { Full, Even, Odd };

std::string to_string(Sector sector);
Sector parse_sector(std::string_view text);

inline constexpr int kDefaultMaxModes = 12;

/// Occupation-number basis of n fermionic modes, optionally restricted to a
/// number-parity sector. Bit j of a basis label is the occupation of mode j
/// (mode 0 is the least significant bit); labels are stored in increasing
/// order.
class FockSpace {
 public:
  static FockSpace build(int n, Sector sector = Sector::Full,
                         int max_modes = kDefaultMaxModes);

  int modes() const { return n_; }
  Sector sector() const { return sector_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  Eigen::Index full_dim() const { return Eigen::Index{1} << n_; }
  const std::vector<std::uint32_t>& basis() const { return basis_; }

  /// Position of a bitstring in this space, or -1 when it lies outside.
  Eigen::Index index_of(std::uint32_t bits) const;

  FockSpace full() const { return build(n_, Sector::Full, n_); }
  bool is_full() const { return sector_ == Sector::Full; }

  /// Restricts a full-space operator (or vector) to this sector's rows and
  /// columns. Only meaningful for parity-even operators.
  CMatrix restrict(const CMatrix& full_op) const;
  CVector restrict(const CVector& full_vec) const;
  /// Inverse of restrict: zero-pads a sector operator (or vector) to the full
  /// space.
  CMatrix embed(const CMatrix& sector_op) const;
  CVector embed(const CVector& sector_vec) const;

 private:
  FockSpace(int n, Sector sector, std::vector<std::uint32_t> basis)
      : n_(n), sector_(sector), basis_(std::move(basis)) {}

  int n_ = 0;
  Sector sector_ = Sector::Full;
  std::vector<std::uint32_t> basis_;
};

enum class OperatorKind { Annihilation, Creation, Number, ProjectorOccupied, ProjectorEmpty };

struct ModeOperator {
  CMatrix matrix;
  OperatorKind kind;
  int mode;
};

/// Jordan-Wigner annihilator on the full space:
/// c_k |.. n_k ..> = (-1)^{sum_{j<k} n_j} delta_{n_k,1} |.. n_k - 1 ..>.
ModeOperator annihilation_matrix(const FockSpace& space, int k);
ModeOperator creation_matrix(const FockSpace& space, int k);
ModeOperator number_matrix(const FockSpace& space, int k);
/// Pi_k = c_k^dag c_k and Pi_kbar = c_k c_k^dag, restricted to the space's sector.
ModeOperator occupied_projector(const FockSpace& space, int k);
ModeOperator empty_projector(const FockSpace& space, int k);

/// All full-space annihilators c_0 .. c_{n-1} as dense matrices.
std::vector<CMatrix> annihilators(int n);

/// Diagonal (-1)^popcount(b) on the space's basis.
CMatrix parity_operator(const FockSpace& space);
/// Total particle number sum_k c_k^dag c_k on the space's basis.
CMatrix number_operator(const FockSpace& space);

/// H = sum_ij h_ij c_i^dag c_j + 1/2 sum_ij (D_ij c_i^dag c_j^dag + conj(D_ij) c_j c_i),
/// restricted to the space's sector. Requires h Hermitian and D antisymmetric.
CMatrix one_body_hamiltonian_matrix(const FockSpace& space, const CMatrix& h,
                                    const CMatrix& delta);

/// Number of modes n with 2^n == dim, or -1.
int modes_for_dimension(Eigen::Index dim);

}  // namespace fermiloss
