#pragma once

#include <vector>

#include "fermiloss/bogoliubov.hpp"
#include "fermiloss/entropy.hpp"
#include "fermiloss/fock.hpp"

namespace fermiloss {

/// Outcome of an unread occupancy measurement of one mode.
struct MeasurementReport {
  int mode = 0;
  double p_occupied = 0.0;
  double p_empty = 0.0;
  CMatrix rho_post;            // Pi rho Pi + Pibar rho Pibar
  double S_mode = 0.0;         // S_f({p, 1 - p})
  double S_conditional = 0.0;  // p S_f(rho'_k) + (1 - p) S_f(rho'_kbar)
  double loss = 0.0;           // S_f(rho_post) - S_f(rho)
};

/// Branches with probability at or below this are dropped from S_conditional.
inline constexpr double kBranchFloor = 1e-14;

/// Sector-restricted occupation projectors a_k^dag a_k for every mode of W.
std::vector<CMatrix> mode_projectors(const FockSpace& space, const BogoliubovTransform& w);

/// Unread measurement with the projector pair (occupied, empty); throws if
/// they do not resolve the identity within 1e-10.
MeasurementReport measure_unread(const CMatrix& rho, const CMatrix& occupied, const CMatrix& empty,
                                 const EntropyFunctional& f, int mode = 0);
MeasurementReport measure_unread(const CMatrix& rho, const FockSpace& space,
                                 const BogoliubovTransform& w, int mode,
                                 const EntropyFunctional& f);

/// Reports for every mode of the basis W, each measured on the original rho.
std::vector<MeasurementReport> measure_basis(const CMatrix& rho, const FockSpace& space,
                                             const BogoliubovTransform& w,
                                             const EntropyFunctional& f);

/// sum_k [S_f(rho'(k)) - S_f(rho)] in the basis W.
double basis_info_loss(const CMatrix& rho, const FockSpace& space, const BogoliubovTransform& w,
                       const EntropyFunctional& f);

/// lhs = S(rho'(k)) - S(rho); rhs = S(rho|k) - (S(rho) - S(k)). Von Neumann only.
struct DiscordIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation() const { return std::abs(lhs - rhs); }
};
DiscordIdentity discord_identity_check(const CMatrix& rho, const CMatrix& occupied);

/// rho_FC = U (rho (x) |0><0|) U^dag with U = exp[-i pi/2 (c c^dag) (x) sigma_y],
/// ancilla index fastest. `reduced` is Tr_C rho_FC.
struct AncillaExtension {
  CMatrix rho_fc;
  CMatrix reduced;
  double entropy_system = 0.0;  // S(rho_F)
  double entropy_joint = 0.0;   // S(rho_FC)
};
AncillaExtension ancilla_extension(const CMatrix& rho, const CMatrix& occupied);

}  // namespace fermiloss
