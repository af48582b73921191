#pragma once

#include <vector>

#include "fermiloss/entropy.hpp"
#include "fermiloss/fock.hpp"

namespace fermiloss {

/// Bipartition (A, B) of the modes of a pure state. Local Fock spaces of A
/// and B keep the ascending mode order of each subset, so bit i of a local
/// label is the occupation of subset[i].
struct PartitionReport {
  std::vector<int> subset_a;
  std::vector<int> subset_b;
  CMatrix C;                 // 2^m x 2^(n-m), psi = sum C_{mu nu} |mu>_A |nu>_B
  RVector schmidt_values;    // descending
  double entanglement = 0.0; // S_f of {sigma_k^2}
  CMatrix rho_a;             // C C^dag
  CMatrix rho_b;             // conj(C^dag C)
};

/// Fermionic sign picked up when the creators of `bits` are reordered so
/// that all modes of A precede those of B.
double reorder_sign(std::uint32_t bits, const std::vector<int>& subset_a, int n);

/// Throws for an empty or full subset, repeated or out-of-range modes, or a
/// vector without definite number parity.
PartitionReport schmidt_decompose(const CVector& psi, const FockSpace& space,
                                  const std::vector<int>& subset_a,
                                  const EntropyFunctional& f = EntropyFunctional::von_neumann());

/// Reduced state on the 2^|A| local space of A.
CMatrix reduced_state(const CVector& psi, const FockSpace& space, const std::vector<int>& subset_a);
CMatrix reduced_state(const CMatrix& rho, const FockSpace& space, const std::vector<int>& subset_a);

/// Full-space matrix of an operator given on the local space of A,
/// i.e. the local matrix with A's creators mapped to c_{subset[i]}.
/// Only parity-even local operators are supported.
CMatrix embed_local_operator(const CMatrix& local, int n, const std::vector<int>& subset_a);

/// E_{B1 B2}(rho_B) for A = {mode}: p_0 S_f(rho_B1^0) + p_1 S_f(rho_B1^1).
double single_mode_eof(const CVector& psi, const FockSpace& space, int mode,
                       const std::vector<int>& subset_b1,
                       const EntropyFunctional& f = EntropyFunctional::von_neumann());

/// Pure state on m + added modes (A = modes 0..m-1) whose reduced state on A
/// is rho_a. One extra mode is added when all eigenstates share a parity.
struct Purification {
  int added_modes = 0;
  CVector psi;  // full space of m + added_modes modes, even total parity
};
Purification purify(const CMatrix& rho_a);

}  // namespace fermiloss
