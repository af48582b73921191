#pragma once

#include "fermiloss/bogoliubov.hpp"
#include "fermiloss/entropy.hpp"
#include "fermiloss/fock.hpp"

namespace fermiloss {

/// One-body contractions of a parity-commuting state:
///   rho_sp(i, j) = <c_j^dag c_i>,  kappa(i, j) = <c_j c_i>,
///   rho_qsp = [[rho_sp, kappa], [-conj(kappa), 1 - conj(rho_sp)]].
struct OneBodySummary {
  CMatrix rho_sp;
  CMatrix kappa;
  CMatrix rho_qsp;
  RVector sp_eigs;   // descending
  RVector qsp_eigs;  // one member f_k >= 1/2 of each pair (f_k, 1 - f_k), descending
  double symmetrization_error = 0.0;
};

/// Throws if rho fails to commute with the parity operator within 1e-10.
OneBodySummary one_body_summary(const CMatrix& rho, const FockSpace& space);
OneBodySummary one_body_summary(const CVector& psi, const FockSpace& space);

struct QspDiagonalization {
  BogoliubovTransform W;
  RVector f;  // <a_k^dag a_k>, descending, each >= 1/2
};

/// Quasiparticle basis with W^dag rho_qsp W = diag(f, 1 - f).
QspDiagonalization diagonalize_qsp(const OneBodySummary& s);

/// Single-particle basis (V = 0) diagonalizing rho_sp, occupations descending.
BogoliubovTransform diagonalize_sp(const OneBodySummary& s);

/// rho_qsp after the basis change W: W^dag rho_qsp W.
CMatrix transform_qsp(const CMatrix& rho_qsp, const BogoliubovTransform& w);

/// Sum over modes of S_f({lambda_k, 1 - lambda_k}) for the eigenvalues of
/// rho_sp (resp. the pairs of rho_qsp). The state must be pure.
double sp_entanglement_entropy(const CMatrix& rho, const FockSpace& space,
                               const EntropyFunctional& f);
double qsp_entanglement_entropy(const CMatrix& rho, const FockSpace& space,
                                const EntropyFunctional& f);

/// Entropy of a list of mode occupations, each contributing S_f({p, 1 - p}).
double occupation_entropy(const RVector& occupations, const EntropyFunctional& f);

/// n = 4 odd-parity pure state sum_i alpha_i c_i^dag|0> + conj(beta_i) c_i|full>.
struct OddParityN4State {
  CVector alpha;
  CVector beta;

  /// Amplitudes on the full 16-dimensional space.
  CVector fock_state() const;
  void validate() const;
};

/// C = 2 |beta^dag alpha|.
double fermionic_concurrence_pure(const OddParityN4State& s);
/// (f_+, f_-) = ((1 + sqrt(1 - C^2)) / 2, (1 - sqrt(1 - C^2)) / 2).
std::pair<double, double> concurrence_occupations(double concurrence);

/// psi = 1/2 sum_ij M_ij c_i^dag c_j^dag |0>, with M antisymmetric and
/// Tr(M M^dag) / 2 = 1.
struct TwoFermionState {
  CMatrix M;

  int modes() const { return static_cast<int>(M.rows()); }
  CVector fock_state() const;
  void validate() const;
};

/// U^dag M conj(U) = D, D block diagonal with blocks sqrt(lambda_k) [[0, 1], [-1, 0]].
struct SlaterDecomposition {
  CMatrix U;
  RVector lambda;  // one entry per pair, descending
  CMatrix D;
  double reconstruction_error = 0.0;
};

SlaterDecomposition slater_decompose_two_fermion(const TwoFermionState& s);

/// Rebuilds sum_k sqrt(lambda_k) a_{2k}^dag a_{2k+1}^dag |0> with c = U a.
CVector slater_normal_form_state(const SlaterDecomposition& dec);

}  // namespace fermiloss
