#pragma once

#include <vector>

#include "fermiloss/fock.hpp"

namespace fermiloss {

/// Bogoliubov transformation W = [[U, V], [conj(V), conj(U)]] acting as
/// (a; a^dag) = W^dag (c; c^dag), i.e. a_k = sum_j conj(U_jk) c_j + V_jk c_j^dag.
struct BogoliubovTransform {
  CMatrix U;
  CMatrix V;

  static BogoliubovTransform identity(int n);
  /// Pure single-particle rotation (V = 0).
  static BogoliubovTransform from_unitary(const CMatrix& u);
  /// Splits a 2n x 2n matrix into blocks; throws if the block structure or
  /// unitarity is violated beyond `tol`.
  static BogoliubovTransform from_matrix(const CMatrix& w, double tol = 1e-10);

  int modes() const { return static_cast<int>(U.rows()); }
  CMatrix matrix() const;

  /// max-norm of the violations of U U^dag + V V^dag = 1 and U V^T + V U^T = 0.
  double unitarity_error() const;
  bool is_particle_conserving(double tol = 1e-12) const;
};

/// One-body generator with h Hermitian and Delta antisymmetric, assembled as
/// calH = [[h, Delta], [-conj(Delta), -conj(h)]].
struct OneBodyGenerator {
  CMatrix h;
  CMatrix delta;

  static OneBodyGenerator zero(int n);
  int modes() const { return static_cast<int>(h.rows()); }
  CMatrix matrix() const;
  /// Throws unless h = h^dag and Delta^T = -Delta within 1e-12.
  void validate() const;
};

/// W = exp(i t calH). For Delta = 0 the result has V = 0.
BogoliubovTransform from_generator(const OneBodyGenerator& g, double t);

/// Matrix product W1 W2, re-split into blocks.
BogoliubovTransform compose(const BogoliubovTransform& w1, const BogoliubovTransform& w2);
BogoliubovTransform inverse(const BogoliubovTransform& w);

/// Majorana form: W = Omega^dag O Omega with O real orthogonal, where
/// gamma_{2j} = (c_j + c_j^dag)/sqrt2 and gamma_{2j+1} = -i (c_j - c_j^dag)/sqrt2.
CMatrix majorana_map(int n);
BogoliubovTransform from_majorana_rotation(const RMatrix& o);
RMatrix to_majorana_rotation(const BogoliubovTransform& w);

/// Full-space matrices of a_0 .. a_{n-1} for the transform W.
std::vector<CMatrix> quasiparticle_annihilators(int n, const BogoliubovTransform& w);

/// a_k on the full Fock space of `space`.
ModeOperator quasiparticle_mode(const FockSpace& space, const BogoliubovTransform& w, int k);

}  // namespace fermiloss
