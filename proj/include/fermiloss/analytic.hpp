#pragma once

#include <cstdint>
#include <vector>

#include "fermiloss/entropy.hpp"
#include "fermiloss/fock.hpp"
#include "fermiloss/optimizer.hpp"

namespace fermiloss {

/// rho = w |psi><psi| + (1 - w) 1_d / d, described by the one-body spectrum
/// of the pure component (rho_sp eigenvalues or the f_k of rho_qsp).
struct MixtureSpec {
  double w = 0.0;
  std::int64_t d = 2;
  RVector occupations;

  void validate() const;
};

/// sum_k [f(q_k) + f(q_kbar) - f(w + b) - f(b)] with q_k = w p_k + b and
/// b = (1 - w)/d. Renyi functionals are evaluated with explicit multiplicities.
double mixture_info_loss(const MixtureSpec& m, const EntropyFunctional& f);

/// w^2 |f''(1/d)| sum_k p_k (1 - p_k). Trace forms only.
double quadratic_increase(const MixtureSpec& m, const EntropyFunctional& f);

/// max((7w - 3)/4, 0) for the n = 4 maximally entangled odd-parity mixture.
double n4_concurrence_mixture(double w);

/// Entanglement of formation of the same mixture; von Neumann or quadratic.
double n4_entanglement_of_formation(double w, const EntropyFunctional& f);

/// One-body information loss of the same mixture (d = 8, all p_k = 1/2).
double n4_information_loss(double w, const EntropyFunctional& f);

/// 2 sum_k [f(w l_k + b) + f(w (1 - l_k) + b) - f(w + b) - f(b)] with one
/// entry l_k per Slater pair, sum_k l_k = 1.
double two_fermion_mixture_info_loss(const RVector& lambda, double w, std::int64_t d,
                                     const EntropyFunctional& f);

/// w |psi><psi| + (1 - w) Q / d. With d = 0 or d = dim(space), Q is the
/// identity of the space; otherwise psi must have a definite particle number
/// N with binomial(n, N) = d and Q projects onto that number subspace.
CMatrix mixture_state(const CVector& psi, const FockSpace& space, double w, std::int64_t d = 0);

/// Dimension of the N-particle subspace of n modes.
std::int64_t number_subspace_dimension(int n, int particles);

struct TheoremReport {
  int n = 0;
  int trials = 0;
  double max_qsp_value = 0.0;        // optimizer I^qsp
  double max_eigenbasis_value = 0.0; // loss in the rho_qsp eigenbasis
  int nonconserving = 0;             // instances with [rho, N] != 0 (n = 2)
  double min_sp_value_nonconserving = 0.0;
  int factorizing = 0;               // n = 2 instances of the uncorrelated form
  double counterexample_value = 0.0; // n = 3 mixed-parity instance
};

/// n = 2: random parity-commuting states; n = 3: random definite-parity
/// states of alternating parity, plus one mixed-parity instance.
TheoremReport theorem_harness(int n, int trials, std::uint64_t seed, const OptimizerConfig& cfg);

}  // namespace fermiloss
