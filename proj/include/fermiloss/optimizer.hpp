#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermiloss/bogoliubov.hpp"
#include "fermiloss/entropy.hpp"
#include "fermiloss/fock.hpp"

namespace fermiloss {

/// sp: particle-conserving bases only (V = 0); qsp: all Bogoliubov bases.
enum class Scope { Sp, Qsp };

std::string to_string(Scope scope);
Scope parse_scope(std::string_view text);

struct OptimizerConfig {
  Scope scope = Scope::Qsp;
  int restarts = 4;
  int max_iterations = 5000;
  double tolerance = 1e-8;
  double initial_step = 0.1;
  double shrink = 0.5;
  double armijo = 0.5;
  double step_floor = 1e-12;
  std::uint64_t seed = 0;
  int workers = 1;  // 0 = hardware concurrency

  void validate() const;
};

/// Gradient of the basis-summed loss with respect to the generator (h, Delta)
/// of W <- exp(-i eps calH) W:
///   d/d eps I = Re<G_h, h>_F + Re<G_Delta, Delta>_F.
struct LossGradient {
  CMatrix h;      // Hermitian
  CMatrix delta;  // antisymmetric
  double norm_squared() const { return h.squaredNorm() + delta.squaredNorm(); }
};

LossGradient loss_gradient(const CMatrix& rho, const FockSpace& space,
                           const BogoliubovTransform& w, const EntropyFunctional& f);
double directional_derivative(const LossGradient& g, const OneBodyGenerator& direction);

/// exp(-i eps calH(direction)) W.
BogoliubovTransform retract(const BogoliubovTransform& w, const OneBodyGenerator& direction,
                            double eps);

struct StationarityResidual {
  double sp = 0.0;                  // max_{k != l} |Tr rho [F_k + F_l, a_k^dag a_l]|
  std::optional<double> pair;       // same with a_k^dag a_l^dag; absent for scope sp
};

/// Evaluated directly from the definition, F_k = f'(rho'(k)).
StationarityResidual stationarity_residual(const CMatrix& rho, const FockSpace& space,
                                           const BogoliubovTransform& w,
                                           const EntropyFunctional& f, Scope scope);

struct OptimizationResult {
  double value = 0.0;  // loss under the requested functional in basis W
  BogoliubovTransform W;
  double residual_sp = 0.0;
  std::optional<double> residual_pair;
  int restarts = 0;
  int iterations = 0;  // of the best restart
  bool converged = false;
  int best_restart = 0;
  std::vector<double> restart_values;  // optimization objective per restart
};

/// Best of cfg.restarts descents started from the identity, the rho_sp
/// eigenbasis, the rho_qsp eigenbasis (scope qsp only) and random bases.
/// Renyi functionals are optimized through their Tsallis counterpart.
OptimizationResult minimize(const CMatrix& rho, const FockSpace& space,
                            const EntropyFunctional& f, const OptimizerConfig& cfg);

/// Minimum of the loss over `samples` random bases plus the canonical starts.
double brute_force_min(const CMatrix& rho, const FockSpace& space, const EntropyFunctional& f,
                       Scope scope, std::size_t samples, std::uint64_t seed, int workers = 1);

}  // namespace fermiloss
