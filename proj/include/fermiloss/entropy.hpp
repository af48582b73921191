#pragma once

#include <span>
#include <string>
#include <string_view>

#include "fermiloss/types.hpp"

namespace fermiloss {

enum class EntropyKind { VonNeumann, Quadratic, Tsallis, Renyi };

/// Entropy family S_f. Trace forms use S_f(rho) = Tr f(rho) with f(0) = f(1) = 0,
/// normalized so that the spectrum {1/2, 1/2} has unit entropy. Renyi is not a
/// trace form and is evaluated as log2(Tr rho^q) / (1 - q). Logarithms are base 2.
struct EntropyFunctional {
  EntropyKind kind = EntropyKind::VonNeumann;
  double q = 1.0;

  static EntropyFunctional von_neumann() { return {EntropyKind::VonNeumann, 1.0}; }
  static EntropyFunctional quadratic() { return {EntropyKind::Quadratic, 2.0}; }
  static EntropyFunctional tsallis(double q);
  static EntropyFunctional renyi(double q);

  bool is_trace_form() const { return kind != EntropyKind::Renyi; }

  /// Integrand f(p); p is clipped to [0, 1]. Throws for Renyi.
  double operator()(double p) const;

  /// Selector text accepted by parse_entropy.
  std::string name() const;
};

/// Parses `vn`, `quad`, `tsallis:<q>` or `renyi:<q>`.
EntropyFunctional parse_entropy(std::string_view text);

/// The trace-form functional whose optimization problem coincides with f's:
/// Renyi(q) maps to Tsallis(q), trace forms map to themselves.
EntropyFunctional optimization_functional(const EntropyFunctional& f);

double binary_entropy(double p);

/// S_f of a probability vector. Entries must be >= -1e-12 and sum to 1 within
/// 1e-9; they are clipped to [0, 1] before evaluation.
double entropy_of_spectrum(std::span<const double> spectrum, const EntropyFunctional& f);
double entropy_of_spectrum(const RVector& spectrum, const EntropyFunctional& f);

/// S_f of a Hermitian, positive semidefinite, trace-one matrix.
double entropy_of_state(const CMatrix& rho, const EntropyFunctional& f);

inline constexpr double kDerivativeFloor = 1e-12;

/// f'(p) for trace forms, with p floored at 1e-12. Throws for Renyi.
double functional_derivative(const EntropyFunctional& f, double p);
/// f''(p) for trace forms, with p floored at 1e-12. Throws for Renyi.
double functional_second_derivative(const EntropyFunctional& f, double p);

/// True iff the descending partial sums of `a` dominate those of `b`
/// (with 1e-10 slack), after zero-padding both to a common length.
bool majorizes(std::span<const double> a, std::span<const double> b);
bool majorizes(const RVector& a, const RVector& b);

}  // namespace fermiloss
