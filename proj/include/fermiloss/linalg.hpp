#pragma once

#include <functional>

#include "fermiloss/types.hpp"

namespace fermiloss {

CMatrix hermitian_part(const CMatrix& m);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);
double max_abs(const CMatrix& m);

struct HermitianEigen {
  RVector values;   // descending
  CMatrix vectors;  // columns match values
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
HermitianEigen eigh(const CMatrix& m);
RVector eigenvalues_descending(const CMatrix& m);

/// g(M) for Hermitian M, evaluated through its spectral decomposition.
CMatrix hermitian_function(const CMatrix& m, const std::function<double(double)>& g);

/// exp(i t M) for Hermitian M.
CMatrix exp_i_hermitian(const CMatrix& m, double t);

/// Von Neumann fidelity |<a|b>|^2 of two normalized vectors.
double fidelity(const CVector& a, const CVector& b);

}  // namespace fermiloss
