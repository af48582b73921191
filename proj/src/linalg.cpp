#include "fermiloss/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace fermiloss {

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

HermitianEigen eigh(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  const Eigen::Index d = m.rows();
  HermitianEigen out{RVector(d), CMatrix(d, d)};
  for (Eigen::Index i = 0; i < d; ++i) {
    out.values(i) = solver.eigenvalues()(d - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

RVector eigenvalues_descending(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

CMatrix hermitian_function(const CMatrix& m, const std::function<double(double)>& g) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  const RVector values = solver.eigenvalues().unaryExpr(g);
  const CMatrix& v = solver.eigenvectors();
  return v * values.cast<Complex>().asDiagonal() * v.adjoint();
}

CMatrix exp_i_hermitian(const CMatrix& m, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  const CVector phases = (kI * t * solver.eigenvalues().cast<Complex>()).array().exp();
  const CMatrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

double fidelity(const CVector& a, const CVector& b) { return std::norm(a.dot(b)); }

}  // namespace fermiloss
