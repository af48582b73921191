#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fermiloss/fock.hpp"
#include "fermiloss/random.hpp"

namespace support {

using fermiloss::CMatrix;
using fermiloss::CVector;
using fermiloss::RVector;

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Von Neumann entropy straight from a fresh eigensolve, natural log converted.
inline double vn_entropy(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-15) s -= p * std::log(p);
  }
  return s / std::log(2.0);
}

inline double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
}

// Jordan-Wigner annihilators with the string over higher mode indices.
inline std::vector<CMatrix> reversed_annihilators(int n) {
  const std::uint32_t d = std::uint32_t{1} << n;
  std::vector<CMatrix> out;
  for (int k = 0; k < n; ++k) {
    CMatrix c = CMatrix::Zero(d, d);
    for (std::uint32_t b = 0; b < d; ++b) {
      if (!(b >> k & 1u)) continue;
      const int above = __builtin_popcount(b >> (k + 1));
      c(b ^ (1u << k), b) = above % 2 == 0 ? 1.0 : -1.0;
    }
    out.push_back(c);
  }
  return out;
}

// Mode operators a_k = sum_j conj(U_jk) c_j + V_jk c_j^dag from arbitrary c's.
inline std::vector<CMatrix> transform_modes(const std::vector<CMatrix>& c, const CMatrix& u,
                                            const CMatrix& v) {
  std::vector<CMatrix> out;
  for (int k = 0; k < static_cast<int>(c.size()); ++k) {
    CMatrix a = CMatrix::Zero(c[0].rows(), c[0].cols());
    for (int j = 0; j < static_cast<int>(c.size()); ++j)
      a += std::conj(u(j, k)) * c[j] + v(j, k) * CMatrix(c[j].adjoint());
    out.push_back(a);
  }
  return out;
}

// sum_k [S(P rho P + Q rho Q) - S(rho)] with P = a_k^dag a_k, all in the full space.
inline double naive_loss(const CMatrix& rho, const std::vector<CMatrix>& a) {
  const CMatrix id = CMatrix::Identity(rho.rows(), rho.cols());
  const double base = vn_entropy(rho);
  double total = 0.0;
  for (const auto& ak : a) {
    const CMatrix p = ak.adjoint() * ak;
    total += vn_entropy(p * rho * p + (id - p) * rho * (id - p)) - base;
  }
  return total;
}

// Matrix exponential of -i H for Hermitian H via a separate eigensolve.
inline CMatrix expm_minus_i(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  CVector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(std::complex<double>(0.0, -es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace support
