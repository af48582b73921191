#include "fermiloss/onebody.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "fermiloss/linalg.hpp"

namespace fermiloss {

namespace {

// Eigenvalue pairs of rho_qsp closer to 1/2 than this are treated as exactly
// degenerate when choosing Majorana partners.
constexpr double kKernelTol = 1e-9;

void fix_phase(Eigen::Ref<CVector> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-8 * scale) {
      v *= std::conj(v(i)) / mag;
      return;
    }
  }
}

OneBodySummary assemble(CMatrix rho_sp, CMatrix kappa) {
  const Eigen::Index n = rho_sp.rows();
  OneBodySummary s;
  s.symmetrization_error = std::max(max_abs(rho_sp - rho_sp.adjoint()),
                                    max_abs(kappa + kappa.transpose()));
  s.rho_sp = hermitian_part(rho_sp);
  s.kappa = 0.5 * (kappa - kappa.transpose());
  s.rho_qsp.resize(2 * n, 2 * n);
  s.rho_qsp << s.rho_sp, s.kappa, -s.kappa.conjugate(),
      CMatrix::Identity(n, n) - s.rho_sp.conjugate();
  s.sp_eigs = eigenvalues_descending(s.rho_sp);
  const RVector all = eigenvalues_descending(s.rho_qsp);
  // Pair partners sit symmetrically about 1/2 in the sorted spectrum.
  s.qsp_eigs.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) s.qsp_eigs(k) = 0.5 * (all(k) + 1.0 - all(2 * n - 1 - k));
  return s;
}

}  // namespace

OneBodySummary one_body_summary(const CMatrix& rho, const FockSpace& space) {
  require(rho.rows() == space.dim() && rho.cols() == space.dim(),
          "state dimension does not match the Fock space");
  if (space.is_full()) {
    require(max_abs(commutator(rho, parity_operator(space))) <= 1e-10,
            "state does not commute with number parity");
  }
  const int n = space.modes();
  const CMatrix full = space.embed(rho);
  const auto c = annihilators(n);
  std::vector<CMatrix> c_rho;
  c_rho.reserve(n);
  for (int i = 0; i < n; ++i) c_rho.push_back(c[i] * full);
  CMatrix rho_sp(n, n);
  CMatrix kappa(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // <c_j^dag c_i> = Tr(c_i rho c_j^dag);  <c_j c_i> = Tr(c_i rho c_j).
      rho_sp(i, j) = (c_rho[i].array() * c[j].conjugate().array()).sum();
      kappa(i, j) = (c_rho[i].array() * c[j].transpose().array()).sum();
    }
  }
  return assemble(std::move(rho_sp), std::move(kappa));
}

OneBodySummary one_body_summary(const CVector& psi, const FockSpace& space) {
  require(psi.size() == space.dim(), "state dimension does not match the Fock space");
  const int n = space.modes();
  const CVector full = space.embed(psi);
  const auto c = annihilators(n);
  std::vector<CVector> lowered;
  std::vector<CVector> raised;
  for (int i = 0; i < n; ++i) {
    lowered.push_back(c[i] * full);
    raised.push_back(c[i].adjoint() * full);
  }
  CMatrix rho_sp(n, n);
  CMatrix kappa(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      rho_sp(i, j) = lowered[j].dot(lowered[i]);
      kappa(i, j) = raised[j].dot(lowered[i]);
    }
  }
  return assemble(std::move(rho_sp), std::move(kappa));
}

CMatrix transform_qsp(const CMatrix& rho_qsp, const BogoliubovTransform& w) {
  const CMatrix m = w.matrix();
  return m.adjoint() * rho_qsp * m;
}

QspDiagonalization diagonalize_qsp(const OneBodySummary& s) {
  const int n = static_cast<int>(s.rho_sp.rows());
  const CMatrix omega = majorana_map(n);
  // rho_qsp = Omega^dag (1/2 - i M / 2) Omega with M real antisymmetric.
  const CMatrix g = omega * s.rho_qsp * omega.adjoint();
  RMatrix m = (2.0 * kI * (g - 0.5 * CMatrix::Identity(2 * n, 2 * n))).real();
  m = 0.5 * (m - m.transpose());

  const HermitianEigen eig = eigh(kI * m.cast<Complex>());
  RMatrix o(2 * n, 2 * n);
  Eigen::Index col = 0;
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    const double theta = eig.values(i);
    if (theta > kKernelTol) {
      const CVector v = eig.vectors.col(i);
      o.col(col++) = std::sqrt(2.0) * v.real();
      o.col(col++) = std::sqrt(2.0) * v.imag();
    } else if (theta >= -kKernelTol) {
      kernel.push_back(i);
    }
  }
  if (!kernel.empty()) {
    // The kernel of M is a real subspace; recover a real orthonormal basis from
    // the (complex) eigenvectors through its projector.
    CMatrix vk(2 * n, static_cast<Eigen::Index>(kernel.size()));
    for (std::size_t j = 0; j < kernel.size(); ++j) vk.col(j) = eig.vectors.col(kernel[j]);
    const RMatrix projector = (vk * vk.adjoint()).real();
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(0.5 * (projector + projector.transpose()));
    for (Eigen::Index j = 0; j < 2 * n; ++j)
      if (solver.eigenvalues()(j) > 0.5) o.col(col++) = solver.eigenvectors().col(j);
  }
  require(col == 2 * n, "rho_qsp spectrum is not paired about 1/2");

  Eigen::JacobiSVD<RMatrix> svd(o, Eigen::ComputeFullU | Eigen::ComputeFullV);
  o = svd.matrixU() * svd.matrixV().transpose();

  QspDiagonalization out{from_majorana_rotation(o), RVector(n)};
  const CMatrix rotated = transform_qsp(s.rho_qsp, out.W);
  for (int k = 0; k < n; ++k) out.f(k) = rotated(k, k).real();
  return out;
}

BogoliubovTransform diagonalize_sp(const OneBodySummary& s) {
  HermitianEigen eig = eigh(s.rho_sp);
  for (Eigen::Index k = 0; k < eig.vectors.cols(); ++k) fix_phase(eig.vectors.col(k));
  return {eig.vectors, CMatrix::Zero(s.rho_sp.rows(), s.rho_sp.cols())};
}

double occupation_entropy(const RVector& occupations, const EntropyFunctional& f) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < occupations.size(); ++k) {
    const double p = std::clamp(occupations(k), 0.0, 1.0);
    const double pair[2] = {p, 1.0 - p};
    total += entropy_of_spectrum(std::span<const double>(pair, 2), f);
  }
  return total;
}

namespace {

void require_pure(const CMatrix& rho) {
  const double purity = (rho * rho).trace().real();
  require(std::abs(purity - 1.0) <= 1e-10, "entanglement entropy requires a pure state");
}

}  // namespace

double sp_entanglement_entropy(const CMatrix& rho, const FockSpace& space,
                               const EntropyFunctional& f) {
  require_pure(rho);
  return occupation_entropy(one_body_summary(rho, space).sp_eigs, f);
}

double qsp_entanglement_entropy(const CMatrix& rho, const FockSpace& space,
                                const EntropyFunctional& f) {
  require_pure(rho);
  return occupation_entropy(one_body_summary(rho, space).qsp_eigs, f);
}

void OddParityN4State::validate() const {
  require(alpha.size() == 4 && beta.size() == 4, "alpha and beta must be 4-vectors");
  require(std::abs(alpha.squaredNorm() + beta.squaredNorm() - 1.0) <= 1e-8,
          "|alpha|^2 + |beta|^2 must equal 1");
}

CVector OddParityN4State::fock_state() const {
  validate();
  const auto c = annihilators(4);
  CVector vacuum = CVector::Zero(16);
  vacuum(0) = 1.0;
  const CVector filled = c[0].adjoint() * (c[1].adjoint() * (c[2].adjoint() * (c[3].adjoint() * vacuum)));
  CVector psi = CVector::Zero(16);
  for (int i = 0; i < 4; ++i) {
    psi += alpha(i) * (c[i].adjoint() * vacuum);
    psi += std::conj(beta(i)) * (c[i] * filled);
  }
  return psi;
}

double fermionic_concurrence_pure(const OddParityN4State& s) {
  s.validate();
  return std::min(1.0, 2.0 * std::abs(s.beta.dot(s.alpha)));
}

std::pair<double, double> concurrence_occupations(double concurrence) {
  const double root = std::sqrt(std::max(0.0, 1.0 - concurrence * concurrence));
  return {0.5 * (1.0 + root), 0.5 * (1.0 - root)};
}

void TwoFermionState::validate() const {
  require(M.rows() == M.cols() && M.rows() >= 2, "M must be square with n >= 2");
  require(max_abs(M + M.transpose()) <= 1e-10, "M is not antisymmetric");
  require(std::abs(0.5 * (M * M.adjoint()).trace().real() - 1.0) <= 1e-8,
          "Tr(M M^dag) / 2 must equal 1");
}

CVector TwoFermionState::fock_state() const {
  validate();
  const int n = modes();
  const auto c = annihilators(n);
  CVector vacuum = CVector::Zero(Eigen::Index{1} << n);
  vacuum(0) = 1.0;
  CVector psi = CVector::Zero(vacuum.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (M(i, j) != 0.0) psi += 0.5 * M(i, j) * (c[i].adjoint() * (c[j].adjoint() * vacuum));
  return psi;
}

SlaterDecomposition slater_decompose_two_fermion(const TwoFermionState& s) {
  s.validate();
  const Eigen::Index n = s.M.rows();
  const CMatrix& M = s.M;
  const CMatrix rho = M * M.adjoint();
  const HermitianEigen eig = eigh(rho);

  CMatrix U(n, 0);
  std::vector<double> lambdas;
  auto append = [&U](const CVector& v) {
    U.conservativeResize(Eigen::NoChange, U.cols() + 1);
    U.col(U.cols() - 1) = v;
  };
  auto residual = [&U](const CVector& v) -> CVector {
    return U.cols() == 0 ? v : CVector(v - U * (U.adjoint() * v));
  };

  constexpr double kZero = 1e-12;
  Eigen::Index i = 0;
  while (i < n && eig.values(i) > kZero) {
    // Cluster of (numerically) equal eigenvalues; each holds whole pairs.
    Eigen::Index end = i + 1;
    while (end < n && std::abs(eig.values(end) - eig.values(i)) <= 1e-8 * std::max(1.0, eig.values(i)))
      ++end;
    const Eigen::Index start_cols = U.cols();
    while (U.cols() - start_cols + 1 < end - i) {
      CVector best;
      double best_norm = -1.0;
      for (Eigen::Index j = i; j < end; ++j) {
        CVector r = residual(eig.vectors.col(j));
        if (r.norm() > best_norm) {
          best_norm = r.norm();
          best = std::move(r);
        }
      }
      CVector v = best / best_norm;
      fix_phase(v);
      const double lambda = (v.adjoint() * rho * v)(0).real();
      CVector partner = M * v.conjugate() / std::sqrt(lambda);
      partner = residual(partner);
      partner.normalize();
      // Column order (partner, v) puts +sqrt(lambda) above the block diagonal.
      append(partner);
      append(v);
      lambdas.push_back(lambda);
    }
    i = end;
  }
  // Zero modes: complete with identity columns, orthogonalized.
  for (Eigen::Index e = 0; e < n && U.cols() < n; ++e) {
    CVector r = residual(CVector::Unit(n, e));
    if (r.norm() > 1e-6) append(r / r.norm());
  }

  SlaterDecomposition out;
  out.U = U;
  out.lambda = Eigen::Map<RVector>(lambdas.data(), static_cast<Eigen::Index>(lambdas.size()));
  out.D = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double root = std::sqrt(lambdas[k]);
    out.D(2 * k, 2 * k + 1) = root;
    out.D(2 * k + 1, 2 * k) = -root;
  }
  out.reconstruction_error = max_abs(out.U * out.D * out.U.transpose() - M);
  return out;
}

CVector slater_normal_form_state(const SlaterDecomposition& dec) {
  const int n = static_cast<int>(dec.U.rows());
  const auto c = annihilators(n);
  std::vector<CMatrix> created;
  for (int k = 0; k < n; ++k) {
    CMatrix a_dag = CMatrix::Zero(c[0].rows(), c[0].cols());
    for (int j = 0; j < n; ++j) a_dag += dec.U(j, k) * c[j].adjoint();
    created.push_back(std::move(a_dag));
  }
  CVector vacuum = CVector::Zero(Eigen::Index{1} << n);
  vacuum(0) = 1.0;
  CVector psi = CVector::Zero(vacuum.size());
  for (Eigen::Index k = 0; k < dec.lambda.size(); ++k)
    psi += std::sqrt(dec.lambda(k)) * (created[2 * k] * (created[2 * k + 1] * vacuum));
  return psi;
}

}  // namespace fermiloss
