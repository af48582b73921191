#include "fermiloss/bogoliubov.hpp"

#include <bit>
#include <cmath>

#include "fermiloss/linalg.hpp"

namespace fermiloss {

BogoliubovTransform BogoliubovTransform::identity(int n) {
  return {CMatrix::Identity(n, n), CMatrix::Zero(n, n)};
}

BogoliubovTransform BogoliubovTransform::from_unitary(const CMatrix& u) {
  require(u.rows() == u.cols(), "single-particle rotation must be square");
  require(max_abs(u * u.adjoint() - CMatrix::Identity(u.rows(), u.rows())) <= 1e-10,
          "single-particle rotation is not unitary");
  return {u, CMatrix::Zero(u.rows(), u.cols())};
}

BogoliubovTransform BogoliubovTransform::from_matrix(const CMatrix& w, double tol) {
  require(w.rows() == w.cols() && w.rows() % 2 == 0, "Bogoliubov matrix must be 2n x 2n");
  const Eigen::Index n = w.rows() / 2;
  BogoliubovTransform out{w.topLeftCorner(n, n), w.topRightCorner(n, n)};
  const double structure = std::max(max_abs(w.bottomLeftCorner(n, n) - out.V.conjugate()),
                                    max_abs(w.bottomRightCorner(n, n) - out.U.conjugate()));
  require(structure <= tol, "matrix lacks the Bogoliubov block structure");
  require(out.unitarity_error() <= tol, "Bogoliubov matrix is not unitary");
  return out;
}

CMatrix BogoliubovTransform::matrix() const {
  const Eigen::Index n = U.rows();
  CMatrix w(2 * n, 2 * n);
  w << U, V, V.conjugate(), U.conjugate();
  return w;
}

double BogoliubovTransform::unitarity_error() const {
  const Eigen::Index n = U.rows();
  const double norm_err = max_abs(U * U.adjoint() + V * V.adjoint() - CMatrix::Identity(n, n));
  const double pair_err = max_abs(U * V.transpose() + V * U.transpose());
  return std::max(norm_err, pair_err);
}

bool BogoliubovTransform::is_particle_conserving(double tol) const { return max_abs(V) <= tol; }

OneBodyGenerator OneBodyGenerator::zero(int n) {
  return {CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
}

CMatrix OneBodyGenerator::matrix() const {
  const Eigen::Index n = h.rows();
  CMatrix m(2 * n, 2 * n);
  m << h, delta, -delta.conjugate(), -h.conjugate();
  return m;
}

void OneBodyGenerator::validate() const {
  require(h.rows() == h.cols() && delta.rows() == h.rows() && delta.cols() == h.cols(),
          "generator blocks must be n x n");
  require(max_abs(h - h.adjoint()) <= 1e-12, "h is not Hermitian");
  require(max_abs(delta + delta.transpose()) <= 1e-12, "Delta is not antisymmetric");
}

namespace {

BogoliubovTransform split(const CMatrix& w) {
  const Eigen::Index n = w.rows() / 2;
  return {w.topLeftCorner(n, n), w.topRightCorner(n, n)};
}

}  // namespace

BogoliubovTransform from_generator(const OneBodyGenerator& g, double t) {
  g.validate();
  return split(exp_i_hermitian(g.matrix(), t));
}

BogoliubovTransform compose(const BogoliubovTransform& w1, const BogoliubovTransform& w2) {
  require(w1.modes() == w2.modes(), "cannot compose transforms on different mode counts");
  return split(w1.matrix() * w2.matrix());
}

BogoliubovTransform inverse(const BogoliubovTransform& w) { return split(w.matrix().adjoint()); }

CMatrix majorana_map(int n) {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix omega = CMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    omega(2 * j, j) = s;
    omega(2 * j, n + j) = s;
    omega(2 * j + 1, j) = Complex(0.0, -s);
    omega(2 * j + 1, n + j) = Complex(0.0, s);
  }
  return omega;
}

BogoliubovTransform from_majorana_rotation(const RMatrix& o) {
  require(o.rows() == o.cols() && o.rows() % 2 == 0, "Majorana rotation must be 2n x 2n");
  const CMatrix omega = majorana_map(static_cast<int>(o.rows() / 2));
  return split(omega.adjoint() * o.cast<Complex>() * omega);
}

RMatrix to_majorana_rotation(const BogoliubovTransform& w) {
  const CMatrix omega = majorana_map(w.modes());
  return (omega * w.matrix() * omega.adjoint()).real();
}

std::vector<CMatrix> quasiparticle_annihilators(int n, const BogoliubovTransform& w) {
  require(w.modes() == n, "transform does not match the mode count");
  const std::uint32_t d = std::uint32_t{1} << n;
  std::vector<CMatrix> a(n, CMatrix::Zero(d, d));
  for (std::uint32_t b = 0; b < d; ++b) {
    for (int j = 0; j < n; ++j) {
      const std::uint32_t bit = std::uint32_t{1} << j;
      const double sign = (std::popcount(b & (bit - 1)) % 2 == 0) ? 1.0 : -1.0;
      const std::uint32_t target = b ^ bit;
      // c_j lowers an occupied mode; c_j^dag raises an empty one.
      if (b & bit) {
        for (int k = 0; k < n; ++k) a[k](target, b) += sign * std::conj(w.U(j, k));
      } else {
        for (int k = 0; k < n; ++k) a[k](target, b) += sign * w.V(j, k);
      }
    }
  }
  return a;
}

ModeOperator quasiparticle_mode(const FockSpace& space, const BogoliubovTransform& w, int k) {
  require(k >= 0 && k < space.modes(), "mode index out of range");
  auto ops = quasiparticle_annihilators(space.modes(), w);
  return {std::move(ops[k]), OperatorKind::Annihilation, k};
}

}  // namespace fermiloss
