#include "fermiloss/measurement.hpp"

#include "fermiloss/linalg.hpp"

namespace fermiloss {

std::vector<CMatrix> mode_projectors(const FockSpace& space, const BogoliubovTransform& w) {
  const auto a = quasiparticle_annihilators(space.modes(), w);
  std::vector<CMatrix> out;
  out.reserve(a.size());
  for (const auto& ak : a) out.push_back(hermitian_part(space.restrict(CMatrix(ak.adjoint() * ak))));
  return out;
}

MeasurementReport measure_unread(const CMatrix& rho, const CMatrix& occupied, const CMatrix& empty,
                                 const EntropyFunctional& f, int mode) {
  const Eigen::Index d = rho.rows();
  require(occupied.rows() == d && empty.rows() == d, "projector dimension mismatch");
  require(max_abs(occupied + empty - CMatrix::Identity(d, d)) <= 1e-10,
          "projector pair does not resolve the identity");
  require(max_abs(occupied * occupied - occupied) <= 1e-10, "occupied projector is not idempotent");

  MeasurementReport r;
  r.mode = mode;
  const CMatrix occ_branch = occupied * rho * occupied;
  const CMatrix empty_branch = empty * rho * empty;
  r.p_occupied = std::clamp(occ_branch.trace().real(), 0.0, 1.0);
  r.p_empty = 1.0 - r.p_occupied;
  r.rho_post = hermitian_part(occ_branch + empty_branch);

  const double pair[2] = {r.p_occupied, r.p_empty};
  r.S_mode = entropy_of_spectrum(std::span<const double>(pair, 2), f);
  if (r.p_occupied > kBranchFloor)
    r.S_conditional += r.p_occupied * entropy_of_state(hermitian_part(occ_branch) / r.p_occupied, f);
  if (r.p_empty > kBranchFloor)
    r.S_conditional += r.p_empty * entropy_of_state(hermitian_part(empty_branch) / r.p_empty, f);
  r.loss = entropy_of_state(r.rho_post, f) - entropy_of_state(rho, f);
  return r;
}

MeasurementReport measure_unread(const CMatrix& rho, const FockSpace& space,
                                 const BogoliubovTransform& w, int mode,
                                 const EntropyFunctional& f) {
  require(mode >= 0 && mode < space.modes(), "mode index out of range");
  const CMatrix occupied = mode_projectors(space, w)[mode];
  const CMatrix empty = CMatrix::Identity(space.dim(), space.dim()) - occupied;
  return measure_unread(rho, occupied, empty, f, mode);
}

std::vector<MeasurementReport> measure_basis(const CMatrix& rho, const FockSpace& space,
                                             const BogoliubovTransform& w,
                                             const EntropyFunctional& f) {
  const auto projectors = mode_projectors(space, w);
  const CMatrix identity = CMatrix::Identity(space.dim(), space.dim());
  std::vector<MeasurementReport> reports;
  reports.reserve(projectors.size());
  for (std::size_t k = 0; k < projectors.size(); ++k)
    reports.push_back(
        measure_unread(rho, projectors[k], identity - projectors[k], f, static_cast<int>(k)));
  return reports;
}

double basis_info_loss(const CMatrix& rho, const FockSpace& space, const BogoliubovTransform& w,
                       const EntropyFunctional& f) {
  require(rho.rows() == space.dim(), "state dimension does not match the Fock space");
  const double base = entropy_of_state(rho, f);
  double total = 0.0;
  for (const auto& pi : mode_projectors(space, w)) {
    const CMatrix pibar = CMatrix::Identity(space.dim(), space.dim()) - pi;
    const CMatrix post = hermitian_part(pi * rho * pi + pibar * rho * pibar);
    total += entropy_of_state(post, f) - base;
  }
  return total;
}

DiscordIdentity discord_identity_check(const CMatrix& rho, const CMatrix& occupied) {
  const auto f = EntropyFunctional::von_neumann();
  const CMatrix empty = CMatrix::Identity(rho.rows(), rho.cols()) - occupied;
  const auto r = measure_unread(rho, occupied, empty, f);
  const double s_rho = entropy_of_state(rho, f);
  return {r.loss, r.S_conditional - (s_rho - r.S_mode)};
}

AncillaExtension ancilla_extension(const CMatrix& rho, const CMatrix& occupied) {
  const Eigen::Index d = rho.rows();
  const CMatrix empty = CMatrix::Identity(d, d) - occupied;
  // exp(-i pi/2 sigma_y) = [[0, -1], [1, 0]] sends the empty branch to |1>.
  Eigen::Matrix2cd flip;
  flip << 0.0, -1.0, 1.0, 0.0;
  CMatrix u = CMatrix::Zero(2 * d, 2 * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          u(2 * i + a, 2 * j + b) = occupied(i, j) * (a == b ? 1.0 : 0.0) + empty(i, j) * flip(a, b);
  CMatrix product = CMatrix::Zero(2 * d, 2 * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) product(2 * i, 2 * j) = rho(i, j);

  AncillaExtension out;
  out.rho_fc = hermitian_part(u * product * u.adjoint());
  out.reduced = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      out.reduced(i, j) = out.rho_fc(2 * i, 2 * j) + out.rho_fc(2 * i + 1, 2 * j + 1);
  const auto f = EntropyFunctional::von_neumann();
  out.entropy_system = entropy_of_state(out.reduced, f);
  out.entropy_joint = entropy_of_state(out.rho_fc, f);
  return out;
}

}  // namespace fermiloss
