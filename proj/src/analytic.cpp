#include "fermiloss/analytic.hpp"

#include <bit>
#include <cmath>

#include "fermiloss/linalg.hpp"
#include "fermiloss/measurement.hpp"
#include "fermiloss/onebody.hpp"
#include "fermiloss/parallel.hpp"
#include "fermiloss/random.hpp"

namespace fermiloss {

void MixtureSpec::validate() const {
  require(w >= 0.0 && w <= 1.0, "mixing weight w must lie in [0, 1]");
  require(d >= 2, "ensemble dimension d must be >= 2");
  for (Eigen::Index k = 0; k < occupations.size(); ++k)
    require(occupations(k) >= 0.0 && occupations(k) <= 1.0, "occupations must lie in [0, 1]");
}

namespace {

// Renyi entropy of a spectrum given as (value, multiplicity) pairs.
double renyi_weighted(const std::vector<std::pair<double, double>>& spectrum, double q) {
  double sum = 0.0;
  for (const auto& [p, m] : spectrum)
    if (p > 0.0 && m > 0.0) sum += m * std::pow(p, q);
  return std::log2(sum) / (1.0 - q);
}

double mode_term(double q, double qbar, double top, double b, const EntropyFunctional& f) {
  return f(q) + f(qbar) - f(top) - f(b);
}

}  // namespace

double mixture_info_loss(const MixtureSpec& m, const EntropyFunctional& f) {
  m.validate();
  const double b = (1.0 - m.w) / static_cast<double>(m.d);
  const double top = m.w + b;
  double total = 0.0;
  for (Eigen::Index k = 0; k < m.occupations.size(); ++k) {
    const double p = m.occupations(k);
    const double q = m.w * p + b;
    const double qbar = m.w * (1.0 - p) + b;
    if (f.is_trace_form()) {
      total += mode_term(q, qbar, top, b, f);
    } else {
      const auto dd = static_cast<double>(m.d);
      total += renyi_weighted({{q, 1.0}, {qbar, 1.0}, {b, dd - 2.0}}, f.q) -
               renyi_weighted({{top, 1.0}, {b, dd - 1.0}}, f.q);
    }
  }
  return total;
}

double quadratic_increase(const MixtureSpec& m, const EntropyFunctional& f) {
  m.validate();
  require(f.is_trace_form(), "quadratic_increase requires a trace-form entropy");
  const double curvature = std::abs(functional_second_derivative(f, 1.0 / static_cast<double>(m.d)));
  double spread = 0.0;
  for (Eigen::Index k = 0; k < m.occupations.size(); ++k)
    spread += m.occupations(k) * (1.0 - m.occupations(k));
  return m.w * m.w * curvature * spread;
}

double n4_concurrence_mixture(double w) {
  require(w >= 0.0 && w <= 1.0, "mixing weight w must lie in [0, 1]");
  return std::max((7.0 * w - 3.0) / 4.0, 0.0);
}

double n4_entanglement_of_formation(double w, const EntropyFunctional& f) {
  const double c = n4_concurrence_mixture(w);
  if (c <= 0.0) return 0.0;
  switch (f.kind) {
    case EntropyKind::VonNeumann:
      return 4.0 * binary_entropy((4.0 + std::sqrt(7.0 * (1.0 + w * (6.0 - 7.0 * w)))) / 8.0);
    case EntropyKind::Quadratic:
      return 4.0 * c * c;
    default:
      throw ValidationError("entanglement of formation is available for vn and quad only");
  }
}

double n4_information_loss(double w, const EntropyFunctional& f) {
  return mixture_info_loss({w, 8, RVector::Constant(4, 0.5)}, f);
}

double two_fermion_mixture_info_loss(const RVector& lambda, double w, std::int64_t d,
                                     const EntropyFunctional& f) {
  require(lambda.size() >= 1, "Slater spectrum must be nonempty");
  require((lambda.array() >= -1e-12).all(), "Slater spectrum entries must be nonnegative");
  require(std::abs(lambda.sum() - 1.0) <= 1e-9, "Slater spectrum must sum to 1");
  if (!f.is_trace_form()) {
    RVector occ(2 * lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) occ(2 * k) = occ(2 * k + 1) = lambda(k);
    return mixture_info_loss({w, d, occ.cwiseMax(0.0).cwiseMin(1.0)}, f);
  }
  MixtureSpec{w, d, RVector::Zero(0)}.validate();
  const double b = (1.0 - w) / static_cast<double>(d);
  double total = 0.0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const double l = std::clamp(lambda(k), 0.0, 1.0);
    total += mode_term(w * l + b, w * (1.0 - l) + b, w + b, b, f);
  }
  return 2.0 * total;
}

std::int64_t number_subspace_dimension(int n, int particles) {
  if (particles < 0 || particles > n) return 0;
  std::int64_t out = 1;
  for (int i = 1; i <= particles; ++i) out = out * (n - particles + i) / i;
  return out;
}

CMatrix mixture_state(const CVector& psi, const FockSpace& space, double w, std::int64_t d) {
  require(psi.size() == space.dim(), "state dimension does not match the Fock space");
  require(std::abs(psi.norm() - 1.0) <= 1e-8, "pure component is not normalized");
  require(w >= 0.0 && w <= 1.0, "mixing weight w must lie in [0, 1]");
  const Eigen::Index dim = space.dim();
  CMatrix q = CMatrix::Zero(dim, dim);
  if (d == 0 || d == dim) {
    q.setIdentity();
    d = dim;
  } else {
    int particles = -1;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (std::abs(psi(i)) <= 1e-12) continue;
      const int count = std::popcount(space.basis()[i]);
      require(particles < 0 || particles == count,
              "d override needs a pure component of definite particle number");
      particles = count;
    }
    require(number_subspace_dimension(space.modes(), particles) == d,
            "d override matches neither the space nor the particle-number subspace");
    for (Eigen::Index i = 0; i < dim; ++i)
      if (std::popcount(space.basis()[i]) == particles) q(i, i) = 1.0;
  }
  return w * pure_density(psi) + ((1.0 - w) / static_cast<double>(d)) * q;
}

TheoremReport theorem_harness(int n, int trials, std::uint64_t seed, const OptimizerConfig& cfg) {
  require(n == 2 || n == 3, "theorem harness covers n = 2 and n = 3");
  require(trials >= 1, "trials must be >= 1");
  const auto vn = EntropyFunctional::von_neumann();
  TheoremReport report;
  report.n = n;
  report.trials = trials;

  struct Trial {
    double qsp = 0.0, eigenbasis = 0.0, sp = 0.0;
    bool nonconserving = false, factorizing = false;
  };
  std::vector<Trial> results(trials);
  OptimizerConfig inner = cfg;
  inner.workers = 1;
  parallel_for(trials, cfg.workers, [&](std::size_t t) {
    Rng rng = trial_rng(seed, t);
    const Sector sector = n == 2 ? Sector::Full : (t % 2 == 0 ? Sector::Odd : Sector::Even);
    const FockSpace space = FockSpace::build(n, sector);
    const CMatrix rho = random_density_matrix(space, rng);
    Trial& r = results[t];
    OptimizerConfig qcfg = inner;
    qcfg.scope = Scope::Qsp;
    qcfg.seed = seed + t;
    r.qsp = minimize(rho, space, vn, qcfg).value;
    const auto summary = one_body_summary(rho, space);
    const auto diag = diagonalize_qsp(summary);
    r.eigenbasis = basis_info_loss(rho, space, diag.W, vn);
    if (n == 2) {
      r.nonconserving = max_abs(summary.kappa) > 1e-8;
      if (r.nonconserving) {
        OptimizerConfig scfg = qcfg;
        scfg.scope = Scope::Sp;
        r.sp = minimize(rho, space, vn, scfg).value;
      }
      // <n_1 n_2> = <n_1><n_2> in the quasiparticle basis.
      const auto a = quasiparticle_annihilators(2, diag.W);
      const CMatrix n1 = a[0].adjoint() * a[0];
      const CMatrix n2 = a[1].adjoint() * a[1];
      const double joint = (rho * n1 * n2).trace().real();
      const double product = (rho * n1).trace().real() * (rho * n2).trace().real();
      r.factorizing = std::abs(joint - product) <= 1e-8;
    }
  });

  report.min_sp_value_nonconserving = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    report.max_qsp_value = std::max(report.max_qsp_value, r.qsp);
    report.max_eigenbasis_value = std::max(report.max_eigenbasis_value, r.eigenbasis);
    if (r.nonconserving) {
      ++report.nonconserving;
      report.min_sp_value_nonconserving = std::min(report.min_sp_value_nonconserving, r.sp);
    }
    if (r.factorizing) ++report.factorizing;
  }
  if (report.nonconserving == 0) report.min_sp_value_nonconserving = 0.0;

  if (n == 3) {
    // Equal mixture of the vacuum and an odd state with a three-particle
    // component: the eigenstates share no quasiparticle Slater basis.
    const FockSpace full = FockSpace::build(3);
    CVector vac = CVector::Zero(8);
    vac(0) = 1.0;
    CVector odd = CVector::Zero(8);
    odd(1) = 1.0 / std::sqrt(2.0);
    odd(7) = 1.0 / std::sqrt(2.0);
    const CMatrix rho = 0.5 * pure_density(vac) + 0.5 * pure_density(odd);
    OptimizerConfig qcfg = cfg;
    qcfg.scope = Scope::Qsp;
    qcfg.seed = seed;
    report.counterexample_value = minimize(rho, full, vn, qcfg).value;
  }
  return report;
}

}  // namespace fermiloss
