#include "fermiloss/suites.hpp"

#include <cmath>
#include <limits>

#include "fermiloss/analytic.hpp"
#include "fermiloss/linalg.hpp"
#include "fermiloss/measurement.hpp"
#include "fermiloss/onebody.hpp"
#include "fermiloss/optimizer.hpp"
#include "fermiloss/parallel.hpp"
#include "fermiloss/random.hpp"

namespace fermiloss {

namespace {

int pick(int value, int fallback) { return value > 0 ? value : fallback; }

// Collects per-trial deviations and keeps the worst one.
template <typename Fn>
std::vector<double> run_trials(const SuiteOptions& o, int trials, Fn&& fn) {
  std::vector<double> out(trials);
  parallel_for(trials, o.workers, [&](std::size_t t) {
    Rng rng = trial_rng(o.seed, t);
    out[t] = fn(t, rng);
  });
  return out;
}

double max_of(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  return m;
}

double min_of(const std::vector<double>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v) m = std::min(m, x);
  return m;
}

EntropyFunctional random_functional(Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> q(0.3, 3.0);
  switch (kind(rng)) {
    case 0: return EntropyFunctional::von_neumann();
    case 1: return EntropyFunctional::quadratic();
    case 2: {
      double v = q(rng);
      return EntropyFunctional::tsallis(std::abs(v - 1.0) < 1e-3 ? 2.0 : v);
    }
    default: {
      double v = q(rng);
      return EntropyFunctional::renyi(std::abs(v - 1.0) < 1e-3 ? 2.0 : v);
    }
  }
}

BogoliubovTransform random_bogoliubov(int n, Rng& rng) {
  return from_majorana_rotation(haar_orthogonal(2 * n, rng));
}

FockSpace random_space(int n, Rng& rng) {
  std::uniform_int_distribution<int> s(0, 2);
  return FockSpace::build(n, static_cast<Sector>(s(rng)));
}

SuiteResult anticommutators(const SuiteOptions& o) {
  const int n = pick(o.n, 4);
  const auto dev = run_trials(o, pick(o.trials, 50), [&](std::size_t, Rng& rng) {
    const auto a = quasiparticle_annihilators(n, random_bogoliubov(n, rng));
    const auto d = a[0].rows();
    const CMatrix id = CMatrix::Identity(d, d);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        worst = std::max(worst, max_abs(anticommutator(a[i], a[j].adjoint()) - (i == j ? id : CMatrix::Zero(d, d))));
        worst = std::max(worst, max_abs(anticommutator(a[i], a[j])));
      }
    return worst;
  });
  const double worst = max_of(dev);
  return {"anticommutators", worst <= 1e-12, Json{{"n", n}, {"trials", dev.size()}, {"max_deviation", worst}, {"tolerance", 1e-12}}};
}

SuiteResult majorization(const SuiteOptions& o) {
  const int n = pick(o.n, 4);
  const auto dev = run_trials(o, pick(o.trials, 1000), [&](std::size_t, Rng& rng) {
    const FockSpace space = random_space(n, rng);
    const CMatrix rho = random_density_matrix(space, rng);
    const auto w = random_bogoliubov(n, rng);
    const int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const auto f = random_functional(rng);
    return measure_unread(rho, space, w, k, f).loss;
  });
  const double worst = min_of(dev);
  return {"majorization", worst >= -1e-12, Json{{"n", n}, {"trials", dev.size()}, {"min_loss", worst}, {"tolerance", -1e-12}}};
}

SuiteResult discord(const SuiteOptions& o) {
  const int n = pick(o.n, 3);
  const auto dev = run_trials(o, pick(o.trials, 1000), [&](std::size_t, Rng& rng) {
    const FockSpace space = random_space(n, rng);
    const CMatrix rho = random_density_matrix(space, rng);
    const int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const CMatrix pi = mode_projectors(space, random_bogoliubov(n, rng))[k];
    return discord_identity_check(rho, pi).deviation();
  });
  const double worst = max_of(dev);
  return {"discord", worst <= 1e-10, Json{{"n", n}, {"trials", dev.size()}, {"max_deviation", worst}, {"tolerance", 1e-10}}};
}

SuiteResult ancilla(const SuiteOptions& o) {
  const int n = pick(o.n, 3);
  const auto vn = EntropyFunctional::von_neumann();
  const auto dev = run_trials(o, pick(o.trials, 1000), [&](std::size_t, Rng& rng) {
    const FockSpace space = random_space(n, rng);
    const CMatrix rho = random_density_matrix(space, rng);
    const int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const CMatrix pi = mode_projectors(space, random_bogoliubov(n, rng))[k];
    const auto ext = ancilla_extension(rho, pi);
    const auto post = measure_unread(rho, pi, CMatrix::Identity(rho.rows(), rho.cols()) - pi, vn);
    return std::max({max_abs(ext.reduced - post.rho_post),
                     std::abs(ext.entropy_joint - entropy_of_state(rho, vn)),
                     std::abs(ext.entropy_system - ext.entropy_joint - post.loss)});
  });
  const double worst = max_of(dev);
  return {"ancilla", worst <= 1e-10, Json{{"n", n}, {"trials", dev.size()}, {"max_deviation", worst}, {"tolerance", 1e-10}}};
}

SuiteResult theorems(const SuiteOptions& o) {
  const int n = pick(o.n, 2);
  OptimizerConfig cfg;
  cfg.workers = o.workers;
  const auto r = theorem_harness(n, pick(o.trials, 200), o.seed, cfg);
  bool pass = r.max_qsp_value <= 1e-6;
  Json s{{"n", n}, {"trials", r.trials}, {"max_qsp_value", r.max_qsp_value},
         {"max_eigenbasis_value", r.max_eigenbasis_value}, {"tolerance", 1e-6}};
  if (n == 2) {
    pass = pass && (r.nonconserving == 0 || r.min_sp_value_nonconserving > 10.0 * cfg.tolerance);
    s["nonconserving"] = r.nonconserving;
    s["min_sp_value_nonconserving"] = r.min_sp_value_nonconserving;
    s["factorizing"] = r.factorizing;
  } else {
    s["mixed_parity_counterexample"] = r.counterexample_value;
  }
  return {"theorems", pass, s};
}

SuiteResult gradient(const SuiteOptions& o) {
  const int n = pick(o.n, 3);
  const double eps = 1e-5;
  const auto dev = run_trials(o, pick(o.trials, 100), [&](std::size_t, Rng& rng) {
    const FockSpace space = random_space(n, rng);
    const CMatrix rho = random_density_matrix(space, rng);
    const auto w = random_bogoliubov(n, rng);
    const auto f = random_functional(rng);
    const auto tf = optimization_functional(f);
    const OneBodyGenerator dir{random_hermitian(n, rng), random_antisymmetric(n, rng)};
    const double analytic = directional_derivative(loss_gradient(rho, space, w, tf), dir);
    const double fd = (basis_info_loss(rho, space, retract(w, dir, eps), tf) -
                       basis_info_loss(rho, space, retract(w, dir, -eps), tf)) / (2.0 * eps);
    return std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-8);
  });
  const double worst = max_of(dev);
  return {"gradient", worst <= 1e-5, Json{{"n", n}, {"trials", dev.size()}, {"epsilon", eps}, {"max_relative_error", worst}, {"tolerance", 1e-5}}};
}

SuiteResult oracle(const SuiteOptions& o) {
  const int n = pick(o.n, 2);
  const std::size_t samples = o.samples > 0 ? o.samples : 100000;
  const auto vn = EntropyFunctional::von_neumann();
  const auto dev = run_trials(o, pick(o.trials, 50), [&](std::size_t t, Rng& rng) {
    const FockSpace space = FockSpace::build(n);
    const CMatrix rho = random_density_matrix(space, rng);
    OptimizerConfig cfg;
    cfg.scope = t % 2 == 0 ? Scope::Sp : Scope::Qsp;
    cfg.seed = o.seed + t;
    const double opt = minimize(rho, space, vn, cfg).value;
    const double bf = brute_force_min(rho, space, vn, cfg.scope, samples, o.seed ^ (t + 1));
    return opt - bf;  // positive when brute force undercuts the optimizer
  });
  const double worst = max_of(dev);
  return {"oracle", worst <= 1e-6, Json{{"n", n}, {"trials", dev.size()}, {"samples", samples}, {"max_undercut", worst}, {"tolerance", 1e-6}}};
}

SuiteResult invariance(const SuiteOptions& o) {
  const int n = pick(o.n, 4);
  const int rotations = 20;
  const auto vn = EntropyFunctional::von_neumann();
  const auto dev = run_trials(o, pick(o.trials, 20), [&](std::size_t t, Rng& rng) {
    const FockSpace space = FockSpace::build(n);
    const CMatrix rho = random_density_matrix(space, rng);
    double worst = 0.0;
    for (Scope scope : {Scope::Sp, Scope::Qsp}) {
      OptimizerConfig cfg;
      cfg.scope = scope;
      cfg.seed = o.seed + t;
      const double base = minimize(rho, space, vn, cfg).value;
      for (int r = 0; r < rotations; ++r) {
        OneBodyGenerator g{random_hermitian(n, rng),
                           scope == Scope::Qsp ? random_antisymmetric(n, rng) : CMatrix::Zero(n, n)};
        const double moved = minimize(rotate_state(rho, space, g), space, vn, cfg).value;
        worst = std::max(worst, std::abs(moved - base));
      }
    }
    return worst;
  });
  const double worst = max_of(dev);
  return {"invariance", worst <= 1e-6, Json{{"n", n}, {"trials", dev.size()}, {"rotations", rotations}, {"max_deviation", worst}, {"tolerance", 1e-6}}};
}

SuiteResult twofermion(const SuiteOptions& o) {
  const int n = pick(o.n, 6);
  const auto vn = EntropyFunctional::von_neumann();
  struct Row { double recon, spectrum, loss; };
  std::vector<Row> rows(pick(o.trials, 50));
  parallel_for(rows.size(), o.workers, [&](std::size_t t) {
    Rng rng = trial_rng(o.seed, t);
    CMatrix m = random_antisymmetric(n, rng);
    m /= std::sqrt(0.5 * (m * m.adjoint()).trace().real());
    const TwoFermionState s{m};
    const auto dec = slater_decompose_two_fermion(s);
    RVector eig = eigenvalues_descending(CMatrix(m * m.adjoint()));
    double spectrum = 0.0;
    for (Eigen::Index k = 0; k < dec.lambda.size(); ++k)
      spectrum = std::max({spectrum, std::abs(dec.lambda(k) - eig(2 * k)), std::abs(dec.lambda(k) - eig(2 * k + 1))});
    const double w = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    const std::int64_t d = number_subspace_dimension(n, 2);
    const FockSpace space = FockSpace::build(n, Sector::Even);
    const CMatrix rho = mixture_state(space.restrict(s.fock_state()), space, w, d);
    OptimizerConfig cfg;
    cfg.seed = o.seed + t;
    const double opt = minimize(rho, space, vn, cfg).value;
    rows[t] = {dec.reconstruction_error, spectrum,
               std::abs(opt - two_fermion_mixture_info_loss(dec.lambda, w, d, vn))};
  });
  double recon = 0.0, spectrum = 0.0, loss = 0.0;
  for (const auto& r : rows) {
    recon = std::max(recon, r.recon);
    spectrum = std::max(spectrum, r.spectrum);
    loss = std::max(loss, r.loss);
  }
  const bool pass = recon <= 1e-10 && spectrum <= 1e-10 && loss <= 1e-6;
  return {"twofermion", pass, Json{{"n", n}, {"trials", rows.size()}, {"max_reconstruction_error", recon},
                                   {"max_spectrum_deviation", spectrum}, {"max_loss_deviation", loss}}};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"anticommutators", "majorization", "discord",
                                              "ancilla", "theorems", "gradient",
                                              "oracle", "invariance", "twofermion"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "anticommutators") return anticommutators(options);
  if (name == "majorization") return majorization(options);
  if (name == "discord") return discord(options);
  if (name == "ancilla") return ancilla(options);
  if (name == "theorems") return theorems(options);
  if (name == "gradient") return gradient(options);
  if (name == "oracle") return oracle(options);
  if (name == "invariance") return invariance(options);
  if (name == "twofermion") return twofermion(options);
  throw ValidationError("unknown suite '" + name + "'");
}

CMatrix rotate_state(const CMatrix& rho, const FockSpace& space, const OneBodyGenerator& g) {
  const CMatrix h = one_body_hamiltonian_matrix(space, g.h, g.delta);
  const CMatrix u = exp_i_hermitian(h, -1.0);
  return hermitian_part(u * rho * u.adjoint());
}

}  // namespace fermiloss
