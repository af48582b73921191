// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance <path to fermiloss executable> [workers]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fermiloss/analytic.hpp"
#include "fermiloss/bogoliubov.hpp"
#include "fermiloss/linalg.hpp"
#include "fermiloss/measurement.hpp"
#include "fermiloss/onebody.hpp"
#include "fermiloss/optimizer.hpp"
#include "fermiloss/parallel.hpp"
#include "fermiloss/random.hpp"
#include "support.hpp"

using namespace fermiloss;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

int g_workers = 0;
std::string g_cli;

const auto kVn = EntropyFunctional::von_neumann();
const auto kQuad = EntropyFunctional::quadratic();

double fvn(double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); }

// Closed forms for the n = 4 maximally entangled odd-parity mixture, written
// out here rather than taken from the library.
double oracle_i_vn(double w) {
  return 4 * (2 * fvn((3 * w + 1) / 8) - fvn((7 * w + 1) / 8) - fvn((1 - w) / 8));
}
double oracle_e_vn(double w) {
  if (w <= 3.0 / 7.0) return 0.0;
  return 4 * support::h2((4 + std::sqrt(7 * (1 + w * (6 - 7 * w)))) / 8);
}

CMatrix max_entangled_mixture(double w) {
  const auto odd = FockSpace::build(4, Sector::Odd);
  OddParityN4State st{CVector::Unit(4, 0) / std::sqrt(2.0), CVector::Unit(4, 0) / std::sqrt(2.0)};
  return mixture_state(odd.restrict(st.fock_state()), odd, w, 8);
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, std::string& header) {
  std::ifstream in(path);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

// One-body contractions straight from Fock-space operator traces.
struct Contractions {
  RVector sp_eigs;
  RVector qsp_eigs;
};

Contractions direct_contractions(const CMatrix& rho_sector, const FockSpace& space) {
  const CMatrix rho = space.embed(rho_sector);
  const int n = space.modes();
  const auto c = annihilators(n);
  CMatrix g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(i, j) = (rho * c[j].adjoint() * c[i]).trace();
      g(i, n + j) = (rho * c[j] * c[i]).trace();
      g(n + i, j) = (rho * c[j].adjoint() * c[i].adjoint()).trace();
      g(n + i, n + j) = (rho * c[j] * c[i].adjoint()).trace();
    }
  Contractions out;
  out.sp_eigs = Eigen::SelfAdjointEigenSolver<CMatrix>(g.topLeftCorner(n, n)).eigenvalues();
  out.qsp_eigs = Eigen::SelfAdjointEigenSolver<CMatrix>(g).eigenvalues();
  return out;
}

// 1. fig1 --steps 101 --verify through the command-line tool.
Outcome fig1_reproduction() {
  const auto csv = std::filesystem::temp_directory_path() / "fermiloss_acceptance_fig1.csv";
  const std::string cmd = "\"" + g_cli + "\" fig1 --steps 101 --verify --workers " + std::to_string(g_workers) +
                          " --out \"" + csv.string() + "\"";
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (status != 0) return {false, "fig1 command failed with status " + std::to_string(status)};
  std::string header;
  const auto rows = read_csv(csv, header);
  if (rows.size() != 101 || header.find("dev_I_vn") == std::string::npos) return {false, "unexpected CSV shape"};
  double worst_dev = 0.0, worst_closed = 0.0;
  bool e_ok = true, i_ok = true;
  for (const auto& r : rows) {
    const double w = r[0];
    worst_dev = std::max({worst_dev, r[9], r[10]});
    worst_closed = std::max({worst_closed, std::abs(r[1] - oracle_i_vn(w)), std::abs(r[3] - oracle_e_vn(w))});
    if (w <= 3.0 / 7.0) e_ok = e_ok && r[3] == 0.0 && r[4] == 0.0;
    else e_ok = e_ok && r[3] > 0.0 && r[4] > 0.0;
    if (w > 0.0) i_ok = i_ok && r[1] > 0.0 && r[2] > 0.0;
  }
  std::filesystem::remove(csv);
  const bool ok = worst_dev <= 1e-6 && worst_closed <= 1e-12 && e_ok && i_ok && seconds <= 300.0;
  return {ok, "max optimizer deviation " + fmt(worst_dev) + ", closed-form deviation " + fmt(worst_closed) +
                  ", E zero up to 3/7 and positive after: " + (e_ok ? "yes" : "no") +
                  ", I positive for w > 0: " + (i_ok ? "yes" : "no") + ", runtime " + fmt(seconds) + " s"};
}

// 2. All four curves equal 4 at w = 1.
Outcome endpoint_values() {
  const double values[] = {n4_information_loss(1.0, kVn), n4_entanglement_of_formation(1.0, kVn),
                           n4_information_loss(1.0, kQuad), n4_entanglement_of_formation(1.0, kQuad)};
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v - 4.0));
  // Also through the assembled Fock-space state in the rho_qsp eigenbasis.
  const auto odd = FockSpace::build(4, Sector::Odd);
  const CMatrix rho = max_entangled_mixture(1.0);
  const double fock = basis_info_loss(rho, odd, BogoliubovTransform::identity(4), kVn);
  worst = std::max(worst, std::abs(fock - 4.0));
  return {worst <= 1e-9, "max |value - 4| = " + fmt(worst)};
}

// 3. I_quad(w) = 4 w^2.
Outcome quadratic_exactness() {
  double worst = 0.0;
  const auto odd = FockSpace::build(4, Sector::Odd);
  for (int i = 0; i <= 100; ++i) {
    const double w = i / 100.0;
    worst = std::max(worst, std::abs(n4_information_loss(w, kQuad) - 4 * w * w));
    if (i % 10 == 0) {
      const double fock = basis_info_loss(max_entangled_mixture(w), odd, BogoliubovTransform::identity(4), kQuad);
      worst = std::max(worst, std::abs(fock - 4 * w * w));
    }
  }
  return {worst <= 1e-10, "max deviation " + fmt(worst) + " over 101 points"};
}

// 4. I_vn(0.999) < E_vn(0.999).
Outcome near_pure_crossing() {
  const double i = n4_information_loss(0.999, kVn);
  const double e = n4_entanglement_of_formation(0.999, kVn);
  OptimizerConfig cfg;
  const double opt = minimize(max_entangled_mixture(0.999), FockSpace::build(4, Sector::Odd), kVn, cfg).value;
  const bool ok = i < e && opt < e && std::abs(opt - i) <= 1e-6 && std::abs(e - oracle_e_vn(0.999)) <= 1e-12;
  return {ok, "I_vn = " + std::to_string(i) + " (optimizer " + std::to_string(opt) + "), E_vn = " + std::to_string(e)};
}

// 5. Pure states: optimizer values equal the one-body entanglement entropies.
Outcome pure_state_equivalence() {
  constexpr int kStates = 100;
  std::string detail;
  bool ok = true;
  for (int n = 2; n <= 6; ++n) {
    std::vector<double> dq(kStates), ds(kStates);
    std::vector<char> conv(kStates);
    parallel_for(kStates, g_workers, [&](std::size_t t) {
      Rng rng = trial_rng(5000 + n, t);
      const auto space = FockSpace::build(n, t % 2 ? Sector::Odd : Sector::Even);
      const CMatrix rho = pure_density(random_pure_state(space, rng));
      const auto con = direct_contractions(rho, space);
      double qsp = 0.0, sp = 0.0;
      for (Eigen::Index k = 0; k < con.qsp_eigs.size(); ++k) qsp += 0.5 * support::h2(con.qsp_eigs(k));
      for (Eigen::Index k = 0; k < con.sp_eigs.size(); ++k) sp += support::h2(con.sp_eigs(k));
      OptimizerConfig cfg;
      cfg.seed = t;
      cfg.scope = Scope::Qsp;
      const auto rq = minimize(rho, space, kVn, cfg);
      cfg.scope = Scope::Sp;
      const auto rs = minimize(rho, space, kVn, cfg);
      dq[t] = std::abs(rq.value - qsp);
      ds[t] = std::abs(rs.value - sp);
      conv[t] = rq.converged && rs.converged;
    });
    const double mq = *std::max_element(dq.begin(), dq.end());
    const double ms = *std::max_element(ds.begin(), ds.end());
    const int unconverged = static_cast<int>(std::count(conv.begin(), conv.end(), 0));
    ok = ok && mq <= 1e-6 && ms <= 1e-6;
    detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " qsp " + fmt(mq) + " sp " +
              fmt(ms) + (unconverged ? " (" + std::to_string(unconverged) + " unconverged)" : "");
  }
  return {ok, detail};
}

// 6. Two- and three-mode theorems plus a mixed-parity counterexample.
Outcome theorems() {
  OptimizerConfig cfg;
  cfg.workers = g_workers;
  const auto two = theorem_harness(2, 200, 6002, cfg);
  const auto three = theorem_harness(3, 200, 6003, cfg);
  // Independent lower check on the counterexample: random sampling cannot go below it either.
  const auto full = FockSpace::build(3);
  CMatrix rho = CMatrix::Zero(8, 8);
  rho(0, 0) = 0.5;
  CVector odd = CVector::Zero(8);
  odd(1) = odd(7) = 1.0 / std::sqrt(2.0);  // mode 0 alone, or all three modes
  rho += 0.5 * odd * odd.adjoint();
  const double sampled = brute_force_min(rho, full, kVn, Scope::Qsp, 20000, 6004, g_workers);
  const bool ok = two.max_qsp_value <= 1e-6 && three.max_qsp_value <= 1e-6 && three.counterexample_value > 1e-3 &&
                  sampled > 1e-3;
  return {ok, "n=2 max " + fmt(two.max_qsp_value) + " (" + std::to_string(two.trials) + " states), n=3 max " +
                  fmt(three.max_qsp_value) + " (" + std::to_string(three.trials) +
                  " states), counterexample optimizer " + fmt(three.counterexample_value) + ", sampled " +
                  fmt(sampled)};
}

// 7. Nonnegativity of every single-mode loss.
Outcome majorization() {
  constexpr int kTriples = 10000;
  const std::vector<EntropyFunctional> fs = {kVn, kQuad, EntropyFunctional::tsallis(0.5),
                                             EntropyFunctional::tsallis(2.5), EntropyFunctional::renyi(0.5),
                                             EntropyFunctional::renyi(2.0)};
  std::vector<double> worst(kTriples);
  parallel_for(kTriples, g_workers, [&](std::size_t t) {
    Rng rng = trial_rng(7000, t);
    const int n = 2 + static_cast<int>(t % 3);
    const Sector sectors[] = {Sector::Full, Sector::Even, Sector::Odd};
    const auto space = FockSpace::build(n, sectors[t % 3 == 0 ? 0 : 1 + (t / 3) % 2]);
    const CMatrix rho = random_density_matrix(space, rng, 1 + static_cast<Eigen::Index>(t % space.dim()));
    const auto w = from_majorana_rotation(haar_orthogonal(2 * n, rng));
    const int mode = static_cast<int>((t / 7) % n);
    worst[t] = measure_unread(rho, space, w, mode, fs[t % fs.size()]).loss;
  });
  const double m = *std::min_element(worst.begin(), worst.end());
  return {m >= -1e-12, std::to_string(kTriples) + " triples, min loss " + fmt(m)};
}

// 8. Discord decomposition and ancilla dilation.
Outcome discord_and_ancilla() {
  constexpr int kInstances = 1000;
  std::vector<double> dev_discord(kInstances), dev_ancilla(kInstances);
  parallel_for(kInstances, g_workers, [&](std::size_t t) {
    Rng rng = trial_rng(8000, t);
    const int n = 2 + static_cast<int>(t % 3);
    const auto space = FockSpace::build(n, t % 2 ? Sector::Full : Sector::Odd);
    const CMatrix rho = random_density_matrix(space, rng);
    const auto w = from_majorana_rotation(haar_orthogonal(2 * n, rng));
    const CMatrix occ = mode_projectors(space, w)[t % n];
    const CMatrix emp = CMatrix::Identity(rho.rows(), rho.cols()) - occ;
    // Conditional entropy from the normalized branch states.
    const CMatrix b1 = occ * rho * occ, b0 = emp * rho * emp;
    const double p = b1.trace().real();
    double cond = 0.0;
    if (p > 1e-14) cond += p * support::vn_entropy(b1 / p);
    if (1 - p > 1e-14) cond += (1 - p) * support::vn_entropy(b0 / (1 - p));
    const double s = support::vn_entropy(rho);
    const auto id = discord_identity_check(rho, occ);
    const double lhs = support::vn_entropy(b1 + b0) - s;
    const double rhs = cond - (s - support::h2(p));
    dev_discord[t] = std::max({std::abs(lhs - rhs), std::abs(id.lhs - lhs), std::abs(id.rhs - rhs)});
    const auto ext = ancilla_extension(rho, occ);
    dev_ancilla[t] = std::max({max_abs(ext.reduced - (b1 + b0)), std::abs(ext.entropy_joint - s),
                               std::abs(ext.entropy_system - ext.entropy_joint - lhs)});
  });
  const double md = *std::max_element(dev_discord.begin(), dev_discord.end());
  const double ma = *std::max_element(dev_ancilla.begin(), dev_ancilla.end());
  return {md <= 1e-10 && ma <= 1e-10,
          std::to_string(kInstances) + " instances, discord deviation " + fmt(md) + ", ancilla deviation " + fmt(ma)};
}

// 9. Directional derivatives against central differences.
Outcome gradient() {
  constexpr int kInstances = 100;
  std::vector<double> rel(kInstances);
  parallel_for(kInstances, g_workers, [&](std::size_t t) {
    Rng rng = trial_rng(9000, t);
    const int n = 2 + static_cast<int>(t % 3);
    const auto space = FockSpace::build(n, t % 2 ? Sector::Full : Sector::Even);
    const CMatrix rho = random_density_matrix(space, rng);
    const auto w = from_majorana_rotation(haar_orthogonal(2 * n, rng));
    OneBodyGenerator dir{random_hermitian(n, rng), random_antisymmetric(n, rng)};
    const auto& f = t % 3 == 2 ? kQuad : kVn;
    const double eps = 1e-5;
    const double fd = (basis_info_loss(rho, space, retract(w, dir, eps), f) -
                       basis_info_loss(rho, space, retract(w, dir, -eps), f)) /
                      (2 * eps);
    const double an = directional_derivative(loss_gradient(rho, space, w, f), dir);
    rel[t] = std::abs(an - fd) / std::max(std::abs(fd), 1e-12);
  });
  const double m = *std::max_element(rel.begin(), rel.end());
  return {m <= 1e-5, std::to_string(kInstances) + " instances, max relative error " + fmt(m)};
}

// 10. Brute-force sampling never undercuts the optimizer.
Outcome oracle_consistency() {
  constexpr int kStates = 50;
  double worst = -1.0;
  for (int t = 0; t < kStates; ++t) {
    Rng rng = trial_rng(10000, t);
    const auto space = FockSpace::build(2);
    const CMatrix rho = random_density_matrix(space, rng);
    for (Scope scope : {Scope::Qsp, Scope::Sp}) {
      OptimizerConfig cfg;
      cfg.scope = scope;
      cfg.seed = t;
      const double opt = minimize(rho, space, kVn, cfg).value;
      const double bf = brute_force_min(rho, space, kVn, scope, 100000, 10000 + t, g_workers);
      worst = std::max(worst, opt - bf);
    }
  }
  return {worst <= 1e-6, std::to_string(kStates) + " states x 2 scopes, max undercut " + fmt(worst)};
}

// 11. Two-fermion states at six modes.
Outcome two_fermion() {
  constexpr int kStates = 50;
  std::vector<double> recon(kStates), lam(kStates), loss(kStates);
  parallel_for(kStates, g_workers, [&](std::size_t t) {
    Rng rng = trial_rng(11000, t);
    CMatrix m = random_gaussian_matrix(6, 6, rng);
    m = m - m.transpose().eval();
    m /= std::sqrt(0.5 * m.squaredNorm());
    TwoFermionState st{m};
    const auto dec = slater_decompose_two_fermion(st);
    recon[t] = dec.reconstruction_error;
    const RVector eig = Eigen::SelfAdjointEigenSolver<CMatrix>(m * m.adjoint()).eigenvalues().reverse();
    double d = 0.0;
    for (Eigen::Index k = 0; k < dec.lambda.size(); ++k)
      d = std::max({d, std::abs(eig(2 * k) - dec.lambda(k)), std::abs(eig(2 * k + 1) - dec.lambda(k))});
    lam[t] = d;
    const double w = 0.05 + 0.95 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto even = FockSpace::build(6, Sector::Even);
    const CMatrix rho = mixture_state(even.restrict(st.fock_state()), even, w, 15);
    OptimizerConfig cfg;
    cfg.seed = t;
    // Independent closed form per pair.
    const double b = (1 - w) / 15;
    double closed = 0.0;
    for (Eigen::Index k = 0; k < dec.lambda.size(); ++k)
      closed += 2 * (fvn(w * dec.lambda(k) + b) + fvn(w * (1 - dec.lambda(k)) + b) - fvn(w + b) - fvn(b));
    loss[t] = std::max(std::abs(minimize(rho, even, kVn, cfg).value - closed),
                       std::abs(two_fermion_mixture_info_loss(dec.lambda, w, 15, kVn) - closed));
  });
  const double mr = *std::max_element(recon.begin(), recon.end());
  const double ml = *std::max_element(lam.begin(), lam.end());
  const double mo = *std::max_element(loss.begin(), loss.end());
  return {mr <= 1e-10 && ml <= 1e-10 && mo <= 1e-6,
          std::to_string(kStates) + " states, reconstruction " + fmt(mr) + ", lambda " + fmt(ml) +
              ", optimizer vs closed form " + fmt(mo)};
}

// 12. Invariance under one-body unitaries (sp) and Bogoliubov rotations (qsp).
Outcome invariance() {
  constexpr int kInstances = 20, kRotations = 20;
  std::vector<double> worst(kInstances);
  parallel_for(kInstances, g_workers, [&](std::size_t t) {
    Rng rng = trial_rng(12000, t);
    const auto space = FockSpace::build(4, t % 2 ? Sector::Odd : Sector::Full);
    const CMatrix rho = random_density_matrix(space, rng);
    const auto full = FockSpace::build(4);
    double d = 0.0;
    for (Scope scope : {Scope::Sp, Scope::Qsp}) {
      OptimizerConfig cfg;
      cfg.scope = scope;
      cfg.seed = t;
      const double base = minimize(rho, space, kVn, cfg).value;
      for (int r = 0; r < kRotations; ++r) {
        const CMatrix h = random_hermitian(4, rng);
        const CMatrix delta = scope == Scope::Sp ? CMatrix::Zero(4, 4) : CMatrix(random_antisymmetric(4, rng));
        const CMatrix u = space.restrict(support::expm_minus_i(one_body_hamiltonian_matrix(full, h, delta)));
        d = std::max(d, std::abs(minimize(u * rho * u.adjoint(), space, kVn, cfg).value - base));
      }
    }
    worst[t] = d;
  });
  const double m = *std::max_element(worst.begin(), worst.end());
  return {m <= 1e-6, std::to_string(kInstances) + " states x " + std::to_string(kRotations) +
                         " rotations x 2 scopes, max deviation " + fmt(m)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <fermiloss executable> [workers]\n";
    return 2;
  }
  g_cli = argv[1];
  g_workers = argc > 2 ? std::atoi(argv[2]) : 0;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"fig1 reproduction", fig1_reproduction},
      {"endpoint values", endpoint_values},
      {"quadratic exactness", quadratic_exactness},
      {"near-pure crossing", near_pure_crossing},
      {"pure-state equivalence", pure_state_equivalence},
      {"theorems", theorems},
      {"majorization and nonnegativity", majorization},
      {"discord and ancilla identities", discord_and_ancilla},
      {"gradient correctness", gradient},
      {"oracle consistency", oracle_consistency},
      {"two-fermion pipeline", two_fermion},
      {"invariance", invariance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.passed) ++failures;
    std::printf("%s %2zu %s: %s [%.1f s]\n", out.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
