#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fermiloss/analytic.hpp"
#include "fermiloss/measurement.hpp"
#include "fermiloss/onebody.hpp"
#include "fermiloss/optimizer.hpp"
#include "fermiloss/parallel.hpp"
#include "fermiloss/state_io.hpp"
#include "fermiloss/suites.hpp"

using namespace fermiloss;

namespace {

enum Exit { kOk = 0, kValidation = 1, kSuiteFailure = 2, kNotConverged = 3 };

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FERMILOSS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError("FERMILOSS_SEED must be a nonnegative integer");
    }
  }
  return 0;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot write '" + path + "'");
  out << text << '\n';
  require(static_cast<bool>(out), "failed writing '" + path + "'");
}

RVector parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      require(used == item.size(), "");
    } catch (const std::exception&) {
      throw ValidationError(what + ": '" + item + "' is not a number");
    }
  }
  require(!values.empty(), what + ": expected a comma-separated list");
  return Eigen::Map<RVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Json mode_reports(const CMatrix& rho, const FockSpace& space, const BogoliubovTransform& w,
                  const EntropyFunctional& f) {
  Json modes = Json::array();
  for (const auto& r : measure_basis(rho, space, w, f))
    modes.push_back({{"mode", r.mode},
                     {"p_occupied", r.p_occupied},
                     {"p_empty", r.p_empty},
                     {"S_mode", r.S_mode},
                     {"S_conditional", r.S_conditional},
                     {"loss", r.loss}});
  return modes;
}

struct LossArgs {
  std::string state, entropy = "vn", scope = "qsp", out;
  int restarts = 4, max_iter = 5000, workers = 0;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

int cmd_loss(const LossArgs& a) {
  const auto state = load_state(a.state);
  const auto f = parse_entropy(a.entropy);
  OptimizerConfig cfg;
  cfg.scope = parse_scope(a.scope);
  cfg.restarts = a.restarts;
  cfg.max_iterations = a.max_iter;
  cfg.tolerance = a.tol;
  cfg.seed = a.seed;
  cfg.workers = a.workers;
  const auto r = minimize(state.rho, state.space, f, cfg);
  Json report{{"state", a.state},
              {"n", state.space.modes()},
              {"sector", to_string(state.space.sector())},
              {"entropy", f.name()},
              {"scope", to_string(cfg.scope)},
              {"value", r.value},
              {"converged", r.converged},
              {"residual_sp", r.residual_sp},
              {"residual_pair", r.residual_pair ? Json(*r.residual_pair) : Json(nullptr)},
              {"tolerance", cfg.tolerance},
              {"restarts", r.restarts},
              {"best_restart", r.best_restart},
              {"iterations", r.iterations},
              {"restart_values", r.restart_values},
              {"seed", cfg.seed},
              {"W", transform_to_json(r.W)},
              {"modes", mode_reports(state.rho, state.space, r.W, f)}};
  emit(dump_json(report), a.out);
  return r.converged ? kOk : kNotConverged;
}

int cmd_evaluate(const std::string& state_path, const std::string& basis_path,
                 const std::string& entropy, const std::string& out) {
  const auto state = load_state(state_path);
  const auto f = parse_entropy(entropy);
  const auto w = transform_from_json(read_json_file(basis_path));
  require(w.modes() == state.space.modes(), "basis and state have different mode counts");
  Json report{{"state", state_path},
              {"entropy", f.name()},
              {"value", basis_info_loss(state.rho, state.space, w, f)},
              {"modes", mode_reports(state.rho, state.space, w, f)}};
  emit(dump_json(report), out);
  return kOk;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_fig1(int steps, const std::string& out, bool verify, int workers, std::uint64_t seed) {
  require(steps >= 2, "--steps must be >= 2");
  const auto vn = EntropyFunctional::von_neumann();
  const auto quad = EntropyFunctional::quadratic();
  const double i_vn_max = n4_information_loss(1.0, vn), i_quad_max = n4_information_loss(1.0, quad);
  const double e_vn_max = n4_entanglement_of_formation(1.0, vn);
  const double e_quad_max = n4_entanglement_of_formation(1.0, quad);

  // Maximally entangled odd-parity n = 4 state (C = 1) on the 8-dimensional sector.
  const FockSpace space = FockSpace::build(4, Sector::Odd);
  const OddParityN4State pure{CVector::Unit(4, 0) / std::sqrt(2.0), CVector::Unit(4, 0) / std::sqrt(2.0)};
  const CVector psi = space.restrict(pure.fock_state());

  struct Row { double dev_vn = 0.0, dev_quad = 0.0; };
  std::vector<Row> rows(steps);
  if (verify) {
    parallel_for(steps, workers, [&](std::size_t i) {
      const double w = static_cast<double>(i) / (steps - 1);
      const CMatrix rho = mixture_state(psi, space, w);
      OptimizerConfig cfg;
      cfg.seed = seed + i;
      rows[i].dev_vn = std::abs(minimize(rho, space, vn, cfg).value - n4_information_loss(w, vn));
      rows[i].dev_quad = std::abs(minimize(rho, space, quad, cfg).value - n4_information_loss(w, quad));
    });
  }
  std::ostringstream csv;
  csv << "w,I_vn,I_quad,E_vn,E_quad,I_vn_norm,I_quad_norm,E_vn_norm,E_quad_norm";
  if (verify) csv << ",dev_I_vn,dev_I_quad";
  csv << '\n';
  double worst = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double w = static_cast<double>(i) / (steps - 1);
    const double ivn = n4_information_loss(w, vn), iq = n4_information_loss(w, quad);
    const double evn = n4_entanglement_of_formation(w, vn), eq = n4_entanglement_of_formation(w, quad);
    csv << csv_number(w) << ',' << csv_number(ivn) << ',' << csv_number(iq) << ',' << csv_number(evn)
        << ',' << csv_number(eq) << ',' << csv_number(ivn / i_vn_max) << ','
        << csv_number(iq / i_quad_max) << ',' << csv_number(evn / e_vn_max) << ','
        << csv_number(eq / e_quad_max);
    if (verify) {
      csv << ',' << csv_number(rows[i].dev_vn) << ',' << csv_number(rows[i].dev_quad);
      worst = std::max({worst, rows[i].dev_vn, rows[i].dev_quad});
    }
    csv << '\n';
  }
  if (out.empty() || out == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream file(out, std::ios::binary);
    require(static_cast<bool>(file), "cannot write '" + out + "'");
    file << csv.str();
    require(static_cast<bool>(file), "failed writing '" + out + "'");
  }
  if (verify) {
    std::cerr << "fig1: max optimizer deviation " << csv_number(worst) << '\n';
    return worst <= 1e-6 ? kOk : kSuiteFailure;
  }
  return kOk;
}

int cmd_verify(const std::string& suite, const SuiteOptions& options, const std::string& out) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    require(std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end(),
            "unknown suite '" + suite + "'");
    names = {suite};
  }
  Json summary = Json::array();
  bool all = true;
  for (const auto& name : names) {
    const auto r = run_suite(name, options);
    Json entry = r.summary;
    entry["suite"] = r.suite;
    entry["passed"] = r.passed;
    entry["seed"] = options.seed;
    summary.push_back(entry);
    all = all && r.passed;
  }
  emit(dump_json(names.size() == 1 ? summary[0] : summary), out);
  return all ? kOk : kSuiteFailure;
}

struct AnalyticArgs {
  std::string family, entropy = "vn", spectrum, lambda, out;
  double w = 1.0;
  std::int64_t d = 0;
};

int cmd_analytic(const AnalyticArgs& a) {
  const auto f = parse_entropy(a.entropy);
  require(a.w >= 0.0 && a.w <= 1.0, "--w must lie in [0, 1]");
  Json report{{"family", a.family}, {"entropy", f.name()}, {"w", a.w}};
  if (a.family == "n4") {
    report["C"] = n4_concurrence_mixture(a.w);
    report["I"] = n4_information_loss(a.w, f);
    if (f.kind == EntropyKind::VonNeumann || f.kind == EntropyKind::Quadratic)
      report["E"] = n4_entanglement_of_formation(a.w, f);
    if (f.kind == EntropyKind::VonNeumann) {
      report["I_vn"] = report["I"];
      report["E_vn"] = report["E"];
    }
  } else if (a.family == "mixture") {
    require(!a.spectrum.empty(), "mixture family needs --spectrum");
    require(a.d >= 2, "mixture family needs --d >= 2");
    const MixtureSpec m{a.w, a.d, parse_list(a.spectrum, "--spectrum")};
    report["d"] = a.d;
    report["I"] = mixture_info_loss(m, f);
    if (f.is_trace_form()) report["quadratic_increase"] = quadratic_increase(m, f);
  } else if (a.family == "twofermion") {
    require(!a.lambda.empty(), "twofermion family needs --lambda");
    require(a.d >= 2, "twofermion family needs --d >= 2");
    report["d"] = a.d;
    report["I"] = two_fermion_mixture_info_loss(parse_list(a.lambda, "--lambda"), a.w, a.d, f);
  } else {
    throw ValidationError("unknown family '" + a.family + "' (expected mixture, n4 or twofermion)");
  }
  emit(dump_json(report), a.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-body information loss of fermionic states"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  int workers = 0;
  try {
    seed = default_seed();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }

  LossArgs loss;
  loss.seed = seed;
  auto* loss_cmd = app.add_subcommand("loss", "Minimize the basis-summed information loss of a state");
  loss_cmd->add_option("state", loss.state, "State file (JSON)")->required()->check(CLI::ExistingFile);
  loss_cmd->add_option("--entropy", loss.entropy, "vn, quad, tsallis:<q> or renyi:<q>");
  loss_cmd->add_option("--scope", loss.scope, "sp or qsp");
  loss_cmd->add_option("--restarts", loss.restarts, "Number of descents");
  loss_cmd->add_option("--max-iter", loss.max_iter, "Iterations per descent");
  loss_cmd->add_option("--tol", loss.tol, "Stationarity residual tolerance");
  loss_cmd->add_option("--seed", loss.seed, "Seed for random restarts (default $FERMILOSS_SEED or 0)");
  loss_cmd->add_option("--workers", loss.workers, "Parallel restarts (0 = all cores)");
  loss_cmd->add_option("--out", loss.out, "Output file (default stdout)");

  std::string eval_state, eval_basis, eval_entropy = "vn", eval_out;
  auto* eval_cmd = app.add_subcommand("evaluate", "Loss of a state in a given basis");
  eval_cmd->add_option("state", eval_state, "State file (JSON)")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--basis", eval_basis, "File holding W (a loss report or {U, V})")
      ->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--entropy", eval_entropy, "vn, quad, tsallis:<q> or renyi:<q>");
  eval_cmd->add_option("--out", eval_out, "Output file (default stdout)");

  int steps = 101;
  bool verify = false;
  std::string fig_out;
  auto* fig_cmd = app.add_subcommand("fig1", "Information loss and entanglement curves of the n = 4 mixture");
  fig_cmd->add_option("--steps", steps, "Grid points on [0, 1]");
  fig_cmd->add_option("--out", fig_out, "CSV output file (default stdout)");
  fig_cmd->add_flag("--verify", verify, "Recompute the losses with the optimizer");
  fig_cmd->add_option("--workers", workers, "Parallel grid points (0 = all cores)");
  fig_cmd->add_option("--seed", seed, "Seed for random restarts");

  std::string suite, verify_out;
  SuiteOptions suite_options;
  auto* verify_cmd = app.add_subcommand("verify", "Run an invariant suite");
  verify_cmd->add_option("--suite", suite, "Suite name or 'all'")->required();
  verify_cmd->add_option("--n", suite_options.n, "Mode count (suite default if omitted)");
  verify_cmd->add_option("--trials", suite_options.trials, "Trial count (suite default if omitted)");
  verify_cmd->add_option("--samples", suite_options.samples, "Brute-force samples (oracle suite)");
  verify_cmd->add_option("--seed", seed, "Seed");
  verify_cmd->add_option("--workers", workers, "Parallel trials (0 = all cores)");
  verify_cmd->add_option("--out", verify_out, "Output file (default stdout)");

  AnalyticArgs analytic;
  auto* analytic_cmd = app.add_subcommand("analytic", "Closed-form values");
  analytic_cmd->add_option("--family", analytic.family, "mixture, n4 or twofermion")->required();
  analytic_cmd->add_option("--w", analytic.w, "Mixing weight");
  analytic_cmd->add_option("--d", analytic.d, "Ensemble dimension");
  analytic_cmd->add_option("--spectrum", analytic.spectrum, "Comma-separated occupations (mixture)");
  analytic_cmd->add_option("--lambda", analytic.lambda, "Comma-separated Slater weights (twofermion)");
  analytic_cmd->add_option("--entropy", analytic.entropy, "vn, quad, tsallis:<q> or renyi:<q>");
  analytic_cmd->add_option("--out", analytic.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*loss_cmd) return cmd_loss(loss);
    if (*eval_cmd) return cmd_evaluate(eval_state, eval_basis, eval_entropy, eval_out);
    if (*fig_cmd) return cmd_fig1(steps, fig_out, verify, workers, seed);
    if (*verify_cmd) {
      suite_options.seed = seed;
      suite_options.workers = workers;
      return cmd_verify(suite, suite_options, verify_out);
    }
    if (*analytic_cmd) return cmd_analytic(analytic);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}
