#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fermiloss/analytic.hpp"
#include "fermiloss/bogoliubov.hpp"
#include "fermiloss/entropy.hpp"
#include "fermiloss/fock.hpp"
#include "fermiloss/measurement.hpp"
#include "fermiloss/onebody.hpp"
#include "fermiloss/optimizer.hpp"
#include "fermiloss/partition.hpp"
#include "fermiloss/state_io.hpp"
#include "fermiloss/suites.hpp"

namespace py = pybind11;
using namespace fermiloss;

namespace {

FockSpace space_of(int n, const std::string& sector) { return FockSpace::build(n, parse_sector(sector)); }

py::dict report_dict(const MeasurementReport& r) {
  py::dict d;
  d["mode"] = r.mode;
  d["p_occupied"] = r.p_occupied;
  d["p_empty"] = r.p_empty;
  d["S_mode"] = r.S_mode;
  d["S_conditional"] = r.S_conditional;
  d["loss"] = r.loss;
  d["rho_post"] = r.rho_post;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-body information loss of fermion states";
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  m.def("basis", [](int n, const std::string& sector) { return space_of(n, sector).basis(); },
        py::arg("n"), py::arg("sector") = "full", "Occupation bit strings of the sector, ascending.");
  m.def("annihilators", &annihilators, py::arg("n"), "Full-space Jordan-Wigner annihilators.");
  m.def("parity_operator", [](int n, const std::string& sector) { return parity_operator(space_of(n, sector)); },
        py::arg("n"), py::arg("sector") = "full");
  m.def("one_body_hamiltonian",
        [](const CMatrix& h, const CMatrix& delta, const std::string& sector) {
          return one_body_hamiltonian_matrix(space_of(static_cast<int>(h.rows()), sector), h, delta);
        },
        py::arg("h"), py::arg("delta"), py::arg("sector") = "full");

  m.def("entropy_of_spectrum",
        [](const RVector& p, const std::string& f) { return entropy_of_spectrum(p, parse_entropy(f)); },
        py::arg("spectrum"), py::arg("entropy") = "vn");
  m.def("entropy_of_state", [](const CMatrix& rho, const std::string& f) { return entropy_of_state(rho, parse_entropy(f)); },
        py::arg("rho"), py::arg("entropy") = "vn");

  py::class_<BogoliubovTransform>(m, "BogoliubovTransform")
      .def(py::init([](const CMatrix& u, const CMatrix& v) {
             BogoliubovTransform w{u, v};
             require(w.unitarity_error() <= 1e-8, "transform is not unitary");
             return w;
           }),
           py::arg("U"), py::arg("V"))
      .def_static("identity", &BogoliubovTransform::identity, py::arg("n"))
      .def_static("from_unitary", &BogoliubovTransform::from_unitary, py::arg("u"))
      .def_static("from_generator",
                  [](const CMatrix& h, const CMatrix& delta, double t) {
                    OneBodyGenerator g{h, delta};
                    g.validate();
                    return from_generator(g, t);
                  },
                  py::arg("h"), py::arg("delta"), py::arg("t") = 1.0)
      .def_readonly("U", &BogoliubovTransform::U)
      .def_readonly("V", &BogoliubovTransform::V)
      .def("matrix", &BogoliubovTransform::matrix)
      .def("unitarity_error", &BogoliubovTransform::unitarity_error)
      .def("compose", [](const BogoliubovTransform& a, const BogoliubovTransform& b) { return compose(a, b); })
      .def("inverse", [](const BogoliubovTransform& a) { return inverse(a); })
      .def("__repr__", [](const BogoliubovTransform& w) {
        return "<BogoliubovTransform n=" + std::to_string(w.modes()) + ">";
      });

  m.def("one_body_summary",
        [](const CMatrix& rho, int n, const std::string& sector) {
          const auto s = one_body_summary(rho, space_of(n, sector));
          py::dict d;
          d["rho_sp"] = s.rho_sp;
          d["kappa"] = s.kappa;
          d["rho_qsp"] = s.rho_qsp;
          d["sp_eigs"] = s.sp_eigs;
          d["qsp_eigs"] = s.qsp_eigs;
          return d;
        },
        py::arg("rho"), py::arg("n"), py::arg("sector") = "full");
  m.def("sp_entanglement_entropy",
        [](const CMatrix& rho, int n, const std::string& sector, const std::string& f) {
          return sp_entanglement_entropy(rho, space_of(n, sector), parse_entropy(f));
        },
        py::arg("rho"), py::arg("n"), py::arg("sector") = "full", py::arg("entropy") = "vn");
  m.def("qsp_entanglement_entropy",
        [](const CMatrix& rho, int n, const std::string& sector, const std::string& f) {
          return qsp_entanglement_entropy(rho, space_of(n, sector), parse_entropy(f));
        },
        py::arg("rho"), py::arg("n"), py::arg("sector") = "full", py::arg("entropy") = "vn");
  m.def("slater_decompose",
        [](const CMatrix& coeffs) {
          const auto dec = slater_decompose_two_fermion(TwoFermionState{coeffs});
          py::dict d;
          d["U"] = dec.U;
          d["lambda"] = dec.lambda;
          d["D"] = dec.D;
          d["reconstruction_error"] = dec.reconstruction_error;
          return d;
        },
        py::arg("M"));
  m.def("two_fermion_state", [](const CMatrix& coeffs) { return TwoFermionState{coeffs}.fock_state(); },
        py::arg("M"), "Full-space amplitudes of (1/2) sum_ij M_ij c_i^dag c_j^dag |0>.");
  m.def("odd_parity_n4_state",
        [](const CVector& alpha, const CVector& beta) { return OddParityN4State{alpha, beta}.fock_state(); },
        py::arg("alpha"), py::arg("beta"));

  m.def("measure_basis",
        [](const CMatrix& rho, int n, const std::string& sector, const BogoliubovTransform& w, const std::string& f) {
          py::list out;
          for (const auto& r : measure_basis(rho, space_of(n, sector), w, parse_entropy(f))) out.append(report_dict(r));
          return out;
        },
        py::arg("rho"), py::arg("n"), py::arg("sector"), py::arg("W"), py::arg("entropy") = "vn");
  m.def("basis_info_loss",
        [](const CMatrix& rho, int n, const std::string& sector, const BogoliubovTransform& w, const std::string& f) {
          return basis_info_loss(rho, space_of(n, sector), w, parse_entropy(f));
        },
        py::arg("rho"), py::arg("n"), py::arg("sector"), py::arg("W"), py::arg("entropy") = "vn");

  m.def("minimize",
        [](const CMatrix& rho, int n, const std::string& sector, const std::string& f, const std::string& scope,
           int restarts, int max_iterations, double tolerance, std::uint64_t seed, int workers) {
          OptimizerConfig cfg;
          cfg.scope = parse_scope(scope);
          cfg.restarts = restarts;
          cfg.max_iterations = max_iterations;
          cfg.tolerance = tolerance;
          cfg.seed = seed;
          cfg.workers = workers;
          OptimizationResult r;
          {
            py::gil_scoped_release release;
            r = minimize(rho, space_of(n, sector), parse_entropy(f), cfg);
          }
          py::dict d;
          d["value"] = r.value;
          d["W"] = r.W;
          d["residual_sp"] = r.residual_sp;
          d["residual_pair"] = r.residual_pair;
          d["iterations"] = r.iterations;
          d["converged"] = r.converged;
          d["best_restart"] = r.best_restart;
          d["restart_values"] = r.restart_values;
          return d;
        },
        py::arg("rho"), py::arg("n"), py::arg("sector") = "full", py::arg("entropy") = "vn",
        py::arg("scope") = "qsp", py::arg("restarts") = 4, py::arg("max_iterations") = 5000,
        py::arg("tolerance") = 1e-8, py::arg("seed") = 0, py::arg("workers") = 1);
  m.def("brute_force_min",
        [](const CMatrix& rho, int n, const std::string& sector, const std::string& f, const std::string& scope,
           std::size_t samples, std::uint64_t seed) {
          py::gil_scoped_release release;
          return brute_force_min(rho, space_of(n, sector), parse_entropy(f), parse_scope(scope), samples, seed);
        },
        py::arg("rho"), py::arg("n"), py::arg("sector") = "full", py::arg("entropy") = "vn",
        py::arg("scope") = "qsp", py::arg("samples") = 1000, py::arg("seed") = 0);

  m.def("schmidt_values",
        [](const CVector& psi, int n, const std::string& sector, const std::vector<int>& subset) {
          return schmidt_decompose(psi, space_of(n, sector), subset).schmidt_values;
        },
        py::arg("psi"), py::arg("n"), py::arg("sector"), py::arg("subset"));
  m.def("reduced_state",
        [](const CMatrix& rho, int n, const std::string& sector, const std::vector<int>& subset) {
          return reduced_state(rho, space_of(n, sector), subset);
        },
        py::arg("rho"), py::arg("n"), py::arg("sector"), py::arg("subset"));

  m.def("mixture_info_loss",
        [](double w, std::int64_t d, const RVector& occ, const std::string& f) {
          return mixture_info_loss(MixtureSpec{w, d, occ}, parse_entropy(f));
        },
        py::arg("w"), py::arg("d"), py::arg("occupations"), py::arg("entropy") = "vn");
  m.def("n4_concurrence", &n4_concurrence_mixture, py::arg("w"));
  m.def("n4_entanglement_of_formation",
        [](double w, const std::string& f) { return n4_entanglement_of_formation(w, parse_entropy(f)); },
        py::arg("w"), py::arg("entropy") = "vn");
  m.def("n4_information_loss", [](double w, const std::string& f) { return n4_information_loss(w, parse_entropy(f)); },
        py::arg("w"), py::arg("entropy") = "vn");
  m.def("two_fermion_mixture_info_loss",
        [](const RVector& lambda, double w, std::int64_t d, const std::string& f) {
          return two_fermion_mixture_info_loss(lambda, w, d, parse_entropy(f));
        },
        py::arg("lambda_"), py::arg("w"), py::arg("d"), py::arg("entropy") = "vn");
  m.def("mixture_state",
        [](const CVector& psi, int n, const std::string& sector, double w, std::int64_t d) {
          return mixture_state(psi, space_of(n, sector), w, d);
        },
        py::arg("psi"), py::arg("n"), py::arg("sector"), py::arg("w"), py::arg("d") = 0);

  m.def("load_state",
        [](const std::filesystem::path& path) {
          const auto s = load_state(path);
          py::dict d;
          d["n"] = s.space.modes();
          d["sector"] = to_string(s.space.sector());
          d["representation"] = s.representation;
          d["rho"] = s.rho;
          d["psi"] = s.psi;
          return d;
        },
        py::arg("path"));
  m.def("suite_names", &suite_names);
  m.def("run_suite",
        [](const std::string& name, int n, int trials, std::uint64_t seed) {
          SuiteOptions opts;
          opts.n = n;
          opts.trials = trials;
          opts.seed = seed;
          const auto r = run_suite(name, opts);
          return py::make_tuple(r.passed, r.summary.dump());
        },
        py::arg("name"), py::arg("n") = 0, py::arg("trials") = 0, py::arg("seed") = 0,
        "Returns (passed, JSON summary).");
}
