#include "fermiloss/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fermiloss/analytic.hpp"
#include "fermiloss/onebody.hpp"
#include "fermiloss/random.hpp"

namespace fermiloss {

namespace {

constexpr double kNormTol = 1e-8;

const Json& field(const Json& obj, const char* key, const std::string& where) {
  require(obj.is_object(), where + ": expected an object");
  auto it = obj.find(key);
  require(it != obj.end(), where + ": missing field '" + key + "'");
  return *it;
}

double number(const Json& j, const std::string& where) {
  require(j.is_number(), where + ": expected a number");
  return j.get<double>();
}

struct Inner {
  CMatrix rho;
  std::optional<CVector> psi;
};

Inner parse_representation(const Json& doc, const FockSpace& space, const std::string& where) {
  const std::string rep = field(doc, "representation", where).get<std::string>();
  const Eigen::Index dim = space.dim();
  if (rep == "pure") {
    CVector psi = vector_from_json(field(doc, "amplitudes", where), where + "/amplitudes");
    require(psi.size() == dim, where + "/amplitudes: expected " + std::to_string(dim) + " entries");
    require(std::abs(psi.norm() - 1.0) <= kNormTol, where + "/amplitudes: state is not normalized");
    return {pure_density(psi), psi};
  }
  if (rep == "density") {
    CMatrix rho = matrix_from_json(field(doc, "matrix", where), where + "/matrix");
    require(rho.rows() == dim && rho.cols() == dim,
            where + "/matrix: expected a " + std::to_string(dim) + " x " + std::to_string(dim) + " matrix");
    require((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= kNormTol, where + "/matrix: not Hermitian");
    require(std::abs(rho.trace().real() - 1.0) <= kNormTol, where + "/matrix: trace is not 1");
    require(Eigen::SelfAdjointEigenSolver<CMatrix>(rho, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() >=
                -kNormTol,
            where + "/matrix: not positive semidefinite");
    return {rho, std::nullopt};
  }
  if (rep == "alpha_beta") {
    require(space.modes() == 4, where + ": alpha_beta requires n = 4");
    require(space.sector() != Sector::Even, where + ": alpha_beta states have odd parity");
    OddParityN4State s{vector_from_json(field(doc, "alpha", where), where + "/alpha"),
                       vector_from_json(field(doc, "beta", where), where + "/beta")};
    require(s.alpha.size() == 4 && s.beta.size() == 4, where + ": alpha and beta need 4 entries");
    s.validate();
    const CVector psi = space.restrict(s.fock_state());
    return {pure_density(psi), psi};
  }
  if (rep == "two_fermion") {
    require(space.sector() != Sector::Odd, where + ": two-fermion states have even parity");
    TwoFermionState s{matrix_from_json(field(doc, "M", where), where + "/M")};
    require(s.M.rows() == space.modes() && s.M.cols() == space.modes(),
            where + "/M: expected an n x n matrix");
    s.validate();
    const CVector psi = space.restrict(s.fock_state());
    return {pure_density(psi), psi};
  }
  throw ValidationError(where + "/representation: unknown representation '" + rep +
                        "' (expected pure, density, alpha_beta, two_fermion or mixture)");
}

void dump_value(const Json& j, int indent, int depth, std::string& out) {
  const auto pad = [&](int level) {
    if (indent > 0) out += '\n' + std::string(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    case Json::value_t::array: {
      // Short numeric rows ([re, im] pairs) stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) pad(depth + 1);
        dump_value(e, indent, depth + 1, out);
        first = false;
      }
      if (!flat && !j.empty()) pad(depth);
      out += ']';
      break;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_value(it.value(), indent, depth + 1, out);
        first = false;
      }
      if (!j.empty()) pad(depth);
      out += '}';
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          where + ": expected a [real, imaginary] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CVector vector_from_json(const Json& j, const std::string& where) {
  require(j.is_array(), where + ": expected an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], where + "/" + std::to_string(i));
  return v;
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

CMatrix matrix_from_json(const Json& j, const std::string& where) {
  require(j.is_array() && !j.empty(), where + ": expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const CVector first = vector_from_json(j[0], where + "/0");
  CMatrix m(rows, first.size());
  m.row(0) = first.transpose();
  for (Eigen::Index i = 1; i < rows; ++i) {
    const CVector row = vector_from_json(j[i], where + "/" + std::to_string(i));
    require(row.size() == m.cols(), where + "/" + std::to_string(i) + ": ragged matrix row");
    m.row(i) = row.transpose();
  }
  return m;
}

Json transform_to_json(const BogoliubovTransform& w) {
  return Json{{"U", matrix_to_json(w.U)}, {"V", matrix_to_json(w.V)}};
}

BogoliubovTransform transform_from_json(const Json& j) {
  const Json& body = j.contains("W") ? j["W"] : j;
  const CMatrix u = matrix_from_json(field(body, "U", "W"), "W/U");
  const CMatrix v = matrix_from_json(field(body, "V", "W"), "W/V");
  require(u.rows() == u.cols() && v.rows() == u.rows() && v.cols() == u.cols(),
          "W: U and V must be square and of equal size");
  BogoliubovTransform w{u, v};
  require(w.unitarity_error() <= 1e-8, "W: transform is not unitary");
  return w;
}

StateFile parse_state(const Json& doc) {
  const int n = field(doc, "n", "").get<int>();
  require(n >= 1 && n <= kDefaultMaxModes, "/n: mode count must lie in [1, 12]");
  const Sector sector = doc.contains("sector") ? parse_sector(doc["sector"].get<std::string>())
                                               : Sector::Full;
  StateFile out;
  out.space = FockSpace::build(n, sector);
  out.representation = field(doc, "representation", "").get<std::string>();
  if (out.representation == "mixture") {
    out.w = number(field(doc, "w", ""), "/w");
    require(*out.w >= 0.0 && *out.w <= 1.0, "/w: mixing weight must lie in [0, 1]");
    out.d = doc.contains("d") ? doc["d"].get<std::int64_t>() : out.space.dim();
    const Inner inner = parse_representation(field(doc, "inner", ""), out.space, "/inner");
    require(inner.psi.has_value(), "/inner: the mixed component must be a pure state");
    out.inner_psi = inner.psi;
    out.rho = mixture_state(*inner.psi, out.space, *out.w, *out.d);
  } else {
    const Inner inner = parse_representation(doc, out.space, "");
    out.rho = inner.rho;
    out.psi = inner.psi;
  }
  // Physical states commute with number parity.
  if (out.space.is_full()) {
    const auto p = parity_operator(out.space);
    require((p * out.rho - out.rho * p).cwiseAbs().maxCoeff() <= 1e-10,
            "state does not commute with number parity");
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n');
    throw ValidationError(path.string() + ":" + std::to_string(line) + ": JSON syntax error: " + e.what());
  }
}

StateFile load_state(const std::filesystem::path& path) {
  const Json doc = read_json_file(path);
  try {
    return parse_state(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const Json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_value(j, indent, 0, out);
  return out;
}

}  // namespace fermiloss
