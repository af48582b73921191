#include "fermiloss/entropy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "fermiloss/linalg.hpp"

namespace fermiloss {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double tsallis_norm(double q) { return 1.0 - std::pow(2.0, 1.0 - q); }

double clip01(double p) { return std::clamp(p, 0.0, 1.0); }

void require_trace_form(const EntropyFunctional& f) {
  require(f.is_trace_form(), "Renyi entropies have no trace-form integrand");
}

std::vector<double> validated(std::span<const double> spectrum) {
  double sum = 0.0;
  for (double p : spectrum) {
    require(p >= -1e-12, "negative probability in spectrum");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-9, "spectrum is not normalized");
  std::vector<double> out(spectrum.begin(), spectrum.end());
  for (double& p : out) p = clip01(p);
  return out;
}

}  // namespace

EntropyFunctional EntropyFunctional::tsallis(double q) {
  require(q > 0.0 && q != 1.0, "Tsallis index must satisfy q > 0, q != 1");
  return {EntropyKind::Tsallis, q};
}

EntropyFunctional EntropyFunctional::renyi(double q) {
  require(q > 0.0 && q != 1.0, "Renyi index must satisfy q > 0, q != 1");
  return {EntropyKind::Renyi, q};
}

double EntropyFunctional::operator()(double p) const {
  require_trace_form(*this);
  p = clip01(p);
  switch (kind) {
    case EntropyKind::VonNeumann: return p > 0.0 ? -p * std::log2(p) : 0.0;
    case EntropyKind::Quadratic: return 2.0 * p * (1.0 - p);
    case EntropyKind::Tsallis: return (p - std::pow(p, q)) / tsallis_norm(q);
    case EntropyKind::Renyi: break;
  }
  return 0.0;
}

std::string EntropyFunctional::name() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case EntropyKind::VonNeumann: return "vn";
    case EntropyKind::Quadratic: return "quad";
    case EntropyKind::Tsallis: os << "tsallis:" << q; break;
    case EntropyKind::Renyi: os << "renyi:" << q; break;
  }
  return os.str();
}

EntropyFunctional parse_entropy(std::string_view text) {
  if (text == "vn") return EntropyFunctional::von_neumann();
  if (text == "quad") return EntropyFunctional::quadratic();
  const auto colon = text.find(':');
  require(colon != std::string_view::npos,
          "unknown entropy '" + std::string(text) + "' (expected vn, quad, tsallis:<q>, renyi:<q>)");
  const auto family = text.substr(0, colon);
  const auto number = text.substr(colon + 1);
  double q = 0.0;
  const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), q);
  require(ec == std::errc() && ptr == number.data() + number.size(),
          "bad entropy index in '" + std::string(text) + "'");
  if (family == "tsallis") return EntropyFunctional::tsallis(q);
  if (family == "renyi") return EntropyFunctional::renyi(q);
  throw ValidationError("unknown entropy family '" + std::string(family) + "'");
}

EntropyFunctional optimization_functional(const EntropyFunctional& f) {
  if (f.kind == EntropyKind::Renyi) return EntropyFunctional::tsallis(f.q);
  return f;
}

double binary_entropy(double p) {
  const auto vn = EntropyFunctional::von_neumann();
  return vn(p) + vn(1.0 - p);
}

double entropy_of_spectrum(std::span<const double> spectrum, const EntropyFunctional& f) {
  const auto p = validated(spectrum);
  if (f.kind == EntropyKind::Renyi) {
    double power_sum = 0.0;
    for (double x : p) power_sum += std::pow(x, f.q);
    return std::log2(power_sum) / (1.0 - f.q);
  }
  double s = 0.0;
  for (double x : p) s += f(x);
  return s;
}

double entropy_of_spectrum(const RVector& spectrum, const EntropyFunctional& f) {
  return entropy_of_spectrum(std::span<const double>(spectrum.data(), spectrum.size()), f);
}

double entropy_of_state(const CMatrix& rho, const EntropyFunctional& f) {
  require(rho.rows() == rho.cols(), "density matrix must be square");
  require(max_abs(rho - rho.adjoint()) <= 1e-10, "density matrix is not Hermitian");
  RVector values = eigenvalues_descending(hermitian_part(rho));
  // Roundoff can leave eigenvalues slightly outside [0, 1]; renormalize the
  // clipped spectrum so the trace check applies to the state, not the noise.
  const double trace = values.sum();
  require(std::abs(trace - 1.0) <= 1e-9, "density matrix does not have unit trace");
  values = values.cwiseMax(0.0).cwiseMin(1.0);
  values /= values.sum();
  return entropy_of_spectrum(values, f);
}

double functional_derivative(const EntropyFunctional& f, double p) {
  require_trace_form(f);
  p = std::max(p, kDerivativeFloor);
  switch (f.kind) {
    case EntropyKind::VonNeumann: return -(std::log(p) + 1.0) / kLn2;
    case EntropyKind::Quadratic: return 2.0 - 4.0 * p;
    case EntropyKind::Tsallis: return (1.0 - f.q * std::pow(p, f.q - 1.0)) / tsallis_norm(f.q);
    case EntropyKind::Renyi: break;
  }
  return 0.0;
}

double functional_second_derivative(const EntropyFunctional& f, double p) {
  require_trace_form(f);
  p = std::max(p, kDerivativeFloor);
  switch (f.kind) {
    case EntropyKind::VonNeumann: return -1.0 / (p * kLn2);
    case EntropyKind::Quadratic: return -4.0;
    case EntropyKind::Tsallis:
      return -f.q * (f.q - 1.0) * std::pow(p, f.q - 2.0) / tsallis_norm(f.q);
    case EntropyKind::Renyi: break;
  }
  return 0.0;
}

bool majorizes(std::span<const double> a, std::span<const double> b) {
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  const std::size_t len = std::max(x.size(), y.size());
  x.resize(len, 0.0);
  y.resize(len, 0.0);
  std::sort(x.begin(), x.end(), std::greater<>());
  std::sort(y.begin(), y.end(), std::greater<>());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    sx += x[i];
    sy += y[i];
    if (sx < sy - 1e-10) return false;
  }
  return true;
}

bool majorizes(const RVector& a, const RVector& b) {
  return majorizes(std::span<const double>(a.data(), a.size()),
                   std::span<const double>(b.data(), b.size()));
}

}  // namespace fermiloss
