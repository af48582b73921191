#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "fermiloss/bogoliubov.hpp"
#include "fermiloss/fock.hpp"

namespace fermiloss {

using Json = nlohmann::json;

/// A state read from a state file. `psi` is set for pure representations.
struct StateFile {
  FockSpace space = FockSpace::build(1);
  std::string representation;
  CMatrix rho;
  std::optional<CVector> psi;
  // Present for the mixture representation.
  std::optional<double> w;
  std::optional<std::int64_t> d;
  std::optional<CVector> inner_psi;
};

/// Parses a state document. Errors name the offending JSON path.
StateFile parse_state(const Json& doc);
/// Reads and parses a state file; syntax errors report the line number.
StateFile load_state(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& where);
Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j, const std::string& where);
/// Row-major nested arrays of [re, im] pairs.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& where);

/// {"U": ..., "V": ...}
Json transform_to_json(const BogoliubovTransform& w);
BogoliubovTransform transform_from_json(const Json& j);

/// Serializes with every floating value printed with 17 significant digits.
std::string dump_json(const Json& j, int indent = 2);

}  // namespace fermiloss
