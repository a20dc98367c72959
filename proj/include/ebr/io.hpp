#pragma once

#include "json.hpp"
#include <string>
#include <variant>

#include "ebr/bell_rod.hpp"
#include "ebr/hidden_measurement.hpp"
#include "ebr/state_space.hpp"
#include "ebr/su_basis.hpp"

namespace ebr::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "ebr/1";

/// Row-major nested array of [re, im] pairs.
json matrix_to_json(const Matrix& m);
/// `field` names the JSON field in error messages.
Matrix matrix_from_json(const json& j, const std::string& field);

json basis_to_json(const GeneratorBasis& basis);
json basis_report_to_json(const GeneratorBasis& basis, const BasisReport& report);

/// Basis names accepted in documents and on the command line.
GeneratorBasis basis_by_name(const std::string& name, int n);
std::string basis_name(const GeneratorBasis& basis);

/// A state document holds either a density matrix or a Bloch vector
/// (interpreted in `basis`, default "gellmann").
struct StateDocument {
  int n = 0;
  std::variant<DensityMatrix, BlochVector> value;
  std::string basis = "gellmann";

  bool has_matrix() const { return std::holds_alternative<DensityMatrix>(value); }
};

/// Validates every invariant: Hermitian, unit trace and positive for
/// matrices; length and positivity of D(r) for Bloch vectors.
StateDocument state_from_json(const json& j);
json state_to_json(const DensityMatrix& d);
json state_to_json(const BlochVector& r, const std::string& basis);

/// Density matrix of a state document, regardless of representation.
DensityMatrix density_of(const StateDocument& doc);

Matrix observable_from_json(const json& j);

json read_json_file(const std::string& path);
StateDocument load_state(const std::string& path);
void save_json(const json& j, const std::string& path);

json frequency_report_to_json(const FrequencyReport& report);
json joint_table_to_json(const JointTable& table);
json chsh_to_json(const ChshResult& result);

}  // namespace ebr::io
