#include "ebr/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ebr/error.hpp"

namespace ebr::io {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw InvalidArgument("field '" + field + "': " + what);
}

int read_dimension(const json& j) {
  if (!j.is_object()) {
    throw InvalidArgument("document must be a JSON object");
  }
  if (!j.contains("n")) {
    field_error("n", "missing");
  }
  const json& n = j.at("n");
  if (!n.is_number_integer() || n.get<long long>() < 1 || n.get<long long>() > 64) {
    field_error("n", "must be a positive integer");
  }
  return n.get<int>();
}

std::string read_basis(const json& j) {
  if (!j.contains("basis")) {
    return "gellmann";
  }
  if (!j.at("basis").is_string()) {
    field_error("basis", "must be a string");
  }
  return j.at("basis").get<std::string>();
}

std::string join(const std::vector<int>& members) {
  std::string out;
  for (int m : members) {
    out += (out.empty() ? "" : ",") + std::to_string(m + 1);
  }
  return out;
}

json members_to_json(const std::vector<int>& members) {
  json arr = json::array();
  for (int m : members) {
    arr.push_back(m + 1);
  }
  return arr;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    field_error(field, "must be a non-empty array of rows");
  }
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      field_error(field, "row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        field_error(field, "entry [" + std::to_string(r) + "][" + std::to_string(c) +
                               "] must be [re, im]");
      }
    }
  }
  return m;
}

GeneratorBasis basis_by_name(const std::string& name, int n) {
  if (name == "gellmann") {
    return build_gell_mann(n);
  }
  if (name == "tensor") {
    if (n != 4) {
      throw InvalidDimension("tensor basis needs n = 4 (two qubits), got " + std::to_string(n));
    }
    return build_tensor_basis(2, 2);
  }
  throw InvalidArgument("unknown basis '" + name + "' (expected gellmann or tensor)");
}

std::string basis_name(const GeneratorBasis& basis) {
  return basis.determination.kind == Determination::Kind::GellMann ? "gellmann" : "tensor";
}

json basis_to_json(const GeneratorBasis& basis) {
  json mats = json::array();
  for (const Matrix& m : basis.matrices) {
    mats.push_back(matrix_to_json(m));
  }
  json doc = {{"schema", kSchema}, {"basis", basis_name(basis)}, {"n", basis.dimension},
              {"c_n", basis.c_n()}, {"matrices", std::move(mats)}};
  if (basis.determination.kind == Determination::Kind::TensorProduct) {
    doc["dims"] = {basis.determination.dim_a, basis.determination.dim_b};
  }
  return doc;
}

json basis_report_to_json(const GeneratorBasis& basis, const BasisReport& report) {
  return {{"schema", kSchema},
          {"basis", basis_name(basis)},
          {"n", basis.dimension},
          {"count", basis.size()},
          {"count_ok", report.count_ok},
          {"hermiticity", report.hermiticity},
          {"trace", report.trace},
          {"gram", report.gram},
          {"tolerance", report.tolerance},
          {"pass", report.pass()}};
}

StateDocument state_from_json(const json& j) {
  const int n = read_dimension(j);
  const std::string basis_label = read_basis(j);
  const bool has_matrix = j.contains("matrix");
  const bool has_bloch = j.contains("bloch");
  if (has_matrix == has_bloch) {
    throw InvalidArgument("state document needs exactly one of 'matrix' or 'bloch'");
  }
  if (has_matrix) {
    Matrix m = matrix_from_json(j.at("matrix"), "matrix");
    if (m.rows() != n) {
      field_error("matrix", "size " + std::to_string(m.rows()) + " does not match n = " + std::to_string(n));
    }
    try {
      return StateDocument{n, DensityMatrix::from_matrix(std::move(m)), basis_label};
    } catch (const InvalidState& e) {
      field_error("matrix", e.what());
    }
  }
  if (n < 2) {
    field_error("n", "Bloch vectors need n >= 2");
  }
  const json& arr = j.at("bloch");
  if (!arr.is_array()) {
    field_error("bloch", "must be an array of numbers");
  }
  RealVector r(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      field_error("bloch", "component " + std::to_string(i) + " is not a number");
    }
    r[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  if (r.size() != n * n - 1) {
    field_error("bloch", "needs " + std::to_string(n * n - 1) + " components for n = " + std::to_string(n));
  }
  BlochVector bloch(n, std::move(r));
  const GeneratorBasis basis = basis_by_name(basis_label, n);
  if (classify(bloch, basis) == StateKind::NotAState) {
    field_error("bloch", "vector is not a state (NotAState: D(r) has a negative eigenvalue)");
  }
  return StateDocument{n, std::move(bloch), basis_label};
}

json state_to_json(const DensityMatrix& d) {
  return {{"schema", kSchema}, {"n", d.dimension()}, {"matrix", matrix_to_json(d.matrix())}};
}

json state_to_json(const BlochVector& r, const std::string& basis) {
  json comps = json::array();
  for (int i = 0; i < r.size(); ++i) {
    comps.push_back(r[i]);
  }
  return {{"schema", kSchema}, {"n", r.dimension}, {"basis", basis}, {"bloch", std::move(comps)}};
}

DensityMatrix density_of(const StateDocument& doc) {
  if (const auto* d = std::get_if<DensityMatrix>(&doc.value)) {
    return *d;
  }
  const auto& r = std::get<BlochVector>(doc.value);
  Matrix m = from_bloch(r, basis_by_name(doc.basis, doc.n));
  m = 0.5 * (m + m.adjoint());
  return DensityMatrix::from_matrix(std::move(m));
}

Matrix observable_from_json(const json& j) {
  const int n = read_dimension(j);
  if (!j.contains("matrix")) {
    field_error("matrix", "missing");
  }
  Matrix m = matrix_from_json(j.at("matrix"), "matrix");
  if (m.rows() != n) {
    field_error("matrix", "size does not match n");
  }
  return m;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidArgument("cannot open '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
  }
}

StateDocument load_state(const std::string& path) { return state_from_json(read_json_file(path)); }

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidArgument("cannot write '" + path + "'");
  }
  out << j.dump(2) << '\n';
}

json frequency_report_to_json(const FrequencyReport& report) {
  json outcomes = json::array();
  for (const OutcomeStats& o : report.outcomes) {
    outcomes.push_back({{"outcomes", members_to_json(o.members)},
                        {"label", join(o.members)},
                        {"eigenvalue", o.eigenvalue},
                        {"count", o.count},
                        {"frequency", o.frequency},
                        {"probability", o.probability},
                        {"z", o.z_score}});
  }
  return {{"schema", kSchema},   {"n", report.dimension},       {"trials", report.trials},
          {"seed", report.seed}, {"outcomes", std::move(outcomes)}, {"chi_square", report.chi_square},
          {"dof", report.dof},   {"p_value", report.p_value}};
}

json joint_table_to_json(const JointTable& table) {
  json cells = json::array();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      cells.push_back({{"sA", spin_of(i)},
                       {"sB", spin_of(j)},
                       {"count", table.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]},
                       {"frequency", table.frequency(i, j)},
                       {"oracle", table.oracle(i, j)},
                       {"z", table.z_score(i, j)}});
    }
  }
  const CorrelationEstimate e = table.correlation();
  return {{"schema", kSchema},
          {"trials", table.trials},
          {"seed", table.seed},
          {"order", table.order == MeasurementOrder::AFirst ? "A" : "B"},
          {"axis_dot", table.axis_dot},
          {"joint", std::move(cells)},
          {"E", e.e_hat},
          {"stderr", e.std_error}};
}

json chsh_to_json(const ChshResult& result) {
  static const char* const kLabels[4] = {"ab", "ab'", "a'b", "a'b'"};
  json e = json::object();
  json se = json::object();
  for (std::size_t k = 0; k < 4; ++k) {
    e[kLabels[k]] = result.e[k].e_hat;
    se[kLabels[k]] = result.e[k].std_error;
  }
  return {{"schema", kSchema}, {"E", std::move(e)}, {"E_stderr", std::move(se)},
          {"S", result.s_hat}, {"stderr", result.std_error}};
}

}  // namespace ebr::io
