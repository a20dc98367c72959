#include "ebr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "ebr/bell_rod.hpp"
#include "ebr/composite.hpp"
#include "ebr/error.hpp"
#include "ebr/hidden_measurement.hpp"
#include "ebr/io.hpp"

namespace ebr::cli {

namespace {

using io::json;

struct Options {
  std::string basis = "gellmann";
  int n = 0;
  int dim_a = 2;
  int dim_b = 2;
  std::string state;
  std::string observable;
  std::string output;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double degenerate_tol = kDegeneracyTolerance;
  int steps = 0;
  int outcome = 0;  // 1-based; 0 = most probable
  double a = 0.0;
  double a_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
  std::string order = "A";
};

void emit(const std::string& text, const Options& opt, std::ostream& out) {
  if (opt.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.output);
  if (!file) {
    throw InvalidArgument("cannot write '" + opt.output + "'");
  }
  file << text;
}

void emit(const json& doc, const Options& opt, std::ostream& out) { emit(doc.dump(2) + "\n", opt, out); }

/// Named observables: "pauli-x|y|z" and "spin-product a=<deg> b=<deg>".
std::optional<Matrix> builtin_observable(const std::string& text) {
  if (text == "pauli-x") return pauli(1);
  if (text == "pauli-y") return pauli(2);
  if (text == "pauli-z") return pauli(3);
  if (text.rfind("spin-product", 0) != 0) {
    return std::nullopt;
  }
  static const std::regex kAngle(R"((a|b)\s*=\s*([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?))");
  std::optional<double> theta_a;
  std::optional<double> theta_b;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kAngle); it != std::sregex_iterator(); ++it) {
    const double value = std::stod((*it)[2].str());
    ((*it)[1].str() == "a" ? theta_a : theta_b) = value;
  }
  if (!theta_a || !theta_b) {
    throw InvalidArgument("observable 'spin-product' needs a=<degrees> and b=<degrees>");
  }
  return spin_product_observable(axis_from_degrees(*theta_a), axis_from_degrees(*theta_b));
}

Matrix load_observable(const std::string& text) {
  if (auto m = builtin_observable(text)) {
    return *m;
  }
  return io::observable_from_json(io::read_json_file(text));
}

struct Setup {
  std::shared_ptr<const GeneratorBasis> basis;
  DensityMatrix density;
  BlochVector bloch;
  SpectralDecomposition decomp;
  MeasurementSimplex simplex;
};

Setup prepare(const Options& opt) {
  const io::StateDocument doc = io::load_state(opt.state);
  DensityMatrix d = io::density_of(doc);
  const Matrix obs = load_observable(opt.observable);
  if (obs.rows() != d.dimension()) {
    throw DimensionMismatch("observable dimension " + std::to_string(obs.rows()) +
                            " does not match state dimension " + std::to_string(d.dimension()));
  }
  auto basis = std::make_shared<const GeneratorBasis>(io::basis_by_name(opt.basis, d.dimension()));
  BlochVector r = to_bloch(d.matrix(), *basis);
  SpectralDecomposition decomp = spectral_decompose(obs);
  MeasurementSimplex sx = simplex_of(decomp, basis);
  return Setup{std::move(basis), std::move(d), std::move(r), std::move(decomp), std::move(sx)};
}

int cmd_gen(const Options& opt, std::ostream& out) {
  const GeneratorBasis basis =
      opt.basis == "tensor" ? build_tensor_basis(opt.dim_a, opt.dim_b) : io::basis_by_name(opt.basis, opt.n);
  emit(io::basis_to_json(basis), opt, out);
  return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const GeneratorBasis basis =
      opt.basis == "tensor" ? build_tensor_basis(opt.dim_a, opt.dim_b) : io::basis_by_name(opt.basis, opt.n);
  const BasisReport report = verify_basis(basis);
  emit(io::basis_report_to_json(basis, report), opt, out);
  return report.pass() ? kOk : kValidationError;
}

int cmd_convert(const Options& opt, std::ostream& out) {
  const io::StateDocument doc = io::load_state(opt.state);
  if (doc.has_matrix()) {
    const GeneratorBasis basis = io::basis_by_name(opt.basis, doc.n);
    emit(io::state_to_json(to_bloch(std::get<DensityMatrix>(doc.value).matrix(), basis), opt.basis), opt, out);
  } else {
    emit(io::state_to_json(io::density_of(doc)), opt, out);
  }
  return kOk;
}

int cmd_measure(const Options& opt, std::ostream& out) {
  const Setup s = prepare(opt);
  const OutcomeGrouping grouping = group_degenerate(s.decomp, opt.degenerate_tol);
  const FrequencyReport report = monte_carlo_report(s.bloch, s.simplex, grouping, opt.trials, opt.seed, opt.threads);
  json doc = io::frequency_report_to_json(report);
  doc["basis"] = opt.basis;
  doc["degenerate_tol"] = opt.degenerate_tol;
  doc["refinement"] = io::matrix_to_json(s.decomp.eigenvectors);
  emit(doc, opt, out);
  return kOk;
}

int cmd_traject(const Options& opt, std::ostream& out) {
  if (opt.steps < 1) {
    throw InvalidArgument("--steps must be at least 1");
  }
  const Setup s = prepare(opt);
  const OnSimplexState on = project_onto_simplex(s.bloch, s.simplex);
  int target = opt.outcome - 1;
  if (opt.outcome == 0) {
    Eigen::Index best = 0;
    on.barycentric.maxCoeff(&best);
    target = static_cast<int>(best);
  }
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "stage,tau";
  for (int i = 1; i <= s.bloch.size(); ++i) {
    csv << ",r_" << i;
  }
  csv << '\n';
  auto row = [&](int stage, double tau, const BlochVector& r) {
    csv << stage << ',' << tau;
    for (int i = 0; i < r.size(); ++i) {
      csv << ',' << r[i];
    }
    csv << '\n';
  };
  for (int k = 0; k <= opt.steps; ++k) {
    const double tau = static_cast<double>(k) / opt.steps;
    row(1, tau, trajectory_stage1(s.bloch, s.simplex, tau));
  }
  for (int k = 0; k <= opt.steps; ++k) {
    const double tau = static_cast<double>(k) / opt.steps;
    row(2, tau, trajectory_stage2(on, s.simplex, target, tau));
  }
  emit(csv.str(), opt, out);
  return kOk;
}

int cmd_decompose(const Options& opt, std::ostream& out) {
  const io::StateDocument doc = io::load_state(opt.state);
  if (doc.n != 4) {
    throw InvalidDimension("decompose needs a two-qubit state (n = 4)");
  }
  const GeneratorBasis basis = build_tensor_basis(2, 2);
  const DecomposedBloch d = decompose_direct_sum(to_bloch(io::density_of(doc).matrix(), basis), basis);
  auto arr = [](const auto& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      a.push_back(v[i]);
    }
    return a;
  };
  emit(json{{"schema", io::kSchema},
            {"rA", arr(d.r_a)},
            {"rB", arr(d.r_b)},
            {"rcorr", arr(d.r_corr)},
            {"product", is_product(d)}},
       opt, out);
  return kOk;
}

int cmd_bell(const Options& opt, std::ostream& out) {
  const ChshResult result = chsh(axis_from_degrees(opt.a), axis_from_degrees(opt.a_prime), axis_from_degrees(opt.b),
                                 axis_from_degrees(opt.b_prime), opt.trials, opt.seed, opt.threads);
  json doc = io::chsh_to_json(result);
  doc["trials"] = opt.trials;
  doc["seed"] = opt.seed;
  doc["angles"] = {{"a", opt.a}, {"aprime", opt.a_prime}, {"b", opt.b}, {"bprime", opt.b_prime}};
  emit(doc, opt, out);
  return kOk;
}

int cmd_rod(const Options& opt, std::ostream& out) {
  if (opt.order != "A" && opt.order != "B") {
    throw InvalidArgument("--order must be A or B");
  }
  const RodConfig cfg{axis_from_degrees(opt.a), axis_from_degrees(opt.b),
                      opt.order == "A" ? MeasurementOrder::AFirst : MeasurementOrder::BFirst};
  json doc = io::joint_table_to_json(joint_distribution(cfg, opt.trials, opt.seed, opt.threads));
  doc["angles"] = {{"a", opt.a}, {"b", opt.b}};
  emit(doc, opt, out);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extended Bloch representation toolkit", "ebr"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::string> kBases{"gellmann", "tensor"};
  auto add_basis = [&](CLI::App* sub, bool with_n) {
    sub->add_option("--basis", opt.basis, "generator basis (gellmann|tensor)")
        ->check(CLI::IsMember(kBases))
        ->capture_default_str();
    if (with_n) {
      sub->add_option("--n", opt.n, "Hilbert-space dimension (gellmann)")->check(CLI::Range(2, 64));
      sub->add_option("--da", opt.dim_a, "subsystem A dimension (tensor)")->capture_default_str();
      sub->add_option("--db", opt.dim_b, "subsystem B dimension (tensor)")->capture_default_str();
    }
  };
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", opt.output, "write to file instead of stdout"); };
  auto add_trials = [&](CLI::App* sub) {
    sub->add_option("--trials", opt.trials, "number of trials")->required()->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "random seed")->required();
    sub->add_option("--threads", opt.threads, "worker threads (results do not depend on it)")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen", "export a generator basis as JSON");
  add_basis(gen, true);
  add_output(gen);

  auto* verify = app.add_subcommand("verify", "check Hermiticity, tracelessness and Gram normalization of a basis");
  add_basis(verify, true);
  add_output(verify);

  auto* convert = app.add_subcommand("convert", "convert a state between matrix and Bloch form");
  convert->add_option("--state", opt.state, "state JSON")->required();
  add_basis(convert, false);
  add_output(convert);

  auto* measure = app.add_subcommand("measure", "Monte Carlo hidden-measurement run");
  measure->add_option("--state", opt.state, "state JSON")->required();
  measure->add_option("--observable", opt.observable, "observable JSON or built-in name")->required();
  measure->add_option("--degenerate-tol", opt.degenerate_tol, "relative degeneracy tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_basis(measure, false);
  add_trials(measure);
  add_output(measure);

  auto* traject = app.add_subcommand("traject", "CSV of the fall and on-simplex trajectories");
  traject->add_option("--state", opt.state, "state JSON")->required();
  traject->add_option("--observable", opt.observable, "observable JSON or built-in name")->required();
  traject->add_option("--steps", opt.steps, "steps per stage")->required()->check(CLI::PositiveNumber);
  traject->add_option("--outcome", opt.outcome, "target outcome for stage 2 (1-based; default most probable)")
      ->check(CLI::PositiveNumber);
  add_basis(traject, false);
  add_output(traject);

  auto* decompose = app.add_subcommand("decompose", "direct-sum decomposition of a two-qubit state");
  decompose->add_option("--state", opt.state, "state JSON")->required();
  add_output(decompose);

  auto* bell = app.add_subcommand("bell", "CHSH estimate with the rigid-rod model");
  bell->add_option("--a", opt.a, "axis a (degrees, x-z plane)")->required();
  bell->add_option("--aprime", opt.a_prime, "axis a' (degrees)")->required();
  bell->add_option("--b", opt.b, "axis b (degrees)")->required();
  bell->add_option("--bprime", opt.b_prime, "axis b' (degrees)")->required();
  add_trials(bell);
  add_output(bell);

  auto* rod = app.add_subcommand("rod", "joint outcome table of the rigid-rod model");
  rod->add_option("--a", opt.a, "axis of A (degrees)")->required();
  rod->add_option("--b", opt.b, "axis of B (degrees)")->required();
  rod->add_option("--order", opt.order, "which particle is measured first (A|B)")
      ->check(CLI::IsMember({"A", "B"}))
      ->capture_default_str();
  add_trials(rod);
  add_output(rod);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (gen->parsed() || verify->parsed()) {
      if (opt.basis == "gellmann" && opt.n == 0) {
        err << "error: --n is required for the gellmann basis\n";
        return kUsageError;
      }
      return gen->parsed() ? cmd_gen(opt, out) : cmd_verify(opt, out);
    }
    if (convert->parsed()) return cmd_convert(opt, out);
    if (measure->parsed()) return cmd_measure(opt, out);
    if (traject->parsed()) return cmd_traject(opt, out);
    if (decompose->parsed()) return cmd_decompose(opt, out);
    if (bell->parsed()) return cmd_bell(opt, out);
    if (rod->parsed()) return cmd_rod(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  return kUsageError;
}

}  // namespace ebr::cli
