// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ebr/bell_rod.hpp"
#include "ebr/cli.hpp"
#include "ebr/composite.hpp"
#include "ebr/hidden_measurement.hpp"
#include "ebr/observables.hpp"
#include "ebr/state_space.hpp"
#include "ebr/su_basis.hpp"
#include "oracles.hpp"

using namespace ebr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the worst value seen against a bound.
struct Worst {
  double value = 0.0;
  void see(double v) { value = std::max(value, v); }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::shared_ptr<const GeneratorBasis> shared_gell_mann(int n) {
  return std::make_shared<const GeneratorBasis>(build_gell_mann(n));
}

MeasurementSimplex random_simplex(int n, const std::shared_ptr<const GeneratorBasis>& basis, RandomSource& rng) {
  return simplex_of(spectral_decompose(random_hermitian(n, rng)), basis);
}

Outcome generator_suites() {
  Outcome out;
  Worst w;
  for (int n = 2; n <= 5; ++n) {
    const BasisReport rep = verify_basis(build_gell_mann(n), 1e-12);
    out.pass &= rep.pass();
    w.see(std::max({rep.hermiticity, rep.trace, rep.gram}));
  }
  const GeneratorBasis tb = build_tensor_basis(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  const oracle::Matrix id = oracle::Matrix::Identity(2, 2);
  std::vector<oracle::Matrix> expected;
  for (int a = 1; a <= 3; ++a) expected.push_back(s * oracle::kron(oracle::sigma(a), id));
  for (int b = 1; b <= 3; ++b) expected.push_back(s * oracle::kron(id, oracle::sigma(b)));
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) expected.push_back(s * oracle::kron(oracle::sigma(a), oracle::sigma(b)));
  double list_dev = tb.size() == 15 ? 0.0 : 1.0;
  for (std::size_t i = 0; i < expected.size() && i < tb.matrices.size(); ++i)
    list_dev = std::max(list_dev, (tb.matrices[i] - expected[i]).cwiseAbs().maxCoeff());
  out.pass &= list_dev <= 1e-12 && verify_basis(tb).pass();
  out.detail = "N=2..5 max deviation " + fmt("%.2e", w.value) + ", tensor list deviation " + fmt("%.2e", list_dev);
  return out;
}

Outcome bloch_round_trip() {
  RandomSource rng(101);
  Worst round, pur;
  for (int n = 2; n <= 4; ++n) {
    const GeneratorBasis b = build_gell_mann(n);
    for (int k = 0; k < 100; ++k) {
      const DensityMatrix d = random_mixed(n, rng);
      const BlochVector r = to_bloch(d, b);
      round.see((from_bloch(r, b) - d.matrix()).cwiseAbs().maxCoeff());
      pur.see(std::abs(purity(r) - (d.matrix() * d.matrix()).trace().real()));
    }
  }
  Outcome out;
  out.pass = round.value <= 1e-12 && pur.value <= 1e-12;
  out.detail = "round trip " + fmt("%.2e", round.value) + ", purity " + fmt("%.2e", pur.value);
  return out;
}

Outcome simplex_geometry() {
  RandomSource rng(102);
  Worst w;
  for (int n = 2; n <= 4; ++n) {
    const auto basis = shared_gell_mann(n);
    for (int k = 0; k < 50; ++k) {
      const MeasurementSimplex sx = random_simplex(n, basis, rng);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double expect = (n * (i == j ? 1.0 : 0.0) - 1.0) / (n - 1);
          w.see(std::abs(sx.vertices[static_cast<std::size_t>(i)].dot(sx.vertices[static_cast<std::size_t>(j)]) - expect));
        }
    }
  }
  return {w.value <= 1e-10, "max Gram deviation " + fmt("%.2e", w.value)};
}

Outcome born_analytic() {
  RandomSource rng(102);
  Worst w;
  for (int n = 2; n <= 4; ++n) {
    const auto basis = shared_gell_mann(n);
    for (int k = 0; k < 50; ++k) {
      const MeasurementSimplex sx = random_simplex(n, basis, rng);
      const DensityMatrix d = k % 2 ? random_pure(n, rng) : random_mixed(n, rng);
      const RealVector p = born_probabilities(to_bloch(d, *basis), sx);
      for (int i = 0; i < n; ++i)
        w.see(std::abs(p[i] - oracle::trace_prob(d.matrix(), sx.projectors[static_cast<std::size_t>(i)])));
    }
  }
  return {w.value <= 1e-10, "max |p - Tr(DP)| " + fmt("%.2e", w.value)};
}

Outcome born_monte_carlo() {
  RandomSource rng(103);
  Outcome out;
  double worst_z = 0.0, min_p = 1.0;
  for (int n = 2; n <= 4; ++n) {
    const auto basis = shared_gell_mann(n);
    for (int k = 0; k < 10; ++k) {
      const MeasurementSimplex sx = random_simplex(n, basis, rng);
      const DensityMatrix d = k % 2 ? random_pure(n, rng) : random_mixed(n, rng);
      const BlochVector r = to_bloch(d, *basis);
      const FrequencyReport rep =
          monte_carlo_report(r, sx, OutcomeGrouping::singletons(sx.eigenvalues), 100000, 1000 + 10 * n + k);
      for (std::size_t i = 0; i < rep.outcomes.size(); ++i) {
        const double p = oracle::trace_prob(d.matrix(), sx.projectors[i]);
        const double sigma = std::sqrt(p * (1 - p) / 1e5);
        const double dev = std::abs(rep.outcomes[i].frequency - p);
        out.pass &= dev <= 4 * sigma;
        if (sigma > 0) worst_z = std::max(worst_z, dev / sigma);
      }
      out.pass &= rep.p_value > 1e-4;
      min_p = std::min(min_p, rep.p_value);
    }
  }
  out.detail = "max |z| " + fmt("%.2f", worst_z) + ", min chi-square p " + fmt("%.3g", min_p);
  return out;
}

Outcome region_rule() {
  RandomSource rng(104);
  constexpr double kTie = 1e-9;
  long disagreements = 0, ties = 0, total = 0;
  for (int n = 2; n <= 4; ++n) {
    const auto basis = shared_gell_mann(n);
    const MeasurementSimplex sx = random_simplex(n, basis, rng);
    for (int k = 0; k < 10000; ++k) {
      const BlochVector r = to_bloch(k % 2 ? random_pure(n, rng) : random_mixed(n, rng), *basis);
      const OnSimplexState on = project_onto_simplex(r, sx);
      const BreakingPoint lambda = sample_lambda(sx, rng);
      const RealVector x = sx.point(lambda.barycentric);
      const int rule = region_of(lambda, on);
      int best = 0;
      double best_margin = -1e300, second = -1e300;
      for (int j = 0; j < n; ++j) {
        const double m = oracle::hull_margin(x, on.r_par.components, sx.vertices, j);
        if (m > best_margin) {
          second = best_margin;
          best_margin = m;
          best = j;
        } else if (m > second) {
          second = m;
        }
      }
      ++total;
      if (best_margin - second <= kTie || std::abs(best_margin) <= kTie) {
        ++ties;
        continue;
      }
      if (best != rule) ++disagreements;
    }
  }
  return {disagreements == 0, std::to_string(total) + " instances, " + std::to_string(disagreements) +
                                  " disagreements, " + std::to_string(ties) + " on tie boundaries"};
}

Outcome trajectory() {
  RandomSource rng(105);
  Worst coh, born;
  for (int n = 2; n <= 4; ++n) {
    const auto basis = shared_gell_mann(n);
    for (int k = 0; k < 20; ++k) {
      const MeasurementSimplex sx = random_simplex(n, basis, rng);
      const DensityMatrix d = k % 2 ? random_pure(n, rng) : random_mixed(n, rng);
      const BlochVector r = to_bloch(d, *basis);
      const Matrix d0 = sx.eigenvectors.adjoint() * d.matrix() * sx.eigenvectors;
      const RealVector p0 = born_probabilities(r, sx);
      for (double tau : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const BlochVector rt = trajectory_stage1(r, sx, tau);
        const Matrix dt = sx.eigenvectors.adjoint() * from_bloch(rt, *basis) * sx.eigenvectors;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i != j) coh.see(std::abs(dt(i, j) - (1.0 - tau) * d0(i, j)));
        born.see((born_probabilities(rt, sx) - p0).cwiseAbs().maxCoeff());
      }
    }
  }
  return {coh.value <= 1e-12 && born.value <= 1e-10,
          "coherence deviation " + fmt("%.2e", coh.value) + ", Born drift " + fmt("%.2e", born.value)};
}

Outcome degenerate() {
  RandomSource rng(106);
  const auto basis = std::make_shared<const GeneratorBasis>(build_tensor_basis(2, 2));
  Outcome out;
  double worst_z = 0.0;
  Worst lueders, face;
  for (int k = 0; k < 10; ++k) {
    const Vector3 a = random_unit_vector(rng), b = random_unit_vector(rng);
    const SpectralDecomposition dec = spectral_decompose(spin_product_observable(a, b));
    const MeasurementSimplex sx = simplex_of(dec, basis);
    const OutcomeGrouping g = group_degenerate(dec);
    if (g.size() != 2) return {false, "spin-product observable did not fuse into two groups"};
    const DensityMatrix d = k % 2 ? random_pure(4, rng) : random_mixed(4, rng);
    const BlochVector r = to_bloch(d, *basis);
    const FrequencyReport rep = monte_carlo_report(r, sx, g, 100000, 2000 + k);
    const oracle::Matrix prod = oracle::kron(a[0] * oracle::sigma(1) + a[1] * oracle::sigma(2) + a[2] * oracle::sigma(3),
                                             b[0] * oracle::sigma(1) + b[1] * oracle::sigma(2) + b[2] * oracle::sigma(3));
    for (std::size_t m = 0; m < 2; ++m) {
      const double sign = rep.outcomes[m].eigenvalue > 0 ? 1.0 : -1.0;
      const oracle::Matrix pm = 0.5 * (oracle::Matrix::Identity(4, 4) + sign * prod);
      const double p = oracle::trace_prob(d.matrix(), pm);
      const double sigma = std::sqrt(p * (1 - p) / 1e5);
      const double dev = std::abs(rep.outcomes[m].frequency - p);
      out.pass &= dev <= 4 * sigma;
      if (sigma > 0) worst_z = std::max(worst_z, dev / sigma);
    }
    for (int t = 0; t < 50; ++t) {
      const OutcomeRecord rec = run_degenerate(r, sx, g, rng);
      lueders.see((rec.post_state.matrix() - oracle::lueders(d.matrix(), sx.eigenvectors, rec.group_members))
                      .cwiseAbs()
                      .maxCoeff());
      const OnSimplexState on = project_onto_simplex(to_bloch(rec.post_state, *basis), sx);
      face.see((on.barycentric - rec.subsimplex_barycentric).cwiseAbs().maxCoeff());
    }
  }
  out.pass &= lueders.value <= 1e-10 && face.value <= 1e-10;
  out.detail = "max |z| " + fmt("%.2f", worst_z) + ", Lueders " + fmt("%.2e", lueders.value) + ", sub-simplex " +
               fmt("%.2e", face.value);
  return out;
}

Outcome direct_sum() {
  RandomSource rng(107);
  const GeneratorBasis tb = build_tensor_basis(2, 2);
  const GeneratorBasis qb = build_gell_mann(2);
  Worst parts, singlet, prod;
  for (int k = 0; k < 100; ++k) {
    const BipartiteState s = make_bipartite(k % 2 ? random_pure(4, rng) : random_mixed(4, rng));
    const DecomposedBloch d = decompose_direct_sum(to_bloch(s.joint, tb), tb);
    parts.see((d.r_a - Vector3(to_bloch(partial_trace(s, Subsystem::A), qb).components)).norm());
    parts.see((d.r_b - Vector3(to_bloch(partial_trace(s, Subsystem::B), qb).components)).norm());
  }
  const BipartiteState s = build_entangled(singlet_params());
  const DecomposedBloch ds = decompose_direct_sum(to_bloch(s.joint, tb), tb);
  singlet.see(std::max(ds.r_a.norm(), ds.r_b.norm()));
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      const double direct = oracle::trace_prob(s.joint.matrix(), oracle::kron(oracle::sigma(a), oracle::sigma(b)) / std::sqrt(2.0)) *
                            4.0 / (2.0 * std::sqrt(6.0));
      singlet.see(std::abs(ds.corr(a - 1, b - 1) - direct));
      singlet.see(std::abs(ds.corr(a - 1, b - 1) - (a == b ? -1.0 / std::sqrt(3.0) : 0.0)));
    }
  singlet.see(std::abs(ds.r_corr.norm() - 1.0));
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix a = k % 2 ? random_pure(2, rng) : random_mixed(2, rng);
    const DensityMatrix b = k % 2 ? random_pure(2, rng) : random_mixed(2, rng);
    const BipartiteState p = make_bipartite(DensityMatrix::from_matrix(oracle::kron(a.matrix(), b.matrix())));
    const DecomposedBloch d = decompose_direct_sum(to_bloch(p.joint, tb), tb);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) prod.see(std::abs(d.corr(i, j) - d.r_a[i] * d.r_b[j] / std::sqrt(3.0)));
  }
  return {parts.value <= 1e-10 && singlet.value <= 1e-12 && prod.value <= 1e-10,
          "partial traces " + fmt("%.2e", parts.value) + ", singlet " + fmt("%.2e", singlet.value) + ", product " +
              fmt("%.2e", prod.value)};
}

Outcome rod_model() {
  RandomSource rng(108);
  Outcome out;
  double worst_e = 0.0, worst_marg = 0.0, worst_cell = 0.0;
  for (int k = 0; k < 12; ++k) {
    const RodConfig cfg{random_unit_vector(rng), random_unit_vector(rng), MeasurementOrder::AFirst};
    const OrderReport rep = order_invariance_check(cfg, 1000000, 3000 + k);
    out.pass &= rep.pass;
    worst_cell = std::max(worst_cell, rep.max_abs_z);
    for (const JointTable* t : {&rep.a_first, &rep.b_first}) {
      const CorrelationEstimate e = t->correlation();
      const double expect = oracle::singlet_correlation(cfg.n_a, cfg.n_b);
      const double dev = std::abs(e.e_hat - expect);
      if (e.std_error > 0) {
        out.pass &= dev <= 4 * e.std_error;
        worst_e = std::max(worst_e, dev / e.std_error);
      } else {
        out.pass &= dev <= 1e-12;
      }
      const double n = static_cast<double>(t->trials);
      const double sigma = std::sqrt(0.25 / n);
      const double plus_a = static_cast<double>(t->counts[0][0] + t->counts[0][1]) / n;
      const double plus_b = static_cast<double>(t->counts[0][0] + t->counts[1][0]) / n;
      const double marg = std::max(std::abs(plus_a - 0.5), std::abs(plus_b - 0.5)) / sigma;
      out.pass &= marg <= 4.0;
      worst_marg = std::max(worst_marg, marg);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const double p = 0.25 * (1.0 - spin_of(i) * spin_of(j) * cfg.n_a.dot(cfg.n_b));
          const double s = std::sqrt(p * (1 - p) / n);
          const double dev_cell = std::abs(t->frequency(i, j) - p);
          out.pass &= s > 0 ? dev_cell <= 4 * s : dev_cell == 0.0;
        }
    }
  }
  out.detail = "max E z " + fmt("%.2f", worst_e) + ", marginal z " + fmt("%.2f", worst_marg) + ", cell z " +
               fmt("%.2f", worst_cell);
  return out;
}

Outcome chsh_check() {
  const ChshResult best = chsh(axis_from_degrees(0), axis_from_degrees(90), axis_from_degrees(45),
                               axis_from_degrees(135), 1000000, 4000);
  const Vector3 n = axis_from_degrees(0);
  const ChshResult same = chsh(n, n, n, n, 1000000, 4001);
  const bool pass = std::abs(best.s_hat - 2.0 * std::sqrt(2.0)) <= 0.02 && same.s_hat <= 2.0 + 4.0 * same.std_error;
  return {pass, "optimal S " + fmt("%.4f", best.s_hat) + ", equal-axes S " + fmt("%.4f", same.s_hat)};
}

std::string cli_output(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ebr_acceptance";
  fs::create_directories(dir);
  const std::string st3 = (dir / "state3.json").string();
  const std::string ob3 = (dir / "obs3.json").string();
  const std::string st4 = (dir / "state4.json").string();
  std::ofstream(st3) << R"({"n": 3, "bloch": [0.1, 0.2, -0.1, 0.05, 0.3, 0.0, 0.1, -0.2]})";
  std::ofstream(ob3) << R"({"n": 3, "matrix": [[1, [0, 1], 0], [[0, -1], 2, 0.5], [0, 0.5, -1]]})";
  std::ofstream(st4) << R"({"n": 4, "matrix": [[0.4,0,0,0],[0,0.3,0.1,0],[0,0.1,0.2,0],[0,0,0,0.1]]})";

  const std::vector<std::vector<std::string>> runs = {
      {"measure", "--state", st3, "--observable", ob3, "--trials", "300000", "--seed", "17"},
      {"measure", "--state", st4, "--observable", "spin-product a=30 b=75", "--basis", "tensor", "--trials", "300000",
       "--seed", "18"},
      {"bell", "--a", "0", "--aprime", "90", "--b", "45", "--bprime", "135", "--trials", "300000", "--seed", "19"},
      {"rod", "--a", "10", "--b", "100", "--order", "A", "--trials", "300000", "--seed", "20"},
      {"rod", "--a", "10", "--b", "100", "--order", "B", "--trials", "300000", "--seed", "20"},
  };
  int identical = 0;
  bool pass = true;
  for (const auto& base : runs) {
    std::vector<std::string> one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const std::string a = cli_output(one);
    const std::string b = cli_output(four);
    const std::string c = cli_output(one);
    const bool same = a.rfind("0\n", 0) == 0 && a == b && a == c;
    pass &= same;
    identical += same;
  }
  // Library level, the large acceptance runs themselves.
  const RodConfig cfg{axis_from_degrees(20), axis_from_degrees(65), MeasurementOrder::AFirst};
  const JointTable t1 = joint_distribution(cfg, 1000000, 3000, 1);
  const JointTable t4 = joint_distribution(cfg, 1000000, 3000, 4);
  pass &= t1.counts == t4.counts;
  return {pass, std::to_string(identical) + "/" + std::to_string(runs.size()) +
                    " cli reports byte-identical across repeats and thread counts"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"generator suites", generator_suites},
      {"Bloch round trip and purity", bloch_round_trip},
      {"measurement simplex geometry", simplex_geometry},
      {"Born rule, analytic", born_analytic},
      {"Born rule, Monte Carlo", born_monte_carlo},
      {"region rule vs hull oracle", region_rule},
      {"decoherence trajectory", trajectory},
      {"degenerate measurements", degenerate},
      {"direct-sum decomposition", direct_sum},
      {"rigid-rod model", rod_model},
      {"CHSH", chsh_check},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
    ++index;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
