#include "ebr/bell_rod.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "ebr/error.hpp"
#include "ebr/parallel.hpp"

namespace ebr {

namespace {

const std::shared_ptr<const GeneratorBasis>& qubit_basis() {
  static const auto basis = std::make_shared<const GeneratorBasis>(build_gell_mann(2));
  return basis;
}

void check_axis(const Vector3& n) {
  if (std::abs(n.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("measurement axes must be unit vectors");
  }
}

MeasurementSimplex spin_simplex(const Vector3& axis) {
  return simplex_of(spectral_decompose(spin_observable(axis)), qubit_basis());
}

BlochVector qubit_bloch(const Vector3& v) { return BlochVector(2, RealVector(v)); }

}  // namespace

RodExperiment::RodExperiment(const RodConfig& cfg)
    : cfg_(cfg),
      first_(spin_simplex(cfg.order == MeasurementOrder::AFirst ? cfg.n_a : cfg.n_b)),
      second_(spin_simplex(cfg.order == MeasurementOrder::AFirst ? cfg.n_b : cfg.n_a)),
      first_on_(project_onto_simplex(qubit_bloch(Vector3::Zero()), first_)) {
  check_axis(cfg.n_a);
  check_axis(cfg.n_b);
  for (int k = 0; k < 2; ++k) {
    const Vector3 antipode = -Vector3(first_.vertices[static_cast<std::size_t>(k)]);
    partner_bloch_[static_cast<std::size_t>(k)] = antipode;
    partner_weights_[static_cast<std::size_t>(k)] =
        project_onto_simplex(qubit_bloch(antipode), second_).barycentric;
  }
}

TrialOutcome RodExperiment::trial(RandomSource& rng) const {
  const int first = region_of(sample_lambda(first_, rng), first_on_);
  const auto k = static_cast<std::size_t>(first);
  const int second = region_of(sample_lambda(second_, rng).barycentric, partner_weights_[k]);
  TrialOutcome out;
  out.partner_bloch = partner_bloch_[k];
  if (cfg_.order == MeasurementOrder::AFirst) {
    out.s_a = spin_of(first);
    out.s_b = spin_of(second);
  } else {
    out.s_b = spin_of(first);
    out.s_a = spin_of(second);
  }
  return out;
}

TrialOutcome run_rod_trial(const RodConfig& cfg, RandomSource& rng) {
  check_axis(cfg.n_a);
  check_axis(cfg.n_b);
  const bool a_first = cfg.order == MeasurementOrder::AFirst;
  const MeasurementSimplex first = spin_simplex(a_first ? cfg.n_a : cfg.n_b);
  const MeasurementSimplex second = spin_simplex(a_first ? cfg.n_b : cfg.n_a);

  const OutcomeRecord r1 = run_measurement(qubit_bloch(Vector3::Zero()), first, rng);
  const Vector3 partner = -Vector3(first.vertices[static_cast<std::size_t>(r1.outcome)]);
  const OutcomeRecord r2 = run_measurement(qubit_bloch(partner), second, rng);

  TrialOutcome out;
  out.partner_bloch = partner;
  out.s_a = spin_of(a_first ? r1.outcome : r2.outcome);
  out.s_b = spin_of(a_first ? r2.outcome : r1.outcome);
  return out;
}

double JointTable::frequency(int i, int j) const {
  return static_cast<double>(counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
         static_cast<double>(trials);
}

double JointTable::oracle(int i, int j) const {
  return 0.25 * (1.0 - spin_of(i) * spin_of(j) * axis_dot);
}

double JointTable::z_score(int i, int j) const {
  return binomial_z(frequency(i, j), std::clamp(oracle(i, j), 0.0, 1.0), trials);
}

double JointTable::max_abs_z() const {
  double z = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      z = std::max(z, std::abs(z_score(i, j)));
    }
  }
  return z;
}

CorrelationEstimate JointTable::correlation() const {
  const double same = static_cast<double>(counts[0][0] + counts[1][1]);
  const double diff = static_cast<double>(counts[0][1] + counts[1][0]);
  const double n = static_cast<double>(trials);
  CorrelationEstimate est;
  est.trials = trials;
  est.e_hat = (same - diff) / n;
  est.std_error = std::sqrt(std::max(0.0, 1.0 - est.e_hat * est.e_hat) / n);
  return est;
}

JointTable joint_distribution(const RodConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                              unsigned threads) {
  if (trials == 0) {
    throw InvalidArgument("trials must be positive");
  }
  const RodExperiment experiment(cfg);
  const RandomSource root(seed);
  using Cells = std::array<std::array<std::uint64_t, 2>, 2>;
  std::vector<Cells> blocks(block_count(trials), Cells{});
  for_each_block(trials, threads, [&](std::uint64_t b, std::uint64_t first, std::uint64_t end) {
    RandomSource rng = root.child(b);
    Cells& cells = blocks[b];
    for (std::uint64_t t = first; t < end; ++t) {
      const TrialOutcome o = experiment.trial(rng);
      ++cells[o.s_a > 0 ? 0 : 1][o.s_b > 0 ? 0 : 1];
    }
  });

  JointTable table;
  table.trials = trials;
  table.seed = seed;
  table.axis_dot = cfg.n_a.dot(cfg.n_b);
  table.order = cfg.order;
  for (const Cells& cells : blocks) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        table.counts[i][j] += cells[i][j];
      }
    }
  }
  return table;
}

CorrelationEstimate correlation(const RodConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                                unsigned threads) {
  return joint_distribution(cfg, trials, seed, threads).correlation();
}

ChshResult chsh(const Vector3& a, const Vector3& a_prime, const Vector3& b, const Vector3& b_prime,
                std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  const std::array<std::pair<const Vector3*, const Vector3*>, 4> pairs{
      {{&a, &b}, {&a, &b_prime}, {&a_prime, &b}, {&a_prime, &b_prime}}};
  ChshResult result;
  double variance = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const RodConfig cfg{*pairs[k].first, *pairs[k].second, MeasurementOrder::AFirst};
    result.e[k] = correlation(cfg, trials, derive_seed(seed, k), threads);
    variance += result.e[k].std_error * result.e[k].std_error;
  }
  result.s_hat = std::abs(result.e[0].e_hat - result.e[1].e_hat + result.e[2].e_hat + result.e[3].e_hat);
  result.std_error = std::sqrt(variance);
  return result;
}

OrderReport order_invariance_check(const RodConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                                   unsigned threads, double threshold) {
  RodConfig a_cfg = cfg;
  a_cfg.order = MeasurementOrder::AFirst;
  RodConfig b_cfg = cfg;
  b_cfg.order = MeasurementOrder::BFirst;
  OrderReport report{joint_distribution(a_cfg, trials, derive_seed(seed, 0), threads),
                     joint_distribution(b_cfg, trials, derive_seed(seed, 1), threads)};
  report.threshold = threshold;
  report.max_abs_z = std::max(report.a_first.max_abs_z(), report.b_first.max_abs_z());
  report.pass = report.max_abs_z <= threshold;
  return report;
}

}  // namespace ebr
