#pragma once

#include <array>
#include <cstdint>

#include "ebr/hidden_measurement.hpp"
#include "ebr/linalg.hpp"

namespace ebr {

enum class MeasurementOrder { AFirst, BFirst };

struct RodConfig {
  Vector3 n_a = Vector3::UnitZ();
  Vector3 n_b = Vector3::UnitZ();
  MeasurementOrder order = MeasurementOrder::AFirst;
};

struct TrialOutcome {
  int s_a = 1;
  int s_b = 1;
  /// Bloch vector the rod forces on the second-measured particle.
  Vector3 partner_bloch = Vector3::Zero();
};

/// Singlet pair measured sequentially. The first particle sits at the center
/// of its Bloch sphere and collapses through the two-outcome hidden
/// measurement; the rod then puts the partner at the antipode of that
/// outcome, and the partner is measured as a pure state along its own axis.
class RodExperiment {
 public:
  explicit RodExperiment(const RodConfig& cfg);

  TrialOutcome trial(RandomSource& rng) const;
  const RodConfig& config() const { return cfg_; }

 private:
  RodConfig cfg_;
  MeasurementSimplex first_;
  MeasurementSimplex second_;
  OnSimplexState first_on_;
  // Partner on-simplex states, indexed by the first outcome (0 -> +1, 1 -> -1).
  std::array<RealVector, 2> partner_weights_;
  std::array<Vector3, 2> partner_bloch_;
};

/// One trial routed through run_measurement for both particles.
TrialOutcome run_rod_trial(const RodConfig& cfg, RandomSource& rng);

struct CorrelationEstimate {
  double e_hat = 0.0;
  std::uint64_t trials = 0;
  double std_error = 0.0;
};

/// Cell [i][j] counts (sA, sB) with index 0 -> +1 and 1 -> -1.
struct JointTable {
  std::array<std::array<std::uint64_t, 2>, 2> counts{};
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double axis_dot = 0.0;  // nA . nB
  MeasurementOrder order = MeasurementOrder::AFirst;

  double frequency(int i, int j) const;
  /// Quantum prediction (1/4)(1 - sA sB nA.nB).
  double oracle(int i, int j) const;
  double z_score(int i, int j) const;
  double max_abs_z() const;
  CorrelationEstimate correlation() const;
};

inline int spin_of(int index) { return index == 0 ? 1 : -1; }

JointTable joint_distribution(const RodConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                              unsigned threads = 1);

CorrelationEstimate correlation(const RodConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                                unsigned threads = 1);

struct ChshResult {
  // E(a,b), E(a,b'), E(a',b), E(a',b')
  std::array<CorrelationEstimate, 4> e;
  double s_hat = 0.0;
  double std_error = 0.0;  // combined, sqrt of summed variances
};

/// S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')| from four independent runs.
ChshResult chsh(const Vector3& a, const Vector3& a_prime, const Vector3& b, const Vector3& b_prime,
                std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

struct OrderReport {
  JointTable a_first;
  JointTable b_first;
  double max_abs_z = 0.0;
  double threshold = 4.0;
  bool pass = false;
};

/// Runs both measurement orders on independent streams and checks each joint
/// table against the quantum prediction at `threshold` sigma per cell.
OrderReport order_invariance_check(const RodConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                                   unsigned threads = 1, double threshold = 4.0);

}  // namespace ebr
