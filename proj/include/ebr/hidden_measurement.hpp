#pragma once

#include <cstdint>
#include <vector>

#include "ebr/observables.hpp"
#include "ebr/random.hpp"
#include "ebr/state_space.hpp"

namespace ebr {

/// Result of the orthogonal fall of a state onto the measurement simplex.
struct OnSimplexState {
  BlochVector r_par;       // on-simplex point
  RealVector barycentric;  // r_par = sum_i barycentric_i n_i
  BlochVector r_perp;      // r - r_par, orthogonal to the simplex
};

/// Barycentric coordinates of the point where the membrane breaks.
struct BreakingPoint {
  RealVector barycentric;
};

struct OutcomeRecord {
  BreakingPoint lambda;
  int outcome = 0;                  // refined outcome index selected by the region rule
  int group = 0;                    // index into the grouping (== outcome when non-degenerate)
  std::vector<int> group_members;
  DensityMatrix post_state;
  double probability_used = 0.0;    // r_i (or sum over the group)
  RealVector subsimplex_barycentric;  // point on the face spanned by the group
};

/// barycentric_i = Tr(D(r) P_i) = (1/N)(1 + (N-1) r . n_i).
/// Throws InvalidState if r does not represent a state.
OnSimplexState project_onto_simplex(const BlochVector& r, const MeasurementSimplex& sx);

/// mu(A_i) / mu(simplex), which equals the Born probabilities Tr(D P_i).
RealVector born_probabilities(const BlochVector& r, const MeasurementSimplex& sx);

/// (1 - tau) r + tau r_par
BlochVector trajectory_stage1(const BlochVector& r, const MeasurementSimplex& sx, double tau);

/// (1 - tau) r_par + tau n_i
BlochVector trajectory_stage2(const OnSimplexState& on, const MeasurementSimplex& sx, int outcome,
                              double tau);

/// Uniform point on the simplex: normalized unit exponentials.
BreakingPoint sample_lambda(const MeasurementSimplex& sx, RandomSource& rng);

/// Index i of the region A_i = hull({r_par} u {n_j : j != i}) containing
/// lambda, i.e. argmin_j lambda_j / r_j. Zero weights count as +inf; ties go
/// to the lowest index.
int region_of(const BreakingPoint& lambda, const OnSimplexState& on);
int region_of(const RealVector& lambda, const RealVector& weights);

OutcomeRecord run_measurement(const BlochVector& r, const MeasurementSimplex& sx, RandomSource& rng);

/// Degenerate measurement: regions of a group are fused, and the state is
/// sent to P_M D P_M / Tr(P_M D).
OutcomeRecord run_degenerate(const BlochVector& r, const MeasurementSimplex& sx,
                             const OutcomeGrouping& grouping, RandomSource& rng);

struct OutcomeStats {
  std::vector<int> members;
  double eigenvalue = 0.0;
  std::uint64_t count = 0;
  double frequency = 0.0;
  double probability = 0.0;
  double z_score = 0.0;
};

struct FrequencyReport {
  int dimension = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<OutcomeStats> outcomes;
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Runs `trials` independent measurements and compares the observed group
/// frequencies to the analytic Born probabilities.
FrequencyReport monte_carlo_report(const BlochVector& r, const MeasurementSimplex& sx,
                                   const OutcomeGrouping& grouping, std::uint64_t trials,
                                   std::uint64_t seed, unsigned threads = 1);

/// (freq - p) / sqrt(p(1-p)/trials); 0 when p is 0 or 1 and freq == p.
double binomial_z(double frequency, double probability, std::uint64_t trials);

/// Upper tail of the chi-square distribution.
double chi_square_p_value(double statistic, int dof);

}  // namespace ebr
