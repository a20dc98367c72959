#include "ebr/hidden_measurement.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "ebr/error.hpp"
#include "ebr/parallel.hpp"

namespace ebr {

namespace {

void check_dimensions(const BlochVector& r, const MeasurementSimplex& sx) {
  if (sx.size() == 0 || !sx.basis) {
    throw InvalidArgument("measurement simplex is empty");
  }
  if (r.dimension != sx.dimension || r.size() != sx.basis->size()) {
    throw DimensionMismatch("state dimension " + std::to_string(r.dimension) +
                            " does not match measurement dimension " + std::to_string(sx.dimension));
  }
}

void check_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw InvalidArgument("tau must lie in [0, 1]");
  }
}

// Barycentric weights of the fall, without the state check.
RealVector fall_weights(const BlochVector& r, const MeasurementSimplex& sx) {
  const int n = sx.dimension;
  RealVector w(n);
  for (int i = 0; i < n; ++i) {
    const double b = (1.0 + (n - 1.0) * r.components.dot(sx.vertices[static_cast<std::size_t>(i)])) / n;
    // Round-off around empty regions is snapped to exactly zero.
    w[i] = b <= kStructureTolerance ? 0.0 : b;
  }
  return w / w.sum();
}

int collapse(const RealVector& weights, const MeasurementSimplex& sx, RandomSource& rng) {
  return region_of(sample_lambda(sx, rng).barycentric, weights);
}

DensityMatrix lueders_state(const Matrix& d, const Matrix& p_group) {
  const Matrix numerator = p_group * d * p_group;
  const double p = numerator.trace().real();
  if (!(p > 0.0)) {
    throw InternalError("selected outcome group has zero probability");
  }
  Matrix post = numerator / p;
  post = 0.5 * (post + post.adjoint());
  post /= post.trace().real();
  return DensityMatrix::from_matrix(std::move(post));
}

}  // namespace

OnSimplexState project_onto_simplex(const BlochVector& r, const MeasurementSimplex& sx) {
  check_dimensions(r, sx);
  if (classify(r, *sx.basis) == StateKind::NotAState) {
    throw InvalidState("Bloch vector does not represent a state (operator is not positive)");
  }
  RealVector w = fall_weights(r, sx);
  BlochVector par(r.dimension, sx.point(w));
  BlochVector perp(r.dimension, r.components - par.components);
  return OnSimplexState{std::move(par), std::move(w), std::move(perp)};
}

RealVector born_probabilities(const BlochVector& r, const MeasurementSimplex& sx) {
  return project_onto_simplex(r, sx).barycentric;
}

BlochVector trajectory_stage1(const BlochVector& r, const MeasurementSimplex& sx, double tau) {
  check_tau(tau);
  const OnSimplexState on = project_onto_simplex(r, sx);
  return BlochVector(r.dimension, (1.0 - tau) * r.components + tau * on.r_par.components);
}

BlochVector trajectory_stage2(const OnSimplexState& on, const MeasurementSimplex& sx, int outcome,
                              double tau) {
  check_tau(tau);
  if (outcome < 0 || outcome >= sx.size()) {
    throw InvalidArgument("outcome index " + std::to_string(outcome) + " out of range");
  }
  if (on.r_par.dimension != sx.dimension) {
    throw DimensionMismatch("on-simplex state does not match the measurement");
  }
  return BlochVector(on.r_par.dimension, (1.0 - tau) * on.r_par.components +
                                             tau * sx.vertices[static_cast<std::size_t>(outcome)]);
}

BreakingPoint sample_lambda(const MeasurementSimplex& sx, RandomSource& rng) {
  const int n = sx.size();
  RealVector lambda(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    lambda[i] = rng.exponential();
    total += lambda[i];
  }
  if (total <= 0.0) {
    // All draws exactly zero; fall back to the centroid.
    lambda.setConstant(1.0 / n);
    return {lambda};
  }
  return {lambda / total};
}

int region_of(const RealVector& lambda, const RealVector& weights) {
  if (lambda.size() != weights.size() || lambda.size() == 0) {
    throw DimensionMismatch("breaking point and on-simplex state have different dimensions");
  }
  int best = -1;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (int j = 0; j < lambda.size(); ++j) {
    if (weights[j] <= 0.0) {
      continue;
    }
    const double ratio = lambda[j] / weights[j];
    if (best < 0 || ratio < best_ratio) {
      best = j;
      best_ratio = ratio;
    }
  }
  if (best < 0) {
    throw InternalError("on-simplex state has no positive weight");
  }
  return best;
}

int region_of(const BreakingPoint& lambda, const OnSimplexState& on) {
  return region_of(lambda.barycentric, on.barycentric);
}

OutcomeRecord run_measurement(const BlochVector& r, const MeasurementSimplex& sx, RandomSource& rng) {
  return run_degenerate(r, sx, OutcomeGrouping::singletons(sx.eigenvalues), rng);
}

OutcomeRecord run_degenerate(const BlochVector& r, const MeasurementSimplex& sx,
                             const OutcomeGrouping& grouping, RandomSource& rng) {
  if (static_cast<int>(grouping.group_of.size()) != sx.size()) {
    throw DimensionMismatch("grouping does not cover the measurement outcomes");
  }
  const OnSimplexState on = project_onto_simplex(r, sx);
  BreakingPoint lambda = sample_lambda(sx, rng);
  const int outcome = region_of(lambda, on);
  const int group = grouping.group_of[static_cast<std::size_t>(outcome)];
  const std::vector<int>& members = grouping.groups[static_cast<std::size_t>(group)];

  double p_group = 0.0;
  Matrix p_sum = Matrix::Zero(sx.dimension, sx.dimension);
  for (int k : members) {
    p_group += on.barycentric[k];
    p_sum += sx.projectors[static_cast<std::size_t>(k)];
  }
  RealVector face = RealVector::Zero(sx.size());
  for (int k : members) {
    face[k] = on.barycentric[k] / p_group;
  }

  DensityMatrix post = members.size() == 1
                           ? DensityMatrix::from_matrix(sx.projectors[static_cast<std::size_t>(outcome)])
                           : lueders_state(from_bloch(r, *sx.basis), p_sum);
  return OutcomeRecord{.lambda = std::move(lambda),
                       .outcome = outcome,
                       .group = group,
                       .group_members = members,
                       .post_state = std::move(post),
                       .probability_used = p_group,
                       .subsimplex_barycentric = std::move(face)};
}

double binomial_z(double frequency, double probability, std::uint64_t trials) {
  const double sigma = std::sqrt(probability * (1.0 - probability) / static_cast<double>(trials));
  if (sigma > 0.0) {
    return (frequency - probability) / sigma;
  }
  if (std::abs(frequency - probability) <= 1e-12) {
    return 0.0;
  }
  return frequency > probability ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
}

double chi_square_p_value(double statistic, int dof) {
  if (dof <= 0) {
    return 1.0;
  }
  if (!std::isfinite(statistic)) {
    return 0.0;
  }
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

FrequencyReport monte_carlo_report(const BlochVector& r, const MeasurementSimplex& sx,
                                   const OutcomeGrouping& grouping, std::uint64_t trials,
                                   std::uint64_t seed, unsigned threads) {
  if (trials == 0) {
    throw InvalidArgument("trials must be positive");
  }
  if (static_cast<int>(grouping.group_of.size()) != sx.size()) {
    throw DimensionMismatch("grouping does not cover the measurement outcomes");
  }
  const OnSimplexState on = project_onto_simplex(r, sx);
  const RandomSource root(seed);
  const std::size_t outcomes = static_cast<std::size_t>(sx.size());

  std::vector<std::vector<std::uint64_t>> block_counts(block_count(trials),
                                                       std::vector<std::uint64_t>(outcomes, 0));
  for_each_block(trials, threads, [&](std::uint64_t b, std::uint64_t first, std::uint64_t end) {
    RandomSource rng = root.child(b);
    auto& counts = block_counts[b];
    for (std::uint64_t t = first; t < end; ++t) {
      ++counts[static_cast<std::size_t>(collapse(on.barycentric, sx, rng))];
    }
  });

  FrequencyReport report;
  report.dimension = sx.dimension;
  report.trials = trials;
  report.seed = seed;
  const double total = static_cast<double>(trials);
  int positive = 0;
  for (int g = 0; g < grouping.size(); ++g) {
    OutcomeStats stats;
    stats.members = grouping.groups[static_cast<std::size_t>(g)];
    stats.eigenvalue = grouping.eigenvalues[static_cast<std::size_t>(g)];
    for (int k : stats.members) {
      stats.probability += on.barycentric[k];
      for (const auto& counts : block_counts) {
        stats.count += counts[static_cast<std::size_t>(k)];
      }
    }
    stats.frequency = static_cast<double>(stats.count) / total;
    stats.z_score = binomial_z(stats.frequency, stats.probability, trials);
    const double expected = total * stats.probability;
    if (expected > 0.0) {
      const double diff = static_cast<double>(stats.count) - expected;
      report.chi_square += diff * diff / expected;
      ++positive;
    } else if (stats.count > 0) {
      report.chi_square = std::numeric_limits<double>::infinity();
    }
    report.outcomes.push_back(std::move(stats));
  }
  report.dof = std::max(0, positive - 1);
  report.p_value = chi_square_p_value(report.chi_square, report.dof);
  return report;
}

}  // namespace ebr
