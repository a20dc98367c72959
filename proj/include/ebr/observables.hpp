#pragma once

#include <memory>
#include <vector>

#include "ebr/linalg.hpp"
#include "ebr/su_basis.hpp"

namespace ebr {

inline constexpr double kDegeneracyTolerance = 1e-9;

/// O = sum_i o_i P_i with rank-1 projectors. Degenerate eigenspaces are
/// refined by the eigensolver's orthonormal vectors; `eigenvectors` records
/// the refinement (column i spans P_i).
struct SpectralDecomposition {
  RealVector eigenvalues;  // descending
  std::vector<Matrix> projectors;
  Matrix eigenvectors;

  int dimension() const { return static_cast<int>(eigenvalues.size()); }
};

/// Throws InvalidArgument when O deviates from Hermitian by more than
/// tol * max(1, |O|_max).
SpectralDecomposition spectral_decompose(const Matrix& observable, double tol = 1e-10);

/// Vertices n_i = Bloch(P_i) of the (N-1)-simplex spanned by the
/// measurement's eigenstates.
struct MeasurementSimplex {
  int dimension = 0;
  std::vector<RealVector> vertices;
  std::vector<Matrix> projectors;
  Matrix eigenvectors;
  RealVector eigenvalues;
  std::shared_ptr<const GeneratorBasis> basis;

  int size() const { return static_cast<int>(vertices.size()); }
  /// Bloch point sum_i w_i n_i for barycentric weights w.
  RealVector point(const RealVector& barycentric) const;
};

MeasurementSimplex simplex_of(const SpectralDecomposition& decomp,
                              std::shared_ptr<const GeneratorBasis> basis);

/// Partition of outcome indices {0..N-1} into groups of equal eigenvalue.
struct OutcomeGrouping {
  std::vector<std::vector<int>> groups;
  std::vector<double> eigenvalues;  // one per group
  std::vector<int> group_of;        // outcome index -> group index

  int size() const { return static_cast<int>(groups.size()); }
  static OutcomeGrouping singletons(const RealVector& eigenvalues);
};

/// Consecutive (descending) eigenvalues closer than deg_tol * max(1, max|o|)
/// share a group.
OutcomeGrouping group_degenerate(const SpectralDecomposition& decomp,
                                 double deg_tol = kDegeneracyTolerance);

/// Unit vector in the x-z plane at `degrees` from the z axis.
Vector3 axis_from_degrees(double degrees);

/// sigma . n
Matrix spin_observable(const Vector3& axis);

/// (sigma . a) x (sigma . b) on C^2 x C^2.
Matrix spin_product_observable(const Vector3& axis_a, const Vector3& axis_b);

}  // namespace ebr
