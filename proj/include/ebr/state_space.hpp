#pragma once

#include "ebr/linalg.hpp"
#include "ebr/random.hpp"
#include "ebr/su_basis.hpp"

namespace ebr {

inline constexpr double kStructureTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

/// Validated density operator: Hermitian, unit trace, positive semi-definite.
class DensityMatrix {
 public:
  /// Validates every invariant and throws InvalidState naming the failing one
  /// ("hermitian", "trace", "positive").
  static DensityMatrix from_matrix(Matrix m, double structure_tol = kStructureTolerance,
                                   double psd_tol = kPsdTolerance);

  int dimension() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  operator const Matrix&() const { return matrix_; }

 private:
  explicit DensityMatrix(Matrix m) : matrix_(std::move(m)) {}
  Matrix matrix_;
};

/// Real (N^2-1)-vector r with D(r) = (1/N)(I + c_N r . Lambda).
struct BlochVector {
  int dimension = 0;
  RealVector components;

  BlochVector() = default;
  BlochVector(int n, RealVector r);

  double norm() const { return components.norm(); }
  int size() const { return static_cast<int>(components.size()); }
  double operator[](int i) const { return components[i]; }
};

enum class StateKind { VectorState, OperatorState, NotAState };

const char* to_string(StateKind kind);

/// r_i = (N / (2 c_N)) Re Tr(D Lambda_i). Accepts any Hermitian matrix of
/// matching dimension.
BlochVector to_bloch(const Matrix& d, const GeneratorBasis& basis);

/// (1/N)(I + c_N sum r_i Lambda_i). Hermitian with unit trace; not
/// necessarily positive.
Matrix from_bloch(const BlochVector& r, const GeneratorBasis& basis);

StateKind classify(const BlochVector& r, const GeneratorBasis& basis, double tol = kPsdTolerance);

/// Tr D^2 = (1/N)(1 + (N-1)|r|^2).
double purity(const BlochVector& r);

/// Haar-random rank-1 projector.
DensityMatrix random_pure(int n, RandomSource& rng);
/// Hilbert-Schmidt random mixed state G G^dagger / Tr(G G^dagger).
DensityMatrix random_mixed(int n, RandomSource& rng);

/// |psi><psi| for a (not necessarily normalized) vector.
Matrix projector(const ComplexVector& psi);

}  // namespace ebr
