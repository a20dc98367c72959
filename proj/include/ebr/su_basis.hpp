#pragma once

#include <vector>

#include "ebr/linalg.hpp"

namespace ebr {

/// Which construction produced a generator basis.
struct Determination {
  enum class Kind { GellMann, TensorProduct };
  Kind kind = Kind::GellMann;
  int dim_a = 0;  // TensorProduct only
  int dim_b = 0;  // TensorProduct only

  bool operator==(const Determination&) const = default;
};

/// An ordered set of N^2-1 Hermitian, traceless SU(N) generators normalized
/// to Tr(L_i L_j) = 2 delta_ij. Defines the coordinate frame of Bloch vectors.
struct GeneratorBasis {
  int dimension = 0;
  std::vector<Matrix> matrices;
  Determination determination;

  /// sqrt(N(N-1)/2): scale between generator coordinates and unit Bloch vectors.
  double c_n() const;
  int size() const { return static_cast<int>(matrices.size()); }
  /// Number of Bloch components for this dimension, N^2 - 1.
  int bloch_size() const { return dimension * dimension - 1; }
};

double c_n(int dimension);

/// Canonical generalized Gell-Mann basis: symmetric pair matrices, then
/// antisymmetric ones (each in lexicographic (j,k), j<k), then the N-1
/// diagonal matrices. For N = 2 this is (sigma_1, sigma_2, sigma_3).
GeneratorBasis build_gell_mann(int n);

/// Tensor-product determination for a 2x2 bipartite system:
/// (1/sqrt2) {s_a x I, I x s_b, s_a x s_b} with (a,b) row-major.
/// Only dA = dB = 2 is supported.
GeneratorBasis build_tensor_basis(int dim_a, int dim_b);

struct BasisReport {
  double hermiticity = 0.0;  // max |L - L^dagger|
  double trace = 0.0;        // max |Tr L|
  double gram = 0.0;         // max |Tr(L_i L_j) - 2 delta_ij|
  bool count_ok = false;     // size == N^2 - 1
  double tolerance = 1e-12;
  bool pass() const { return count_ok && hermiticity <= tolerance && trace <= tolerance && gram <= tolerance; }
};

BasisReport verify_basis(const GeneratorBasis& basis, double tolerance = 1e-12);

}  // namespace ebr
