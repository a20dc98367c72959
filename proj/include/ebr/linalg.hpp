#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ebr/random.hpp"

namespace ebr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Vector3 = Eigen::Vector3d;

/// max_ij |M_ij - conj(M_ji)|
double hermiticity_deviation(const Matrix& m);

/// Re Tr(A B) without forming the product.
double trace_product_real(const Matrix& a, const Matrix& b);

Matrix kron(const Matrix& a, const Matrix& b);

/// Eigen-decomposition of a Hermitian matrix: ascending real eigenvalues and
/// orthonormal eigenvectors in columns. Uses only the lower triangle.
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};
HermitianEigen hermitian_eigen(const Matrix& m);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& m);

/// Pauli matrices; index 1..3 selects sigma_x, sigma_y, sigma_z.
Matrix pauli(int index);

/// sigma . n for a real 3-vector n.
Matrix sigma_dot(const Vector3& n);

/// GUE-style random Hermitian matrix (entries complex Gaussian).
Matrix random_hermitian(int n, RandomSource& rng);

/// Uniformly distributed unit vector in R^3.
Vector3 random_unit_vector(RandomSource& rng);

}  // namespace ebr
