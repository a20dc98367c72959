#include "ebr/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ebr/error.hpp"

namespace ebr {

double hermiticity_deviation(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("hermiticity check on a non-square matrix");
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double trace_product_real(const Matrix& a, const Matrix& b) {
  // Tr(AB) = sum_ij A_ij B_ji
  return (a.array() * b.transpose().array()).sum().real();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianEigen hermitian_eigen(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw InternalError("Hermitian eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw InternalError("Hermitian eigensolver failed to converge");
  }
  return solver.eigenvalues().minCoeff();
}

Matrix pauli(int index) {
  const Complex i(0.0, 1.0);
  Matrix s = Matrix::Zero(2, 2);
  switch (index) {
    case 1:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = -i;
      s(1, 0) = i;
      break;
    case 3:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw InvalidArgument("Pauli index must be 1, 2 or 3");
  }
  return s;
}

Matrix sigma_dot(const Vector3& n) {
  return n.x() * pauli(1) + n.y() * pauli(2) + n.z() * pauli(3);
}

Matrix random_hermitian(int n, RandomSource& rng) {
  Matrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      g(r, c) = Complex(rng.normal(), rng.normal());
    }
  }
  return 0.5 * (g + g.adjoint());
}

Vector3 random_unit_vector(RandomSource& rng) {
  Vector3 v;
  do {
    v = Vector3(rng.normal(), rng.normal(), rng.normal());
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace ebr
