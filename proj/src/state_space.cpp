#include "ebr/state_space.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "ebr/error.hpp"

namespace ebr {

DensityMatrix DensityMatrix::from_matrix(Matrix m, double structure_tol, double psd_tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw InvalidState("density matrix must be square and non-empty");
  }
  const double herm = hermiticity_deviation(m);
  if (herm > structure_tol) {
    std::ostringstream msg;
    msg << "matrix is not hermitian (deviation " << herm << ")";
    throw InvalidState(msg.str());
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > structure_tol) {
    std::ostringstream msg;
    msg << "trace must be 1, got " << tr.real();
    throw InvalidState(msg.str());
  }
  const double lo = min_eigenvalue(m);
  if (lo < -psd_tol) {
    std::ostringstream msg;
    msg << "matrix is not positive semi-definite (min eigenvalue " << lo << ")";
    throw InvalidState(msg.str());
  }
  return DensityMatrix(std::move(m));
}

BlochVector::BlochVector(int n, RealVector r) : dimension(n), components(std::move(r)) {
  if (n < 2) {
    throw InvalidDimension("Bloch vector needs N >= 2");
  }
  if (components.size() != n * n - 1) {
    throw DimensionMismatch("Bloch vector for N=" + std::to_string(n) + " needs " +
                            std::to_string(n * n - 1) + " components, got " +
                            std::to_string(components.size()));
  }
}

const char* to_string(StateKind kind) {
  switch (kind) {
    case StateKind::VectorState:
      return "vector-state";
    case StateKind::OperatorState:
      return "operator-state";
    case StateKind::NotAState:
      return "not-a-state";
  }
  return "unknown";
}

BlochVector to_bloch(const Matrix& d, const GeneratorBasis& basis) {
  if (d.rows() != basis.dimension || d.cols() != basis.dimension) {
    throw DimensionMismatch("matrix dimension " + std::to_string(d.rows()) +
                            " does not match basis dimension " + std::to_string(basis.dimension));
  }
  const int n = basis.dimension;
  const double scale = n / (2.0 * basis.c_n());
  RealVector r(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    r[i] = scale * trace_product_real(d, basis.matrices[static_cast<std::size_t>(i)]);
  }
  return BlochVector(n, std::move(r));
}

Matrix from_bloch(const BlochVector& r, const GeneratorBasis& basis) {
  if (r.dimension != basis.dimension || r.size() != basis.size()) {
    throw DimensionMismatch("Bloch vector does not match basis dimension");
  }
  const int n = basis.dimension;
  Matrix sum = Matrix::Zero(n, n);
  for (int i = 0; i < r.size(); ++i) {
    sum += r[i] * basis.matrices[static_cast<std::size_t>(i)];
  }
  return (Matrix::Identity(n, n) + basis.c_n() * sum) / static_cast<double>(n);
}

StateKind classify(const BlochVector& r, const GeneratorBasis& basis, double tol) {
  const double lo = min_eigenvalue(from_bloch(r, basis));
  if (lo < -tol) {
    return StateKind::NotAState;
  }
  if (std::abs(r.norm() - 1.0) <= tol) {
    return StateKind::VectorState;
  }
  return StateKind::OperatorState;
}

double purity(const BlochVector& r) {
  const double n = r.dimension;
  return (1.0 + (n - 1.0) * r.components.squaredNorm()) / n;
}

Matrix projector(const ComplexVector& psi) {
  const ComplexVector unit = psi.normalized();
  return unit * unit.adjoint();
}

DensityMatrix random_pure(int n, RandomSource& rng) {
  if (n < 1) {
    throw InvalidDimension("dimension must be positive");
  }
  ComplexVector psi(n);
  do {
    for (int i = 0; i < n; ++i) {
      psi[i] = Complex(rng.normal(), rng.normal());
    }
  } while (psi.norm() < 1e-12);
  Matrix p = projector(psi);
  p = 0.5 * (p + p.adjoint());
  return DensityMatrix::from_matrix(std::move(p));
}

DensityMatrix random_mixed(int n, RandomSource& rng) {
  if (n < 1) {
    throw InvalidDimension("dimension must be positive");
  }
  Matrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      g(r, c) = Complex(rng.normal(), rng.normal());
    }
  }
  Matrix d = g * g.adjoint();
  d = 0.5 * (d + d.adjoint());
  d /= d.trace().real();
  return DensityMatrix::from_matrix(std::move(d));
}

}  // namespace ebr
