#include "ebr/su_basis.hpp"

#include <cmath>
#include <string>

#include "ebr/error.hpp"

namespace ebr {

double c_n(int dimension) {
  return std::sqrt(0.5 * dimension * (dimension - 1));
}

double GeneratorBasis::c_n() const { return ebr::c_n(dimension); }

GeneratorBasis build_gell_mann(int n) {
  if (n < 2) {
    throw InvalidDimension("generator basis needs N >= 2, got " + std::to_string(n));
  }
  GeneratorBasis basis;
  basis.dimension = n;
  basis.determination = {Determination::Kind::GellMann, 0, 0};
  basis.matrices.reserve(static_cast<std::size_t>(n * n - 1));

  const Complex i(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix m = Matrix::Zero(n, n);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      basis.matrices.push_back(std::move(m));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix m = Matrix::Zero(n, n);
      m(j, k) = -i;
      m(k, j) = i;
      basis.matrices.push_back(std::move(m));
    }
  }
  for (int l = 1; l < n; ++l) {
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    Matrix m = Matrix::Zero(n, n);
    for (int d = 0; d < l; ++d) {
      m(d, d) = scale;
    }
    m(l, l) = -scale * l;
    basis.matrices.push_back(std::move(m));
  }
  return basis;
}

GeneratorBasis build_tensor_basis(int dim_a, int dim_b) {
  if (dim_a < 2 || dim_b < 2) {
    throw InvalidDimension("subsystem dimensions must be >= 2");
  }
  if (dim_a != 2 || dim_b != 2) {
    throw InvalidDimension("tensor determination is only available for 2x2 systems, got " +
                           std::to_string(dim_a) + "x" + std::to_string(dim_b));
  }
  GeneratorBasis basis;
  basis.dimension = 4;
  basis.determination = {Determination::Kind::TensorProduct, dim_a, dim_b};
  basis.matrices.reserve(15);

  const double s = 1.0 / std::sqrt(2.0);
  const Matrix id = Matrix::Identity(2, 2);
  for (int a = 1; a <= 3; ++a) {
    basis.matrices.push_back(s * kron(pauli(a), id));
  }
  for (int b = 1; b <= 3; ++b) {
    basis.matrices.push_back(s * kron(id, pauli(b)));
  }
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      basis.matrices.push_back(s * kron(pauli(a), pauli(b)));
    }
  }
  return basis;
}

BasisReport verify_basis(const GeneratorBasis& basis, double tolerance) {
  BasisReport report;
  report.tolerance = tolerance;
  report.count_ok = basis.size() == basis.bloch_size();
  for (const Matrix& m : basis.matrices) {
    if (m.rows() != basis.dimension || m.cols() != basis.dimension) {
      report.count_ok = false;
      return report;
    }
  }
  for (std::size_t i = 0; i < basis.matrices.size(); ++i) {
    const Matrix& li = basis.matrices[i];
    report.hermiticity = std::max(report.hermiticity, hermiticity_deviation(li));
    report.trace = std::max(report.trace, std::abs(li.trace()));
    for (std::size_t j = 0; j < basis.matrices.size(); ++j) {
      const Complex g = (li * basis.matrices[j]).trace();
      const double expected = i == j ? 2.0 : 0.0;
      report.gram = std::max(report.gram, std::abs(g - expected));
    }
  }
  return report;
}

}  // namespace ebr
