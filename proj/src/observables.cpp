#include "ebr/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ebr/error.hpp"
#include "ebr/state_space.hpp"

namespace ebr {

namespace {

// Fix the global phase so the first non-negligible component is real positive.
void normalize_phase(Eigen::Ref<ComplexVector> v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) > 1e-12) {
      v *= std::conj(v[k]) / std::abs(v[k]);
      return;
    }
  }
}

}  // namespace

SpectralDecomposition spectral_decompose(const Matrix& observable, double tol) {
  if (observable.rows() != observable.cols() || observable.rows() < 1) {
    throw DimensionMismatch("observable must be a non-empty square matrix");
  }
  const double scale = std::max(1.0, observable.cwiseAbs().maxCoeff());
  const double herm = hermiticity_deviation(observable);
  if (herm > tol * scale) {
    std::ostringstream msg;
    msg << "observable is not hermitian (deviation " << herm << ")";
    throw InvalidArgument(msg.str());
  }
  const Matrix sym = 0.5 * (observable + observable.adjoint());
  HermitianEigen eig = hermitian_eigen(sym);
  const int n = static_cast<int>(sym.rows());
  for (int k = 0; k < n; ++k) {
    normalize_phase(eig.vectors.col(k));
  }

  // Descending; exact ties keep the solver's vector order.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return eig.values[a] > eig.values[b]; });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  out.projectors.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int src = order[static_cast<std::size_t>(i)];
    out.eigenvalues[i] = eig.values[src];
    out.eigenvectors.col(i) = eig.vectors.col(src);
    const ComplexVector v = eig.vectors.col(src);
    out.projectors.push_back(v * v.adjoint());
  }
  return out;
}

RealVector MeasurementSimplex::point(const RealVector& barycentric) const {
  if (barycentric.size() != size()) {
    throw DimensionMismatch("barycentric vector length does not match simplex");
  }
  RealVector p = RealVector::Zero(vertices.front().size());
  for (int i = 0; i < size(); ++i) {
    p += barycentric[i] * vertices[static_cast<std::size_t>(i)];
  }
  return p;
}

MeasurementSimplex simplex_of(const SpectralDecomposition& decomp,
                              std::shared_ptr<const GeneratorBasis> basis) {
  if (!basis) {
    throw InvalidArgument("simplex requires a generator basis");
  }
  if (decomp.dimension() != basis->dimension) {
    throw DimensionMismatch("observable dimension " + std::to_string(decomp.dimension()) +
                            " does not match basis dimension " + std::to_string(basis->dimension));
  }
  MeasurementSimplex sx;
  sx.dimension = basis->dimension;
  sx.projectors = decomp.projectors;
  sx.eigenvectors = decomp.eigenvectors;
  sx.eigenvalues = decomp.eigenvalues;
  sx.vertices.reserve(decomp.projectors.size());
  for (const Matrix& p : decomp.projectors) {
    sx.vertices.push_back(to_bloch(p, *basis).components);
  }
  sx.basis = std::move(basis);
  return sx;
}

OutcomeGrouping OutcomeGrouping::singletons(const RealVector& eigenvalues) {
  OutcomeGrouping g;
  for (int i = 0; i < eigenvalues.size(); ++i) {
    g.groups.push_back({i});
    g.eigenvalues.push_back(eigenvalues[i]);
    g.group_of.push_back(i);
  }
  return g;
}

OutcomeGrouping group_degenerate(const SpectralDecomposition& decomp, double deg_tol) {
  const RealVector& o = decomp.eigenvalues;
  OutcomeGrouping g;
  if (o.size() == 0) {
    return g;
  }
  const double threshold = deg_tol * std::max(1.0, o.cwiseAbs().maxCoeff());
  g.group_of.assign(static_cast<std::size_t>(o.size()), 0);
  for (int i = 0; i < o.size(); ++i) {
    if (i == 0 || std::abs(o[i] - o[i - 1]) > threshold) {
      g.groups.emplace_back();
      g.eigenvalues.push_back(o[i]);
    }
    g.groups.back().push_back(i);
    g.group_of[static_cast<std::size_t>(i)] = g.size() - 1;
  }
  // Report each group's eigenvalue as the mean of its members.
  for (int k = 0; k < g.size(); ++k) {
    double sum = 0.0;
    for (int i : g.groups[static_cast<std::size_t>(k)]) {
      sum += o[i];
    }
    g.eigenvalues[static_cast<std::size_t>(k)] = sum / static_cast<double>(g.groups[static_cast<std::size_t>(k)].size());
  }
  return g;
}

Vector3 axis_from_degrees(double degrees) {
  const double t = degrees * M_PI / 180.0;
  return Vector3(std::sin(t), 0.0, std::cos(t));
}

Matrix spin_observable(const Vector3& axis) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("spin axis must be a unit vector");
  }
  return sigma_dot(axis);
}

Matrix spin_product_observable(const Vector3& axis_a, const Vector3& axis_b) {
  return kron(spin_observable(axis_a), spin_observable(axis_b));
}

}  // namespace ebr
