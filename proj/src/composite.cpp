#include "ebr/composite.hpp"

#include <cmath>

#include "ebr/error.hpp"

namespace ebr {

BipartiteState make_bipartite(DensityMatrix joint) {
  if (joint.dimension() != 4) {
    throw InvalidDimension("bipartite state must be 4x4 (two qubits)");
  }
  return BipartiteState{2, 2, std::move(joint)};
}

EntangledParams singlet_params() {
  const double h = 1.0 / std::sqrt(2.0);
  return {h, h, M_PI};
}

BipartiteState build_entangled(const EntangledParams& p) {
  if (p.a1 < 0.0 || p.a1 > 1.0 || p.a2 < 0.0 || p.a2 > 1.0) {
    throw InvalidArgument("amplitudes a1, a2 must lie in [0, 1]");
  }
  if (std::abs(p.a1 * p.a1 + p.a2 * p.a2 - 1.0) > 1e-12) {
    throw InvalidArgument("amplitudes must satisfy a1^2 + a2^2 = 1");
  }
  ComplexVector psi = ComplexVector::Zero(4);
  psi[1] = p.a1;                                    // |+ ->
  psi[2] = p.a2 * std::polar(1.0, p.alpha);         // |- +>
  Matrix rho = psi * psi.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return make_bipartite(DensityMatrix::from_matrix(std::move(rho)));
}

DensityMatrix partial_trace(const BipartiteState& s, Subsystem keep) {
  const Matrix& m = s.joint.matrix();
  const int da = s.dim_a;
  const int db = s.dim_b;
  const int kept = keep == Subsystem::A ? da : db;
  Matrix out = Matrix::Zero(kept, kept);
  if (keep == Subsystem::A) {
    for (int i = 0; i < da; ++i) {
      for (int j = 0; j < da; ++j) {
        for (int k = 0; k < db; ++k) {
          out(i, j) += m(i * db + k, j * db + k);
        }
      }
    }
  } else {
    for (int i = 0; i < db; ++i) {
      for (int j = 0; j < db; ++j) {
        for (int k = 0; k < da; ++k) {
          out(i, j) += m(k * db + i, k * db + j);
        }
      }
    }
  }
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix::from_matrix(std::move(out));
}

DecomposedBloch decompose_direct_sum(const BlochVector& r, const GeneratorBasis& basis) {
  if (basis.determination.kind != Determination::Kind::TensorProduct || basis.determination.dim_a != 2 ||
      basis.determination.dim_b != 2) {
    throw InvalidArgument("direct-sum decomposition needs the 2x2 tensor-product basis");
  }
  if (r.dimension != 4 || r.size() != 15) {
    throw DimensionMismatch("direct-sum decomposition needs a 15-component Bloch vector");
  }
  const double s3 = std::sqrt(3.0);
  DecomposedBloch d;
  d.r_a = s3 * r.components.segment<3>(0);
  d.r_b = s3 * r.components.segment<3>(3);
  d.r_corr = r.components.segment<9>(6);
  return d;
}

bool is_product(const DecomposedBloch& d, double tol) {
  const double s3 = std::sqrt(3.0);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (std::abs(d.corr(a, b) - d.r_a[a] * d.r_b[b] / s3) > tol) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace ebr
