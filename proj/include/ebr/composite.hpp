#pragma once

#include "ebr/state_space.hpp"
#include "ebr/su_basis.hpp"

namespace ebr {

/// Two qubits, Kronecker ordering A-major: index = 2*a + b, with |+> -> 0
/// and |-> -> 1.
struct BipartiteState {
  int dim_a = 2;
  int dim_b = 2;
  DensityMatrix joint;
};

BipartiteState make_bipartite(DensityMatrix joint);

/// a1 |+->  +  a2 e^{i alpha} |-+>
struct EntangledParams {
  double a1 = 1.0;
  double a2 = 0.0;
  double alpha = 0.0;
};

BipartiteState build_entangled(const EntangledParams& p);

/// Standard singlet (|+-> - |-+>)/sqrt2.
EntangledParams singlet_params();

enum class Subsystem { A, B };

DensityMatrix partial_trace(const BipartiteState& s, Subsystem keep);

/// r = (1/sqrt3) rA  (+)  (1/sqrt3) rB  (+)  rcorr in the 2x2 tensor basis.
struct DecomposedBloch {
  Vector3 r_a;
  Vector3 r_b;
  Eigen::Matrix<double, 9, 1> r_corr;  // (a,b) row-major, a,b in {x,y,z}

  double corr(int a, int b) const { return r_corr[3 * a + b]; }
};

DecomposedBloch decompose_direct_sum(const BlochVector& r, const GeneratorBasis& basis);

/// True iff rcorr_(a,b) = rA_a rB_b / sqrt3 for all a, b within tol.
bool is_product(const DecomposedBloch& d, double tol = 1e-10);

}  // namespace ebr
