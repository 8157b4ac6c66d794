#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>

#include "mixgen/common.hpp"

namespace mixgen::linalg {

/// out = H * in for a Hermitian operator of fixed dimension.
using LinearOperator =
    std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct KrylovOptions {
  int max_dim = 64;
  double tol = 1e-10;
  int max_substeps = 100000;
};

/// exp(-i t H) v by Lanczos with adaptive time substepping. The Krylov basis is
/// fully reorthogonalized; substeps shrink until the a-posteriori error
/// estimate falls below tol scaled by the substep fraction.
Eigen::VectorXcd expmv_lanczos(const LinearOperator& hamiltonian, double t,
                               const Eigen::VectorXcd& v,
                               const KrylovOptions& options = {});

/// exp(-i t H) for a dense Hermitian matrix, via its eigendecomposition.
Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& hamiltonian, double t);

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXcd vector;
  int iterations = 0;
};

/// Lowest eigenpair by Lanczos with full reorthogonalization. Convergence is
/// declared when the Ritz residual drops below `tol`.
GroundState lanczos_ground_state(const LinearOperator& hamiltonian,
                                 Eigen::Index dim, double tol = 1e-10,
                                 int max_iter = 400, std::uint64_t seed = 7);

/// Remove from `v` its components along the orthonormal columns of `basis`,
/// twice (classical Gram-Schmidt with reorthogonalization). Returns the
/// residual norm.
template <typename BasisDerived, typename VecDerived>
double project_out_twice(const Eigen::MatrixBase<BasisDerived>& basis,
                         Eigen::MatrixBase<VecDerived>& v) {
  if (basis.cols() > 0) {
    for (int pass = 0; pass < 2; ++pass) {
      const auto coeffs = (basis.adjoint() * v).eval();
      v -= basis * coeffs;
    }
  }
  return v.norm();
}

}  // namespace mixgen::linalg
