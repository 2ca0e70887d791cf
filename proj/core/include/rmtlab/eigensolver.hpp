#pragma once

#include <Eigen/Core>

namespace rmt {

/// Dense path switches to Lanczos above this order.
inline constexpr int kDenseCrossover = 256;

/// Largest eigenvalue of a symmetric matrix G to relative accuracy tol.
/// Dispatches to cyclic Jacobi for order <= kDenseCrossover and to Lanczos
/// with full reorthogonalization above. Throws PreconditionError when G is
/// asymmetric beyond 1e-10 relative, EigensolverError on Lanczos stagnation.
double lambda_max(const Eigen::MatrixXd& G, double tol = 1e-10);

/// Cyclic Jacobi, sweeping until the off-diagonal Frobenius mass is below
/// tol * ||G||_F. Deterministic; works for any order.
double lambda_max_jacobi(const Eigen::MatrixXd& G, double tol = 1e-10);

/// Lanczos with full reorthogonalization and a deterministic start vector.
/// Converged when the residual |beta_k * s_k| <= tol * |theta|.
double lambda_max_lanczos(const Eigen::MatrixXd& G, double tol = 1e-10,
                          int max_iterations = 500);

}  // namespace rmt
