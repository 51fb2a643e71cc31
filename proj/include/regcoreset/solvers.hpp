#pragma once

#include "regcoreset/matrix.hpp"
#include "regcoreset/objective.hpp"

#include <cstddef>

namespace regcoreset {

struct SolverOptions {
  double tol = 1e-8;
  std::size_t max_iter = 200000;
};

struct SolverResult {
  Vector solution;
  double objective_value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double optimality_residual = 0.0;
};

struct MultiSolverResult {
  Matrix solution;  // d x k
  double objective_value = 0.0;
  std::size_t iterations = 0;  // summed over columns
  bool converged = false;      // every column converged
  double optimality_residual = 0.0;  // worst column
};

/// Closed form (A^T A + lambda I)^-1 A^T b through the SVD of A.
SolverResult solve_ridge(const RegressionInstance& instance, double lambda);

/// argmin_x 1/2 ||x - v||^2 + t ||x||_1^2 by sorting |v|.
Vector prox_squared_l1(const Vector& v, double t);

/// ||Ax - b||_2^2 + lambda ||x||_1 by monotone FISTA with restarts.
SolverResult solve_lasso(const RegressionInstance& instance, double lambda,
                         const SolverOptions& options = {});

/// ||Ax - b||_2^2 + lambda ||x||_1^2 by monotone FISTA with the squared-l1 prox.
SolverResult solve_modified_lasso(const RegressionInstance& instance, double lambda,
                                  const SolverOptions& options = {});

/// ||Ax - b||_1 + lambda ||x||_1: over-relaxed ADMM warm start, then exact
/// vertex descent on the stacked l1 problem [A; lambda I] x ~ [b; 0].
SolverResult solve_rlad(const RegressionInstance& instance, double lambda,
                        const SolverOptions& options = {});

/// ||Ax - b||_p^p + lambda ||x||_p^p by damped IRLS, p in [1, 4].
SolverResult solve_lp_lp(const RegressionInstance& instance, double p, double lambda,
                         const SolverOptions& options = {});

/// ||AX - B||_1 + lambda ||X||_1 (entrywise); solved column by column.
MultiSolverResult solve_multiresponse_rlad(const Matrix& design, const Matrix& responses,
                                           double lambda, const SolverOptions& options = {});

/// Routes to the solver of `spec.family`.
SolverResult solve(const RegressionInstance& instance, const ObjectiveSpec& spec,
                   const SolverOptions& options = {});

/// Number of coordinates with |x_j| < threshold.
std::size_t sparsity_count(const Vector& x, double threshold = 1e-6);

}  // namespace regcoreset
