#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace regcoreset {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A design matrix A (n x d) and response b (length n).
struct RegressionInstance {
  Matrix design;
  Vector response;

  std::size_t n() const { return static_cast<std::size_t>(design.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(design.cols()); }

  /// Throws shape_error on empty or mismatched parts and invalid_parameter on
  /// non-finite entries. With `require_tall`, also rejects n < d.
  void validate(bool require_tall = false) const;
};

struct SvdResult {
  Matrix left;             // n x d, orthonormal columns
  Vector singular_values;  // length d, nonincreasing
  Matrix right;            // d x d
};

/// Throws unless the matrix is nonempty with finite entries.
void require_finite(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);

/// Vector p-norm; p = +infinity selects the max norm.
double lp_norm(const Vector& v, double p);

/// (sum_ij |m_ij|^p)^(1/p).
double entrywise_p_norm(const Matrix& m, double p);

/// Exact induced norm for p in {1, 2, inf}; for any other p the
/// interpolation bound ||M||_(1)^(1/p) * ||M||_(inf)^(1-1/p), which is never
/// smaller than the true induced norm.
double induced_norm_upper(const Matrix& m, double p);

/// Thin SVD of a tall matrix.
SvdResult svd(const Matrix& m);

/// sum_j 1 / (1 + lambda / sigma_j^2).
double statistical_dimension(const Vector& singular_values, double lambda);

/// A' = [A b].
Matrix augment(const RegressionInstance& instance);

/// Split an augmented matrix back into design (all but last column) and response.
RegressionInstance split_augmented(const Matrix& augmented);

}  // namespace regcoreset
