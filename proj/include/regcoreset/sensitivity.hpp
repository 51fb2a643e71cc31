#pragma once

#include "regcoreset/conditioning.hpp"
#include "regcoreset/matrix.hpp"
#include "regcoreset/objective.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace regcoreset {

enum class Scheme {
  lp_lp_bound,
  rlad_bound,
  multiresponse_rlad_bound,
  ridge_leverage,
  uniform,
  brute_force,
};

std::string_view to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(std::string_view name);

/// Per-row sensitivity upper bounds (or oracle values) and their sum.
struct SensitivityScores {
  Vector values;
  double total = 0.0;
  Scheme scheme = Scheme::uniform;
  double lambda = 0.0;
  double p = 2.0;

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

/// Multiresponse bounds plus both candidate induced norms: the design-block
/// norm the bound uses and the norm of the full [A -B].
struct MultiresponseScores {
  SensitivityScores scores;
  double design_block_norm = 0.0;
  double augmented_norm = 0.0;
};

/// s_i <= beta^p ||u_i||_p^p / (1 + lambda / ||A'||_(p)^p) + 1/n.
SensitivityScores lp_lp_sensitivity_bounds(const WellConditionedBasis& basis, double lambda,
                                           double induced_p_norm_aprime, std::size_t n);

/// p = 1 specialization with the exact induced 1-norm (max column sum) of A'.
SensitivityScores rlad_sensitivity_bounds(const WellConditionedBasis& basis, double lambda,
                                          const Matrix& aprime);

/// Bound for ||AX - B||_1 + lambda ||X||_1 over the basis of Ahat = [A -B];
/// the induced norm is taken over the design block A (the first cols - k columns).
MultiresponseScores multiresponse_rlad_sensitivity_bounds(const WellConditionedBasis& basis_of_ahat,
                                                          double lambda, const Matrix& ahat,
                                                          std::size_t k);

/// a_i^T (A'^T A' + lambda I)^-1 a_i, computed from the SVD of A'.
SensitivityScores ridge_leverage_scores(const Matrix& aprime, double lambda);

/// Grid under-approximation of sup_x' (|a'_i x'|^p + lambda ||x'||_p^p / n) /
/// (sum_j |a'_j x'|^p + lambda ||x'||_p^p), with the regularizer on the whole
/// augmented query x'. Uses spec.p and spec.lambda; requires d + 1 <= 3.
SensitivityScores brute_force_sensitivity(const RegressionInstance& instance,
                                          const ObjectiveSpec& spec, std::size_t grid_resolution,
                                          std::size_t radius_levels);

SensitivityScores uniform_scores(std::size_t n);

}  // namespace regcoreset
