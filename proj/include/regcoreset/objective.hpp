#pragma once

#include "regcoreset/matrix.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace regcoreset {

enum class Family { lp_lp, ridge, lasso, modified_lasso, rlad, multiresponse_rlad, general };

std::string_view to_string(Family family);
std::optional<Family> family_from_string(std::string_view name);

/// Objective ||Ax - b||_p^r + lambda ||x||_q^s.
struct ObjectiveSpec {
  double p = 2.0;
  double q = 2.0;
  double r = 2.0;
  double s = 2.0;
  double lambda = 0.0;
  Family family = Family::ridge;

  static ObjectiveSpec lp_lp(double p, double lambda);
  static ObjectiveSpec ridge(double lambda);
  static ObjectiveSpec lasso(double lambda);
  static ObjectiveSpec modified_lasso(double lambda);
  static ObjectiveSpec rlad(double lambda);
  static ObjectiveSpec multiresponse_rlad(double lambda);
  static ObjectiveSpec general(double p, double q, double r, double s, double lambda);
  static ObjectiveSpec for_family(Family family, double lambda, double p = 2.0);

  /// Checks exponent ranges and that named families carry their exponents.
  void validate() const;
};

/// ||Ax - b||_p^r + lambda ||x||_q^s.
double evaluate_objective(const RegressionInstance& instance, const Vector& x,
                          const ObjectiveSpec& spec);

/// sum_i w_i |r_i|^p raised to r/p: the loss term of a weighted row set.
double weighted_loss(const Vector& residual, const Vector& weights, double p, double r);

}  // namespace regcoreset
