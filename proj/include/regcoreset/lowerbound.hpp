#pragma once

#include "regcoreset/coreset.hpp"
#include "regcoreset/matrix.hpp"
#include "regcoreset/objective.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace regcoreset {

enum class ViolationDirection { overshoot, undershoot };

std::string_view to_string(ViolationDirection direction);

/// A query x on which the weighted rows miss ||Mx||_p^r by more than epsilon.
struct UnregularizedViolation {
  Vector x;
  double ratio = 1.0;           // ||M_c x||_p^r / ||M x||_p^r
  double epsilon_prime = 0.0;   // |ratio - 1|
  ViolationDirection direction = ViolationDirection::undershoot;
};

/// y = alpha x turns an unregularized violation into a regularized one.
struct CounterexampleWitness {
  Vector base_x;
  double alpha = 1.0;
  Vector y;
  double epsilon = 0.0;
  double epsilon_prime = 0.0;
  ViolationDirection direction = ViolationDirection::undershoot;
  double regularized_ratio = 1.0;  // (||M_c y||_p^r + lambda ||y||_q^s) / (||M y||_p^r + lambda ||y||_q^s)
};

/// ||M_c x||_p^r / ||M x||_p^r where `coreset.rows` are the pre-scaled rows of M.
/// Returns NaN when ||M x||_p = 0.
double unregularized_ratio(const Matrix& m, const Coreset& coreset, const Vector& x, double p,
                           double r);

/// Probes coordinate axes, right singular vectors of M and of the coreset rows,
/// and `probes` seeded Gaussian directions. Returns the probe with the largest
/// |ratio - 1| if it exceeds epsilon.
std::optional<UnregularizedViolation> find_unregularized_violation(
    const Matrix& m, const Coreset& coreset, double p, double r, double epsilon,
    std::size_t probes, std::uint64_t seed);

inline constexpr double kAlphaMarginUp = 1.01;
inline constexpr double kAlphaMarginDown = 0.99;

/// Scaling that pushes the regularized ratio outside the (eps + eps') / 2 band.
/// r > s: alpha^(r-s) > (eps'+eps)/(eps'-eps) * lambda ||x||_q^s / ||Mx||_p^r, margin 1.01.
/// r < s: alpha^(s-r) < (eps'-eps)/(eps'+eps) * ||Mx||_p^r / (lambda ||x||_q^s), margin 0.99.
/// lambda = 0 returns 1. r = s throws theorem_inapplicable.
double counterexample_alpha(double epsilon, double epsilon_prime, double lambda,
                            double norm_mx_p_r, double norm_x_q_s, double r, double s);

/// Chains the probe search, the alpha construction and the band check.
/// Returns nothing when the coreset passes every unregularized probe.
std::optional<CounterexampleWitness> demonstrate_violation(const Matrix& m, const Coreset& coreset,
                                                           const ObjectiveSpec& spec,
                                                           double epsilon, std::uint64_t seed,
                                                           std::size_t probes = 256);

/// For b = A u, compares the sampled residual ratio at y = u + v with the
/// subspace ratio at v. Rows are taken from A by `sampled.source_indices`
/// with `sampled.weights`.
struct ColumnSpaceShift {
  double shifted_ratio = 0.0;  // (sum w |a_i y - b_i|^p / sum |a_i y - b_i|^p)^(1/p)
  double direct_ratio = 0.0;   // (sum w |a_i v|^p / sum |a_i v|^p)^(1/p)
};

ColumnSpaceShift column_space_shift(const Matrix& a, const Coreset& sampled, const Vector& u,
                                    const Vector& v, double p);

}  // namespace regcoreset
