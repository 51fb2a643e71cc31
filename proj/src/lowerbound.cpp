#include "regcoreset/lowerbound.hpp"

#include "regcoreset/error.hpp"
#include "regcoreset/random.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace regcoreset {

std::string_view to_string(ViolationDirection direction) {
  return direction == ViolationDirection::overshoot ? "overshoot" : "undershoot";
}

double unregularized_ratio(const Matrix& m, const Coreset& coreset, const Vector& x, double p,
                           double r) {
  require(coreset.rows.cols() == m.cols() && x.size() == m.cols(), ErrorKind::shape_error,
          "coreset rows, matrix and query must share a column count");
  const double full = lp_norm(m * x, p);
  if (!(full > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const double reduced = lp_norm(coreset.rows * x, p);
  return std::pow(reduced / full, r);
}

std::optional<UnregularizedViolation> find_unregularized_violation(
    const Matrix& m, const Coreset& coreset, double p, double r, double epsilon,
    std::size_t probes, std::uint64_t seed) {
  require(probes >= 1, ErrorKind::invalid_parameter, "probes must be >= 1");
  require(p >= 1.0 && r > 0.0, ErrorKind::invalid_parameter, "need p >= 1 and r > 0");
  require(epsilon >= 0.0 && epsilon < 1.0, ErrorKind::invalid_parameter,
          "epsilon must lie in [0, 1)");
  require_finite(m, "matrix");
  const Eigen::Index cols = m.cols();

  std::vector<Vector> candidates;
  for (Eigen::Index j = 0; j < cols; ++j) candidates.push_back(Vector::Unit(cols, j));
  Eigen::JacobiSVD<Matrix> full_svd(m, Eigen::ComputeFullV);
  for (Eigen::Index j = 0; j < cols; ++j) candidates.push_back(full_svd.matrixV().col(j));
  if (coreset.rows.rows() > 0) {
    // Directions the sample barely sees, including its null space.
    Eigen::JacobiSVD<Matrix> sample_svd(coreset.rows, Eigen::ComputeFullV);
    for (Eigen::Index j = 0; j < cols; ++j) candidates.push_back(sample_svd.matrixV().col(j));
  }
  Rng rng(seed);
  for (std::size_t k = 0; k < probes; ++k) candidates.push_back(rng.normal_vector(cols));

  std::optional<UnregularizedViolation> best;
  for (const Vector& x : candidates) {
    const double ratio = unregularized_ratio(m, coreset, x, p, r);
    if (std::isnan(ratio)) continue;
    const double gap = std::abs(ratio - 1.0);
    if (gap <= epsilon) continue;
    if (!best || gap > best->epsilon_prime) {
      best = UnregularizedViolation{
          x, ratio, gap, ratio > 1.0 ? ViolationDirection::overshoot : ViolationDirection::undershoot};
    }
  }
  return best;
}

double counterexample_alpha(double epsilon, double epsilon_prime, double lambda,
                            double norm_mx_p_r, double norm_x_q_s, double r, double s) {
  require(r != s, ErrorKind::theorem_inapplicable,
          "loss and regularizer exponents coincide (r = s); the scaling argument does not apply");
  require(epsilon >= 0.0 && epsilon_prime > epsilon, ErrorKind::invalid_parameter,
          "need epsilon' > epsilon >= 0");
  require(lambda >= 0.0, ErrorKind::invalid_parameter, "lambda must be >= 0");
  require(norm_mx_p_r > 0.0 && norm_x_q_s > 0.0, ErrorKind::invalid_parameter,
          "both norms must be positive");
  if (lambda == 0.0) return 1.0;
  const double widen = (epsilon_prime + epsilon) / (epsilon_prime - epsilon);
  if (r > s) {
    const double threshold = widen * lambda * norm_x_q_s / norm_mx_p_r;
    return std::pow(kAlphaMarginUp * threshold, 1.0 / (r - s));
  }
  const double threshold = norm_mx_p_r / (widen * lambda * norm_x_q_s);
  return std::pow(kAlphaMarginDown * threshold, 1.0 / (s - r));
}

std::optional<CounterexampleWitness> demonstrate_violation(const Matrix& m, const Coreset& coreset,
                                                           const ObjectiveSpec& spec,
                                                           double epsilon, std::uint64_t seed,
                                                           std::size_t probes) {
  spec.validate();
  require(spec.r != spec.s, ErrorKind::theorem_inapplicable,
          "loss and regularizer exponents coincide (r = s); the scaling argument does not apply");
  const auto found = find_unregularized_violation(m, coreset, spec.p, spec.r, epsilon, probes, seed);
  if (!found) return std::nullopt;

  CounterexampleWitness w;
  w.base_x = found->x;
  w.epsilon = epsilon;
  w.epsilon_prime = found->epsilon_prime;
  w.direction = found->direction;
  const double mx = std::pow(lp_norm(m * w.base_x, spec.p), spec.r);
  const double xs = std::pow(lp_norm(w.base_x, spec.q), spec.s);
  w.alpha = counterexample_alpha(epsilon, w.epsilon_prime, spec.lambda, mx, xs, spec.r, spec.s);
  w.y = w.alpha * w.base_x;

  const double reg = spec.lambda * std::pow(lp_norm(w.y, spec.q), spec.s);
  const double full = std::pow(lp_norm(m * w.y, spec.p), spec.r) + reg;
  const double reduced = std::pow(lp_norm(coreset.rows * w.y, spec.p), spec.r) + reg;
  w.regularized_ratio = reduced / full;

  const double band = 0.5 * (epsilon + w.epsilon_prime);
  const bool outside = w.direction == ViolationDirection::overshoot
                           ? w.regularized_ratio > 1.0 + band
                           : w.regularized_ratio < 1.0 - band;
  if (!outside) throw std::logic_error("scaled query failed to leave the epsilon band");
  return w;
}

ColumnSpaceShift column_space_shift(const Matrix& a, const Coreset& sampled, const Vector& u,
                                    const Vector& v, double p) {
  require(u.size() == a.cols() && v.size() == a.cols(), ErrorKind::shape_error,
          "u and v must have one entry per column of A");
  require(static_cast<Eigen::Index>(sampled.size()) == sampled.weights.size(),
          ErrorKind::shape_error, "weights and indices differ in length");
  const Vector b = a * u;
  const Vector y = u + v;
  const Vector shifted = a * y - b;
  const Vector direct = a * v;
  double shifted_sample = 0.0;
  double direct_sample = 0.0;
  for (std::size_t j = 0; j < sampled.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(sampled.source_indices[j]);
    require(i < a.rows(), ErrorKind::shape_error, "sample index out of range");
    const double w = sampled.weights(static_cast<Eigen::Index>(j));
    shifted_sample += w * std::pow(std::abs(shifted(i)), p);
    direct_sample += w * std::pow(std::abs(direct(i)), p);
  }
  ColumnSpaceShift out;
  out.shifted_ratio = std::pow(shifted_sample, 1.0 / p) / lp_norm(shifted, p);
  out.direct_ratio = std::pow(direct_sample, 1.0 / p) / lp_norm(direct, p);
  return out;
}

}  // namespace regcoreset
