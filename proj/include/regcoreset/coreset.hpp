#pragma once

#include "regcoreset/matrix.hpp"
#include "regcoreset/objective.hpp"
#include "regcoreset/sensitivity.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace regcoreset {

/// Rows drawn i.i.d. with probability s_i / S, each carrying weight S / (r s_i).
/// `rows` holds the augmented rows [a_i b_i] pre-scaled by weight^(1/p), so
/// ||rows x'||_p^p equals the weighted loss sum_j w_j |a'_j x'|^p.
struct Coreset {
  Matrix rows;
  Vector weights;
  std::vector<std::size_t> source_indices;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::uniform;
  double p = 2.0;
  double total = 0.0;     // S of the scores it was drawn from
  std::size_t n = 0;      // rows in the source instance

  std::size_t size() const { return source_indices.size(); }
  std::size_t d() const { return rows.cols() > 0 ? static_cast<std::size_t>(rows.cols() - 1) : 0; }

  /// The pre-scaled rows as an ordinary regression instance.
  RegressionInstance as_instance() const;
};

struct CoresetVerificationReport {
  double max_relative_deviation = 0.0;
  std::size_t worst_query_index = 0;
  std::size_t queries_checked = 0;
  std::size_t degenerate_queries = 0;  // F(x) = 0, skipped
  double epsilon = 0.0;
  bool passed = true;
  std::vector<double> deviations;  // per query; NaN for degenerate ones
};

struct TransferReport {
  CoresetVerificationReport p_regularized;
  CoresetVerificationReport q_regularized;
  std::size_t implication_failures = 0;  // dev_p <= eps but dev_q > eps
  bool holds = true;
};

inline constexpr double kDefaultSampleSizeConstant = 0.5;

/// ceil(constant * S / eps^2 * (d ln(1/eps) + ln(1/delta))), at least 1.
std::size_t sample_size(double total_sensitivity, double epsilon, double delta, std::size_t d,
                        double constant = kDefaultSampleSizeConstant);

/// Draw r i.i.d. rows of [A b] proportionally to the scores. Deterministic in `seed`.
Coreset build_coreset(const RegressionInstance& instance, const SensitivityScores& scores,
                      std::size_t r, double p, std::uint64_t seed);

/// The whole data set with unit weights.
Coreset identity_coreset(const RegressionInstance& instance, double p);

/// Loss term of `spec` on the coreset: (sum_j w_j |a_j x - b_j|^p)^(r/p).
double coreset_loss(const RegressionInstance& instance, const Coreset& coreset, const Vector& x,
                    const ObjectiveSpec& spec);

/// Objective on the coreset: weighted loss plus the unchanged regularizer.
double coreset_objective(const RegressionInstance& instance, const Coreset& coreset,
                         const Vector& x, const ObjectiveSpec& spec);

/// max over queries of |F_c(x) - F(x)| / F(x).
CoresetVerificationReport verify_coreset(const RegressionInstance& instance, const Coreset& coreset,
                                         const ObjectiveSpec& spec,
                                         const std::vector<Vector>& queries, double epsilon);

/// Checks that a coreset for ||Ax-b||_p^p + lambda ||x||_p^p passing at eps
/// also passes for ||Ax-b||_p^p + lambda ||x||_q^p, query by query (q <= p).
TransferReport transfer_check(const RegressionInstance& instance, const Coreset& coreset, double p,
                              double q, double lambda, const std::vector<Vector>& queries,
                              double epsilon);

/// Seeded query points: Gaussian directions with log-uniform scale in [1e-2, 1e2].
std::vector<Vector> random_queries(std::size_t d, std::size_t count, std::uint64_t seed);

}  // namespace regcoreset
