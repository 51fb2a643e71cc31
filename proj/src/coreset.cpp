#include "regcoreset/coreset.hpp"

#include "regcoreset/error.hpp"
#include "regcoreset/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace regcoreset {

RegressionInstance Coreset::as_instance() const { return split_augmented(rows); }

std::size_t sample_size(double total_sensitivity, double epsilon, double delta, std::size_t d,
                        double constant) {
  require(total_sensitivity > 0.0 && std::isfinite(total_sensitivity),
          ErrorKind::invalid_parameter, "total sensitivity must be positive");
  require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::invalid_parameter, "epsilon must lie in (0, 1)");
  require(delta > 0.0 && delta < 1.0, ErrorKind::invalid_parameter, "delta must lie in (0, 1)");
  require(constant > 0.0 && std::isfinite(constant), ErrorKind::invalid_parameter,
          "sample-size constant must be positive");
  const double r = constant * total_sensitivity / (epsilon * epsilon) *
                   (static_cast<double>(d) * std::log(1.0 / epsilon) + std::log(1.0 / delta));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(r)));
}

Coreset build_coreset(const RegressionInstance& instance, const SensitivityScores& scores,
                      std::size_t r, double p, std::uint64_t seed) {
  instance.validate();
  require(r >= 1, ErrorKind::invalid_parameter, "coreset size must be >= 1");
  require(p >= 1.0, ErrorKind::invalid_parameter, "p must be >= 1");
  require(scores.size() == instance.n(), ErrorKind::shape_error,
          "score count does not match the number of rows");
  for (Eigen::Index i = 0; i < scores.values.size(); ++i) {
    require(scores.values(i) > 0.0 && std::isfinite(scores.values(i)), ErrorKind::invalid_scores,
            "score of row " + std::to_string(i) + " is not positive");
  }

  const Eigen::Index n = scores.values.size();
  std::vector<double> cumulative(static_cast<std::size_t>(n));
  double running = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    running += scores.values(i);
    cumulative[static_cast<std::size_t>(i)] = running;
  }
  const double total = scores.values.sum();

  Coreset out;
  out.seed = seed;
  out.scheme = scores.scheme;
  out.p = p;
  out.total = total;
  out.n = instance.n();
  out.source_indices.reserve(r);
  out.weights.resize(static_cast<Eigen::Index>(r));
  out.rows.resize(static_cast<Eigen::Index>(r), instance.design.cols() + 1);

  Rng rng(seed);
  for (std::size_t j = 0; j < r; ++j) {
    const double target = rng.uniform() * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) --it;
    const auto src = static_cast<Eigen::Index>(it - cumulative.begin());
    const double weight = total / (static_cast<double>(r) * scores.values(src));
    const double scale = std::pow(weight, 1.0 / p);
    const auto jj = static_cast<Eigen::Index>(j);
    out.source_indices.push_back(static_cast<std::size_t>(src));
    out.weights(jj) = weight;
    out.rows.row(jj).head(instance.design.cols()) = scale * instance.design.row(src);
    out.rows(jj, instance.design.cols()) = scale * instance.response(src);
  }
  return out;
}

Coreset identity_coreset(const RegressionInstance& instance, double p) {
  instance.validate();
  Coreset out;
  out.rows = augment(instance);
  out.weights = Vector::Ones(static_cast<Eigen::Index>(instance.n()));
  out.source_indices.resize(instance.n());
  for (std::size_t i = 0; i < instance.n(); ++i) out.source_indices[i] = i;
  out.scheme = Scheme::uniform;
  out.p = p;
  out.total = 1.0;
  out.n = instance.n();
  return out;
}

double coreset_loss(const RegressionInstance& instance, const Coreset& coreset, const Vector& x,
                    const ObjectiveSpec& spec) {
  require(x.size() == instance.design.cols(), ErrorKind::shape_error,
          "query length does not match design columns");
  Vector residual(static_cast<Eigen::Index>(coreset.size()));
  for (std::size_t j = 0; j < coreset.size(); ++j) {
    const std::size_t src = coreset.source_indices[j];
    require(src < instance.n(), ErrorKind::shape_error, "coreset source index out of range");
    const auto s = static_cast<Eigen::Index>(src);
    residual(static_cast<Eigen::Index>(j)) = instance.design.row(s).dot(x) - instance.response(s);
  }
  return weighted_loss(residual, coreset.weights, spec.p, spec.r);
}

double coreset_objective(const RegressionInstance& instance, const Coreset& coreset,
                         const Vector& x, const ObjectiveSpec& spec) {
  const double loss = coreset_loss(instance, coreset, x, spec);
  if (spec.lambda == 0.0) return loss;
  return loss + spec.lambda * std::pow(lp_norm(x, spec.q), spec.s);
}

CoresetVerificationReport verify_coreset(const RegressionInstance& instance, const Coreset& coreset,
                                         const ObjectiveSpec& spec,
                                         const std::vector<Vector>& queries, double epsilon) {
  instance.validate();
  spec.validate();
  require(!queries.empty(), ErrorKind::invalid_parameter, "query set is empty");
  require(epsilon >= 0.0, ErrorKind::invalid_parameter, "epsilon must be >= 0");
  require(static_cast<Eigen::Index>(coreset.size()) == coreset.weights.size(),
          ErrorKind::shape_error, "coreset weights and indices differ in length");

  CoresetVerificationReport report;
  report.epsilon = epsilon;
  report.deviations.reserve(queries.size());
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const double full = evaluate_objective(instance, queries[k], spec);
    if (!(full > 0.0)) {
      ++report.degenerate_queries;
      report.deviations.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double reduced = coreset_objective(instance, coreset, queries[k], spec);
    const double dev = std::abs(reduced - full) / full;
    report.deviations.push_back(dev);
    ++report.queries_checked;
    if (report.queries_checked == 1 || dev > report.max_relative_deviation) {
      report.max_relative_deviation = dev;
      report.worst_query_index = k;
    }
  }
  report.passed = report.max_relative_deviation <= epsilon;
  return report;
}

TransferReport transfer_check(const RegressionInstance& instance, const Coreset& coreset, double p,
                              double q, double lambda, const std::vector<Vector>& queries,
                              double epsilon) {
  require(p >= 1.0 && q >= 1.0, ErrorKind::invalid_parameter, "p and q must be >= 1");
  require(q <= p, ErrorKind::invalid_parameter, "transfer requires q <= p");
  TransferReport out;
  out.p_regularized =
      verify_coreset(instance, coreset, ObjectiveSpec::general(p, p, p, p, lambda), queries, epsilon);
  out.q_regularized =
      verify_coreset(instance, coreset, ObjectiveSpec::general(p, q, p, p, lambda), queries, epsilon);
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const double dp = out.p_regularized.deviations[k];
    const double dq = out.q_regularized.deviations[k];
    if (std::isnan(dp) || std::isnan(dq)) continue;
    if (dp <= epsilon && dq > epsilon) ++out.implication_failures;
  }
  out.holds = out.implication_failures == 0;
  return out;
}

std::vector<Vector> random_queries(std::size_t d, std::size_t count, std::uint64_t seed) {
  require(d >= 1, ErrorKind::invalid_parameter, "query dimension must be >= 1");
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vector x = rng.normal_vector(static_cast<Eigen::Index>(d));
    const double scale = std::pow(10.0, -2.0 + 4.0 * rng.uniform());
    out.push_back(scale * x / std::max(x.norm(), 1e-300));
  }
  return out;
}

}  // namespace regcoreset
