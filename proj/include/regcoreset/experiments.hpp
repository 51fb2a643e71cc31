#pragma once

#include "regcoreset/matrix.hpp"
#include "regcoreset/objective.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace regcoreset {

/// How rows are sampled in an experiment cell.
enum class SamplingScheme {
  uniform,
  leverage,        // lambda = 0 leverage scores of [A b]
  ridge_leverage,  // ridge leverage scores of [A b] at the cell's lambda
  lp_lp,           // sensitivity bounds from a p-conditioned basis
  rlad,            // p = 1 sensitivity bounds
  identity,        // full data, unit weights
};

std::string_view to_string(SamplingScheme scheme);
/// Accepts the names above with '_' or '-'.
std::optional<SamplingScheme> sampling_scheme_from_string(std::string_view name);

struct ExperimentConfig {
  std::size_t n = 20000;
  std::size_t d = 30;
  double ng_alpha = 0.00065;
  double noise_scale = 1e-5;
  std::vector<double> lambda_grid{0.5};
  std::vector<std::size_t> sample_sizes{30, 50, 100, 150, 200};
  std::size_t trials_per_cell = 5;
  std::uint64_t master_seed = 0;
  Family objective_family = Family::modified_lasso;
  double p = 2.0;  // lp_lp family only
  std::vector<SamplingScheme> schemes{SamplingScheme::uniform, SamplingScheme::ridge_leverage};
  double tol = 1e-8;
  std::size_t max_iter = 200000;
  std::size_t threads = 0;  // 0 = all cores; not part of the digest, results do not depend on it
  // Optional CSV source instead of the NG generator.
  std::string csv_path;
  std::string target_column;
  bool normalize = true;

  void validate() const;
};

struct TrialReport {
  SamplingScheme scheme = SamplingScheme::uniform;
  std::size_t sample_size = 0;
  double lambda = 0.0;
  double relative_error = 0.0;
  std::uint64_t seed = 0;
  bool solver_converged = true;
};

struct DataTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<double>> cells;                // [row][col]
  std::vector<std::vector<std::vector<double>>> trials;  // [row][col][trial]
  std::string config_digest;

  bool operator==(const DataTable& other) const;
};

enum class ReportFormat { csv, json };

/// NG = [alpha randn(n-d/2, d/2)  1e-8 rand(n-d/2, d/2); zeros(d/2, d/2)  eye(d/2)].
Matrix generate_ng_matrix(std::size_t n, std::size_t d, double alpha, std::uint64_t seed);

/// b = A x_true + noise_scale (||A x_true|| / ||e||) e with e standard normal.
Vector generate_response(const Matrix& a, const Vector& x_true, double noise_scale,
                         std::uint64_t seed);

/// Reads a comma-separated file with a header row. Features are every column
/// except `target_column`; with `normalize`, each feature is divided by its
/// largest absolute value.
RegressionInstance load_csv(const std::string& path, const std::string& target_column,
                            bool normalize);

/// Median; even counts average the two middle values.
double median(std::vector<double> values);

/// Seeds: instance from derive_seed(master, {0, ...}); trial seeds from
/// derive_seed(master, {1, scheme, size, lambda, trial}).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t scheme_index,
                         std::size_t size_index, std::size_t lambda_index,
                         std::size_t trial_index);

/// The data set an experiment config describes (NG generator or CSV).
RegressionInstance experiment_instance(const ExperimentConfig& config);

/// Rows are sample sizes; columns are "<scheme>@<lambda>". Each cell is the
/// median over converged trials of |V1 - V2| / V1, where V1 is the full-data
/// optimum and V2 the full-data objective at the coreset optimum.
DataTable run_relative_error_experiment(const ExperimentConfig& config,
                                        std::vector<TrialReport>* trials = nullptr);

/// Rows lasso, modified_lasso, ridge; columns the lambda grid; cells the number
/// of coordinates below 1e-6 in the full-data solution.
DataTable run_sparsity_experiment(const ExperimentConfig& config);

std::string emit_report(const DataTable& table, ReportFormat format);

/// 16 hex digits of FNV-1a over the canonical JSON of the config.
std::string config_digest(const ExperimentConfig& config);

}  // namespace regcoreset
