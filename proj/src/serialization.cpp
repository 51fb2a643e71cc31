#include "regcoreset/serialization.hpp"

#include "regcoreset/error.hpp"

#include <cmath>
#include <limits>
#include <type_traits>

namespace regcoreset {

namespace {

const Json& field(const Json& j, const char* key) {
  require(j.is_object(), ErrorKind::schema_error, "expected a JSON object");
  const auto it = j.find(key);
  require(it != j.end(), ErrorKind::schema_error, std::string("missing key '") + key + "'");
  return *it;
}

template <typename T>
T get(const Json& j, const char* key) {
  const Json& value = field(j, key);
  if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
    require(value.is_number_integer() && (value.is_number_unsigned() || value.get<std::int64_t>() >= 0),
            ErrorKind::schema_error,
            std::string("key '") + key + "' must be a nonnegative integer");
  }
  if constexpr (std::is_same_v<T, bool>) {
    require(value.is_boolean(), ErrorKind::schema_error, std::string("key '") + key + "' must be a boolean");
  }
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::schema_error, std::string("key '") + key + "' has the wrong type");
  }
}

Json number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

double number_from(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  require(j.is_number(), ErrorKind::schema_error, "expected a number");
  return j.get<double>();
}

Json flat_matrix(const Matrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return data;
}

Matrix matrix_from_flat(const Json& data, std::size_t rows, std::size_t cols, const char* what) {
  require(data.is_array() && data.size() == rows * cols, ErrorKind::schema_error,
          std::string(what) + ": expected " + std::to_string(rows * cols) + " row-major entries");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = number_from(data[k++]);
  }
  return m;
}

}  // namespace

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  require(j.is_array(), ErrorKind::schema_error, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number_from(j[i]);
  return v;
}

Json instance_to_json(const RegressionInstance& instance) {
  return Json{{"n", instance.n()},
              {"d", instance.d()},
              {"design", flat_matrix(instance.design)},
              {"response", vector_to_json(instance.response)}};
}

RegressionInstance instance_from_json(const Json& j) {
  const auto n = get<std::size_t>(j, "n");
  const auto d = get<std::size_t>(j, "d");
  RegressionInstance out;
  out.design = matrix_from_flat(field(j, "design"), n, d, "design");
  out.response = vector_from_json(field(j, "response"));
  require(static_cast<std::size_t>(out.response.size()) == n, ErrorKind::schema_error,
          "response length differs from n");
  out.validate();
  return out;
}

Json coreset_to_json(const Coreset& coreset) {
  return Json{{"n", coreset.n},
              {"d", coreset.d()},
              {"r", coreset.size()},
              {"seed", coreset.seed},
              {"scheme", std::string(to_string(coreset.scheme))},
              {"p", coreset.p},
              {"total", coreset.total},
              {"source_indices", coreset.source_indices},
              {"weights", vector_to_json(coreset.weights)},
              {"rows", flat_matrix(coreset.rows)}};
}

Coreset coreset_from_json(const Json& j) {
  Coreset out;
  out.n = get<std::size_t>(j, "n");
  const auto d = get<std::size_t>(j, "d");
  const auto r = get<std::size_t>(j, "r");
  out.seed = get<std::uint64_t>(j, "seed");
  const auto scheme = scheme_from_string(get<std::string>(j, "scheme"));
  require(scheme.has_value(), ErrorKind::schema_error, "unknown scheme");
  out.scheme = *scheme;
  out.p = get<double>(j, "p");
  out.total = get<double>(j, "total");
  out.source_indices = get<std::vector<std::size_t>>(j, "source_indices");
  out.weights = vector_from_json(field(j, "weights"));
  out.rows = matrix_from_flat(field(j, "rows"), r, d + 1, "rows");
  require(out.source_indices.size() == r && static_cast<std::size_t>(out.weights.size()) == r,
          ErrorKind::schema_error, "source_indices and weights must have r entries");
  for (std::size_t i : out.source_indices) {
    require(i < out.n, ErrorKind::schema_error, "source index out of range");
  }
  return out;
}

Json scores_to_json(const SensitivityScores& scores) {
  return Json{{"scheme", std::string(to_string(scores.scheme))},
              {"lambda", scores.lambda},
              {"p", scores.p},
              {"total", scores.total},
              {"values", vector_to_json(scores.values)}};
}

Json solver_result_to_json(const SolverResult& result) {
  return Json{{"solution", vector_to_json(result.solution)},
              {"objective_value", number(result.objective_value)},
              {"iterations", result.iterations},
              {"converged", result.converged},
              {"optimality_residual", number(result.optimality_residual)}};
}

Json solver_result_to_json(const MultiSolverResult& result) {
  Json cols = Json::array();
  for (Eigen::Index c = 0; c < result.solution.cols(); ++c) {
    cols.push_back(vector_to_json(result.solution.col(c)));
  }
  return Json{{"solution_columns", cols},
              {"objective_value", number(result.objective_value)},
              {"iterations", result.iterations},
              {"converged", result.converged},
              {"optimality_residual", number(result.optimality_residual)}};
}

Json verification_to_json(const CoresetVerificationReport& report) {
  return Json{{"max_relative_deviation", report.max_relative_deviation},
              {"worst_query_index", report.worst_query_index},
              {"queries_checked", report.queries_checked},
              {"degenerate_queries", report.degenerate_queries},
              {"epsilon", report.epsilon},
              {"passed", report.passed}};
}

Json transfer_to_json(const TransferReport& report) {
  return Json{{"p_regularized", verification_to_json(report.p_regularized)},
              {"q_regularized", verification_to_json(report.q_regularized)},
              {"implication_failures", report.implication_failures},
              {"holds", report.holds}};
}

Json witness_to_json(const CounterexampleWitness& witness) {
  return Json{{"base_x", vector_to_json(witness.base_x)},
              {"alpha", witness.alpha},
              {"y", vector_to_json(witness.y)},
              {"epsilon", witness.epsilon},
              {"epsilon_prime", witness.epsilon_prime},
              {"direction", std::string(to_string(witness.direction))},
              {"regularized_ratio", witness.regularized_ratio}};
}

Json table_to_json(const DataTable& table) {
  Json cells = Json::array();
  for (const auto& row : table.cells) {
    Json r = Json::array();
    for (double v : row) r.push_back(number(v));
    cells.push_back(r);
  }
  Json trials = Json::array();
  for (const auto& row : table.trials) {
    Json r = Json::array();
    for (const auto& cell : row) {
      Json c = Json::array();
      for (double v : cell) c.push_back(number(v));
      r.push_back(c);
    }
    trials.push_back(r);
  }
  return Json{{"rows", table.row_labels},
              {"cols", table.col_labels},
              {"cells", cells},
              {"trials", trials},
              {"config_digest", table.config_digest}};
}

DataTable table_from_json(const Json& j) {
  DataTable t;
  t.row_labels = get<std::vector<std::string>>(j, "rows");
  t.col_labels = get<std::vector<std::string>>(j, "cols");
  t.config_digest = get<std::string>(j, "config_digest");
  const Json& cells = field(j, "cells");
  const Json& trials = field(j, "trials");
  require(cells.is_array() && cells.size() == t.row_labels.size() && trials.is_array() &&
              trials.size() == t.row_labels.size(),
          ErrorKind::schema_error, "cells and trials need one entry per row");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    require(cells[i].is_array() && cells[i].size() == t.col_labels.size() &&
                trials[i].is_array() && trials[i].size() == t.col_labels.size(),
            ErrorKind::schema_error, "cells and trials need one entry per column");
    std::vector<double> row;
    std::vector<std::vector<double>> trial_row;
    for (std::size_t c = 0; c < cells[i].size(); ++c) {
      row.push_back(number_from(cells[i][c]));
      require(trials[i][c].is_array(), ErrorKind::schema_error, "trial lists must be arrays");
      std::vector<double> list;
      for (const Json& v : trials[i][c]) list.push_back(number_from(v));
      trial_row.push_back(std::move(list));
    }
    t.cells.push_back(std::move(row));
    t.trials.push_back(std::move(trial_row));
  }
  return t;
}

Json config_to_json(const ExperimentConfig& config) {
  Json schemes = Json::array();
  for (SamplingScheme s : config.schemes) schemes.push_back(std::string(to_string(s)));
  return Json{{"n", config.n},
              {"d", config.d},
              {"ng_alpha", config.ng_alpha},
              {"noise_scale", config.noise_scale},
              {"lambda_grid", config.lambda_grid},
              {"sample_sizes", config.sample_sizes},
              {"trials_per_cell", config.trials_per_cell},
              {"master_seed", config.master_seed},
              {"objective_family", std::string(to_string(config.objective_family))},
              {"p", config.p},
              {"schemes", schemes},
              {"tol", config.tol},
              {"max_iter", config.max_iter},
              {"threads", config.threads},
              {"csv_path", config.csv_path},
              {"target_column", config.target_column},
              {"normalize", config.normalize}};
}

ExperimentConfig config_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::schema_error, "config must be a JSON object");
  const Json known = config_to_json(ExperimentConfig{});
  for (const auto& [key, value] : j.items()) {
    require(known.contains(key), ErrorKind::schema_error, "unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  if (j.contains("n")) c.n = get<std::size_t>(j, "n");
  if (j.contains("d")) c.d = get<std::size_t>(j, "d");
  if (j.contains("ng_alpha")) c.ng_alpha = get<double>(j, "ng_alpha");
  if (j.contains("noise_scale")) c.noise_scale = get<double>(j, "noise_scale");
  if (j.contains("lambda_grid")) c.lambda_grid = get<std::vector<double>>(j, "lambda_grid");
  if (j.contains("sample_sizes")) c.sample_sizes = get<std::vector<std::size_t>>(j, "sample_sizes");
  if (j.contains("trials_per_cell")) c.trials_per_cell = get<std::size_t>(j, "trials_per_cell");
  if (j.contains("master_seed")) c.master_seed = get<std::uint64_t>(j, "master_seed");
  if (j.contains("objective_family")) {
    const auto f = family_from_string(get<std::string>(j, "objective_family"));
    require(f.has_value(), ErrorKind::schema_error, "unknown objective_family");
    c.objective_family = *f;
  }
  if (j.contains("p")) c.p = get<double>(j, "p");
  if (j.contains("schemes")) {
    c.schemes.clear();
    for (const auto& name : get<std::vector<std::string>>(j, "schemes")) {
      const auto s = sampling_scheme_from_string(name);
      require(s.has_value(), ErrorKind::schema_error, "unknown scheme '" + name + "'");
      c.schemes.push_back(*s);
    }
  }
  if (j.contains("tol")) c.tol = get<double>(j, "tol");
  if (j.contains("max_iter")) c.max_iter = get<std::size_t>(j, "max_iter");
  if (j.contains("threads")) c.threads = get<std::size_t>(j, "threads");
  if (j.contains("csv_path")) c.csv_path = get<std::string>(j, "csv_path");
  if (j.contains("target_column")) c.target_column = get<std::string>(j, "target_column");
  if (j.contains("normalize")) c.normalize = get<bool>(j, "normalize");
  return c;
}

}  // namespace regcoreset
