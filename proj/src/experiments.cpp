#include "regcoreset/experiments.hpp"

#include "regcoreset/conditioning.hpp"
#include "regcoreset/coreset.hpp"
#include "regcoreset/error.hpp"
#include "regcoreset/random.hpp"
#include "regcoreset/sensitivity.hpp"
#include "regcoreset/serialization.hpp"
#include "regcoreset/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace regcoreset {

namespace {

constexpr SamplingScheme kAllSchemes[] = {SamplingScheme::uniform,        SamplingScheme::leverage,
                                          SamplingScheme::ridge_leverage, SamplingScheme::lp_lp,
                                          SamplingScheme::rlad,           SamplingScheme::identity};

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs job(0..count-1) on up to `threads` workers; the first exception is rethrown.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& job) {
  threads = std::min(std::max<std::size_t>(threads, 1), std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_lambda(double lambda) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", lambda);
  return buf;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ObjectiveSpec experiment_spec(const ExperimentConfig& config, double lambda) {
  return ObjectiveSpec::for_family(config.objective_family, lambda, config.p);
}

}  // namespace

std::string_view to_string(SamplingScheme scheme) {
  switch (scheme) {
    case SamplingScheme::uniform: return "uniform";
    case SamplingScheme::leverage: return "leverage";
    case SamplingScheme::ridge_leverage: return "ridge_leverage";
    case SamplingScheme::lp_lp: return "lp_lp";
    case SamplingScheme::rlad: return "rlad";
    case SamplingScheme::identity: return "identity";
  }
  return "uniform";
}

std::optional<SamplingScheme> sampling_scheme_from_string(std::string_view name) {
  std::string normalized(name);
  std::replace(normalized.begin(), normalized.end(), '-', '_');
  for (SamplingScheme s : kAllSchemes) {
    if (normalized == to_string(s)) return s;
  }
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (csv_path.empty()) {
    require(d >= 2 && d % 2 == 0, ErrorKind::invalid_parameter, "d must be even and >= 2");
    require(n > d, ErrorKind::invalid_parameter, "n must exceed d");
    require(ng_alpha >= 0.0 && std::isfinite(ng_alpha), ErrorKind::invalid_parameter,
            "ng_alpha must be finite and >= 0");
  } else {
    require(!target_column.empty(), ErrorKind::invalid_parameter,
            "target_column is required with csv_path");
  }
  require(noise_scale >= 0.0 && std::isfinite(noise_scale), ErrorKind::invalid_parameter,
          "noise_scale must be finite and >= 0");
  require(!lambda_grid.empty(), ErrorKind::invalid_parameter, "lambda_grid is empty");
  for (double l : lambda_grid) {
    require(l >= 0.0 && std::isfinite(l), ErrorKind::invalid_parameter,
            "lambda values must be finite and >= 0");
  }
  require(!sample_sizes.empty(), ErrorKind::invalid_parameter, "sample_sizes is empty");
  for (std::size_t s : sample_sizes) {
    require(s >= 1, ErrorKind::invalid_parameter, "sample sizes must be >= 1");
  }
  require(trials_per_cell >= 1 && trials_per_cell % 2 == 1, ErrorKind::invalid_parameter,
          "trials_per_cell must be odd");
  require(!schemes.empty(), ErrorKind::invalid_parameter, "schemes is empty");
  require(objective_family != Family::general && objective_family != Family::multiresponse_rlad,
          ErrorKind::invalid_parameter, "experiments support lp_lp, ridge, lasso, modified_lasso, rlad");
  require(p >= 1.0 && p <= 4.0, ErrorKind::invalid_parameter, "p must lie in [1, 4]");
  const double loss_p = experiment_spec(*this, 0.0).p;
  for (SamplingScheme s : schemes) {
    if (s == SamplingScheme::rlad) {
      require(loss_p == 1.0, ErrorKind::scheme_mismatch, "rlad sampling needs a p = 1 loss");
    }
    if (s == SamplingScheme::leverage || s == SamplingScheme::ridge_leverage) {
      require(loss_p == 2.0, ErrorKind::scheme_mismatch, "leverage sampling needs a p = 2 loss");
    }
  }
  require(tol > 0.0, ErrorKind::invalid_parameter, "tol must be positive");
  require(max_iter >= 1, ErrorKind::invalid_parameter, "max_iter must be >= 1");
}

bool DataTable::operator==(const DataTable& other) const {
  auto same = [](double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; };
  if (row_labels != other.row_labels || col_labels != other.col_labels ||
      config_digest != other.config_digest || cells.size() != other.cells.size() ||
      trials.size() != other.trials.size()) {
    return false;
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].size() != other.cells[i].size()) return false;
    for (std::size_t j = 0; j < cells[i].size(); ++j) {
      if (!same(cells[i][j], other.cells[i][j])) return false;
    }
  }
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (trials[i].size() != other.trials[i].size()) return false;
    for (std::size_t j = 0; j < trials[i].size(); ++j) {
      if (trials[i][j].size() != other.trials[i][j].size()) return false;
      for (std::size_t k = 0; k < trials[i][j].size(); ++k) {
        if (!same(trials[i][j][k], other.trials[i][j][k])) return false;
      }
    }
  }
  return true;
}

Matrix generate_ng_matrix(std::size_t n, std::size_t d, double alpha, std::uint64_t seed) {
  require(d >= 2 && d % 2 == 0, ErrorKind::invalid_parameter, "d must be even and >= 2");
  require(n > d, ErrorKind::invalid_parameter, "n must exceed d");
  require(alpha >= 0.0 && std::isfinite(alpha), ErrorKind::invalid_parameter,
          "alpha must be finite and >= 0");
  const auto h = static_cast<Eigen::Index>(d / 2);
  const auto top = static_cast<Eigen::Index>(n) - h;
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  Rng rng(seed);
  for (Eigen::Index i = 0; i < top; ++i) {
    for (Eigen::Index j = 0; j < h; ++j) a(i, j) = alpha * rng.normal();
  }
  for (Eigen::Index i = 0; i < top; ++i) {
    for (Eigen::Index j = 0; j < h; ++j) a(i, h + j) = 1e-8 * rng.uniform();
  }
  a.bottomRightCorner(h, h).setIdentity();
  return a;
}

Vector generate_response(const Matrix& a, const Vector& x_true, double noise_scale,
                         std::uint64_t seed) {
  require(x_true.size() == a.cols(), ErrorKind::shape_error, "x_true length must equal cols(A)");
  require(noise_scale >= 0.0 && std::isfinite(noise_scale), ErrorKind::invalid_parameter,
          "noise_scale must be finite and >= 0");
  const Vector signal = a * x_true;
  if (noise_scale == 0.0) return signal;
  const double signal_norm = signal.norm();
  require(signal_norm > 0.0, ErrorKind::degenerate_signal, "A x_true is zero; noise level undefined");
  Rng rng(seed);
  const Vector e = rng.normal_vector(a.rows());
  return signal + (noise_scale * signal_norm / e.norm()) * e;
}

RegressionInstance load_csv(const std::string& path, const std::string& target_column,
                            bool normalize) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::parse_error, "cannot open " + path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorKind::parse_error, path + ": missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const std::vector<std::string> header = split_csv_line(line);
  const auto target_it = std::find(header.begin(), header.end(), target_column);
  require(target_it != header.end(), ErrorKind::schema_error,
          path + ": target column '" + target_column + "' not in header");
  require(header.size() >= 2, ErrorKind::schema_error, path + ": need at least one feature column");
  const auto target = static_cast<std::size_t>(target_it - header.begin());

  std::vector<std::vector<double>> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    require(cells.size() == header.size(), ErrorKind::parse_error,
            path + ": row " + std::to_string(line_number) + " has " + std::to_string(cells.size()) +
                " cells, expected " + std::to_string(header.size()));
    std::vector<double> values(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string& cell = cells[c];
      double v = 0.0;
      const char* begin = cell.data();
      const char* end = begin + cell.size();
      if (begin != end && *begin == '+') ++begin;
      const auto [ptr, ec] = std::from_chars(begin, end, v);
      require(!cell.empty() && ec == std::errc() && ptr == end && std::isfinite(v),
              ErrorKind::parse_error,
              path + ": row " + std::to_string(line_number) + ", column " + std::to_string(c + 1) +
                  " ('" + header[c] + "'): not a number: '" + cell + "'");
      values[c] = v;
    }
    rows.push_back(std::move(values));
  }
  require(!rows.empty(), ErrorKind::parse_error, path + ": no data rows");

  RegressionInstance out;
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(header.size() - 1);
  out.design.resize(n, d);
  out.response.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index col = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const double v = rows[static_cast<std::size_t>(i)][c];
      if (c == target) {
        out.response(i) = v;
      } else {
        out.design(i, col++) = v;
      }
    }
  }
  if (normalize) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double scale = out.design.col(j).cwiseAbs().maxCoeff();
      if (scale > 0.0) out.design.col(j) /= scale;
    }
  }
  return out;
}

double median(std::vector<double> values) {
  require(!values.empty(), ErrorKind::invalid_parameter, "median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t scheme_index,
                         std::size_t size_index, std::size_t lambda_index,
                         std::size_t trial_index) {
  return derive_seed(master_seed, {1, scheme_index, size_index, lambda_index, trial_index});
}

RegressionInstance experiment_instance(const ExperimentConfig& config) {
  config.validate();
  if (!config.csv_path.empty()) return load_csv(config.csv_path, config.target_column, config.normalize);
  RegressionInstance inst;
  inst.design = generate_ng_matrix(config.n, config.d, config.ng_alpha,
                                   derive_seed(config.master_seed, {0, 0}));
  Rng rng(derive_seed(config.master_seed, {0, 1}));
  const Vector x_true = rng.normal_vector(static_cast<Eigen::Index>(config.d));
  inst.response = generate_response(inst.design, x_true, config.noise_scale,
                                    derive_seed(config.master_seed, {0, 2}));
  return inst;
}

DataTable run_relative_error_experiment(const ExperimentConfig& config,
                                        std::vector<TrialReport>* trial_reports) {
  config.validate();
  const RegressionInstance inst = experiment_instance(config);
  const Matrix aprime = augment(inst);
  const std::size_t threads = resolve_threads(config.threads);
  const SolverOptions options{config.tol, config.max_iter};
  const std::size_t n_lambda = config.lambda_grid.size();
  const std::size_t n_scheme = config.schemes.size();
  const std::size_t n_size = config.sample_sizes.size();
  const std::size_t n_trial = config.trials_per_cell;

  // V1 for every lambda.
  std::vector<double> v1(n_lambda);
  parallel_for(n_lambda, threads, [&](std::size_t l) {
    v1[l] = solve(inst, experiment_spec(config, config.lambda_grid[l]), options).objective_value;
  });
  for (double v : v1) {
    require(v > 0.0, ErrorKind::degenerate_signal, "full-data optimum is zero; relative error undefined");
  }

  // Sampling scores per (scheme, lambda); bases are shared across lambdas.
  std::vector<std::vector<SensitivityScores>> scores(n_scheme, std::vector<SensitivityScores>(n_lambda));
  for (std::size_t s = 0; s < n_scheme; ++s) {
    const SamplingScheme scheme = config.schemes[s];
    std::optional<WellConditionedBasis> basis;
    double induced = 0.0;
    if (scheme == SamplingScheme::lp_lp || scheme == SamplingScheme::rlad) {
      const double bp = scheme == SamplingScheme::rlad ? 1.0 : experiment_spec(config, 0.0).p;
      basis = p_conditioned_basis(aprime, bp, derive_seed(config.master_seed, {2, s}));
      induced = induced_norm_upper(aprime, bp);
    }
    for (std::size_t l = 0; l < n_lambda; ++l) {
      const double lambda = config.lambda_grid[l];
      switch (scheme) {
        case SamplingScheme::uniform: scores[s][l] = uniform_scores(inst.n()); break;
        case SamplingScheme::leverage: scores[s][l] = ridge_leverage_scores(aprime, 0.0); break;
        case SamplingScheme::ridge_leverage: scores[s][l] = ridge_leverage_scores(aprime, lambda); break;
        case SamplingScheme::lp_lp:
          scores[s][l] = lp_lp_sensitivity_bounds(*basis, lambda, induced, inst.n());
          break;
        case SamplingScheme::rlad: scores[s][l] = rlad_sensitivity_bounds(*basis, lambda, aprime); break;
        case SamplingScheme::identity: break;
      }
    }
  }

  const std::size_t jobs = n_scheme * n_size * n_lambda * n_trial;
  std::vector<TrialReport> reports(jobs);
  parallel_for(jobs, threads, [&](std::size_t job) {
    std::size_t rest = job;
    const std::size_t t = rest % n_trial;
    rest /= n_trial;
    const std::size_t l = rest % n_lambda;
    rest /= n_lambda;
    const std::size_t k = rest % n_size;
    const std::size_t s = rest / n_size;
    const ObjectiveSpec spec = experiment_spec(config, config.lambda_grid[l]);

    TrialReport& rep = reports[job];
    rep.scheme = config.schemes[s];
    rep.sample_size = config.sample_sizes[k];
    rep.lambda = config.lambda_grid[l];
    rep.seed = trial_seed(config.master_seed, s, k, l, t);
    const Coreset coreset = rep.scheme == SamplingScheme::identity
                                ? identity_coreset(inst, spec.p)
                                : build_coreset(inst, scores[s][l], rep.sample_size, spec.p, rep.seed);
    const SolverResult sol = solve(coreset.as_instance(), spec, options);
    const double v2 = evaluate_objective(inst, sol.solution, spec);
    rep.relative_error = std::abs(v1[l] - v2) / v1[l];
    rep.solver_converged = sol.converged;
  });

  DataTable table;
  table.config_digest = config_digest(config);
  for (std::size_t k = 0; k < n_size; ++k) table.row_labels.push_back(std::to_string(config.sample_sizes[k]));
  for (std::size_t s = 0; s < n_scheme; ++s) {
    for (std::size_t l = 0; l < n_lambda; ++l) {
      table.col_labels.push_back(std::string(to_string(config.schemes[s])) + "@" +
                                 format_lambda(config.lambda_grid[l]));
    }
  }
  const std::size_t n_cols = n_scheme * n_lambda;
  table.cells.assign(n_size, std::vector<double>(n_cols));
  table.trials.assign(n_size, std::vector<std::vector<double>>(n_cols));
  for (std::size_t s = 0; s < n_scheme; ++s) {
    for (std::size_t k = 0; k < n_size; ++k) {
      for (std::size_t l = 0; l < n_lambda; ++l) {
        std::vector<double> converged;
        auto& trial_list = table.trials[k][s * n_lambda + l];
        for (std::size_t t = 0; t < n_trial; ++t) {
          const TrialReport& rep = reports[((s * n_size + k) * n_lambda + l) * n_trial + t];
          if (rep.solver_converged) {
            converged.push_back(rep.relative_error);
            trial_list.push_back(rep.relative_error);
          } else {
            trial_list.push_back(std::numeric_limits<double>::quiet_NaN());
          }
        }
        require(!converged.empty(), ErrorKind::invalid_parameter,
                "no converged trial in cell (" + table.row_labels[k] + ", " +
                    table.col_labels[s * n_lambda + l] + "); raise max_iter or tol");
        table.cells[k][s * n_lambda + l] = median(converged);
      }
    }
  }
  if (trial_reports != nullptr) *trial_reports = std::move(reports);
  return table;
}

DataTable run_sparsity_experiment(const ExperimentConfig& config) {
  config.validate();
  const RegressionInstance inst = experiment_instance(config);
  const SolverOptions options{config.tol, config.max_iter};
  const std::size_t n_lambda = config.lambda_grid.size();
  const Family methods[] = {Family::lasso, Family::modified_lasso, Family::ridge};

  DataTable table;
  table.config_digest = config_digest(config);
  for (Family f : methods) table.row_labels.emplace_back(to_string(f));
  for (double l : config.lambda_grid) table.col_labels.push_back(format_lambda(l));
  table.cells.assign(3, std::vector<double>(n_lambda));
  table.trials.assign(3, std::vector<std::vector<double>>(n_lambda));
  parallel_for(3 * n_lambda, resolve_threads(config.threads), [&](std::size_t job) {
    const std::size_t m = job / n_lambda;
    const std::size_t l = job % n_lambda;
    const SolverResult sol =
        solve(inst, ObjectiveSpec::for_family(methods[m], config.lambda_grid[l]), options);
    const double zeros = static_cast<double>(sparsity_count(sol.solution));
    table.cells[m][l] = zeros;
    table.trials[m][l] = {zeros};
  });
  return table;
}

std::string emit_report(const DataTable& table, ReportFormat format) {
  if (format == ReportFormat::json) return table_to_json(table).dump(2);
  std::ostringstream out;
  out << "label";
  for (const auto& c : table.col_labels) out << ',' << c;
  for (std::size_t i = 0; i < table.row_labels.size(); ++i) {
    out << '\n' << table.row_labels[i];
    for (double v : table.cells[i]) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%#.6g", v);
      out << ',' << buf;
    }
  }
  return out.str();
}

std::string config_digest(const ExperimentConfig& config) {
  Json j = config_to_json(config);
  j.erase("threads");
  const std::string canonical = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace regcoreset
