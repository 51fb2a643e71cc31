#include "cli_app.hpp"

#include "regcoreset/coreset.hpp"
#include "regcoreset/error.hpp"
#include "regcoreset/experiments.hpp"
#include "regcoreset/lowerbound.hpp"
#include "regcoreset/random.hpp"
#include "regcoreset/sensitivity.hpp"
#include "regcoreset/serialization.hpp"
#include "regcoreset/solvers.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace regcoreset::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Kind { real, count, text, boolean, real_list, count_list, text_list };

struct FlagDef {
  std::string key;
  Kind kind;
  std::string help;
};

std::string flag_name(const std::string& key) {
  std::string out = "--" + key;
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

std::vector<std::string> split(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

Json parse_scalar(const std::string& key, Kind kind, const std::string& raw) {
  const std::string where = "invalid value '" + raw + "' for " + flag_name(key);
  switch (kind) {
    case Kind::real:
    case Kind::real_list: {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(raw, &pos);
      } catch (const std::exception&) {
        throw UsageError(where);
      }
      if (pos != raw.size() || !std::isfinite(v)) throw UsageError(where);
      return v;
    }
    case Kind::count:
    case Kind::count_list: {
      if (raw.empty() || raw.find_first_not_of("0123456789") != std::string::npos) throw UsageError(where);
      try {
        return static_cast<std::uint64_t>(std::stoull(raw));
      } catch (const std::exception&) {
        throw UsageError(where);
      }
    }
    case Kind::boolean:
      if (raw == "true" || raw == "1") return true;
      if (raw == "false" || raw == "0") return false;
      throw UsageError(where);
    case Kind::text:
    case Kind::text_list: return raw;
  }
  throw UsageError(where);
}

Json parse_flag(const FlagDef& def, const std::string& raw) {
  if (def.kind == Kind::real_list || def.kind == Kind::count_list || def.kind == Kind::text_list) {
    Json list = Json::array();
    for (const auto& item : split(raw)) list.push_back(parse_scalar(def.key, def.kind, item));
    return list;
  }
  return parse_scalar(def.key, def.kind, raw);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::parse_error, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse_error, path + ": " + e.what());
  }
}

void write_document(const std::string& text, const std::string& path, std::ostream& out) {
  const char* end = !text.empty() && text.back() == '\n' ? "" : "\n";
  if (path.empty()) {
    out << text << end;
    return;
  }
  std::ofstream file(path);
  require(file.good(), ErrorKind::parse_error, "cannot write " + path);
  file << text << end;
}

/// One subcommand: its flags, the raw strings CLI11 fills, and its runner.
struct Command {
  CLI::App* app = nullptr;
  std::vector<FlagDef> flags;
  Json defaults;
  std::map<std::string, std::string> raw;
  std::string config_path;
  std::string layered_file_key;  // a flag naming a second JSON file merged after --config
  std::function<void(const Json&, std::ostream&)> run;

  const FlagDef* find(const std::string& key) const {
    for (const auto& f : flags) {
      if (f.key == key) return &f;
    }
    return nullptr;
  }

  void merge_file(Json& eff, const std::string& path) const {
    const Json file = read_json_file(path);
    require(file.is_object(), ErrorKind::schema_error, path + ": expected a JSON object");
    for (const auto& [key, value] : file.items()) {
      require(find(key) != nullptr, ErrorKind::schema_error, path + ": unknown key '" + key + "'");
      eff[key] = value;
    }
  }

  /// defaults < --config file < layered file < explicit flags.
  Json effective() const {
    Json eff = defaults;
    if (!config_path.empty()) merge_file(eff, config_path);
    if (!layered_file_key.empty()) {
      const std::string flag = flag_name(layered_file_key);
      std::string path = app->count(flag) > 0 ? raw.at(layered_file_key) : std::string();
      if (path.empty() && eff[layered_file_key].is_string()) path = eff[layered_file_key].get<std::string>();
      if (!path.empty()) merge_file(eff, path);
    }
    for (const auto& def : flags) {
      if (app->count(flag_name(def.key)) > 0) eff[def.key] = parse_flag(def, raw.at(def.key));
    }
    return eff;
  }
};

double real_of(const Json& eff, const std::string& key) {
  const Json& v = eff.at(key);
  if (!v.is_number()) throw UsageError(flag_name(key) + " must be a number");
  return v.get<double>();
}

std::uint64_t count_of(const Json& eff, const std::string& key) {
  const Json& v = eff.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) throw UsageError(flag_name(key) + " must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string text_of(const Json& eff, const std::string& key) {
  const Json& v = eff.at(key);
  if (v.is_null()) return {};
  if (!v.is_string()) throw UsageError(flag_name(key) + " must be a string");
  return v.get<std::string>();
}

bool bool_of(const Json& eff, const std::string& key) {
  const Json& v = eff.at(key);
  if (!v.is_boolean()) throw UsageError(flag_name(key) + " must be true or false");
  return v.get<bool>();
}

void check(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::invalid_parameter, message);
}

void check_lambda(double lambda) { check(lambda >= 0.0, "--lambda must be >= 0"); }

void check_open_unit(double v, const std::string& key) {
  check(v > 0.0 && v < 1.0, flag_name(key) + " must lie in (0, 1)");
}

const std::vector<FlagDef> kInstanceFlags = {
    {"instance", Kind::text, "instance JSON (from gen-ng)"},
    {"csv", Kind::text, "CSV file with a header row"},
    {"target", Kind::text, "target column of the CSV file"},
    {"normalize", Kind::boolean, "divide CSV features by their max absolute value"},
};

Json instance_defaults() {
  return Json{{"instance", ""}, {"csv", ""}, {"target", ""}, {"normalize", true}};
}

bool has_instance(const Json& eff) { return !text_of(eff, "instance").empty() || !text_of(eff, "csv").empty(); }

RegressionInstance load_instance(const Json& eff) {
  const std::string path = text_of(eff, "instance");
  if (!path.empty()) {
    const Json doc = read_json_file(path);
    return instance_from_json(doc.contains("instance") ? doc.at("instance") : doc);
  }
  const std::string csv = text_of(eff, "csv");
  if (!csv.empty()) {
    if (text_of(eff, "target").empty()) throw UsageError("--csv needs --target");
    return load_csv(csv, text_of(eff, "target"), bool_of(eff, "normalize"));
  }
  throw UsageError("one of --instance or --csv is required");
}

Coreset load_coreset(const std::string& path) {
  const Json doc = read_json_file(path);
  return coreset_from_json(doc.contains("coreset") ? doc.at("coreset") : doc);
}

Family family_of(const Json& eff) {
  const auto family = family_from_string(text_of(eff, "family"));
  check(family.has_value() && *family != Family::general,
        "--family must be one of lp_lp, ridge, lasso, modified_lasso, rlad, multiresponse_rlad");
  return *family;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

// ---- subcommands ----------------------------------------------------------

void run_gen_ng(const Json& eff, std::ostream& out) {
  const auto n = count_of(eff, "n");
  const auto d = count_of(eff, "d");
  const double alpha = real_of(eff, "alpha");
  const double noise = real_of(eff, "noise_scale");
  const auto seed = count_of(eff, "seed");
  check(d >= 2 && d % 2 == 0, "--d must be even and >= 2");
  check(n > d, "--n must exceed --d");
  check(alpha >= 0.0, "--alpha must be >= 0");
  check(noise >= 0.0, "--noise-scale must be >= 0");

  RegressionInstance inst;
  inst.design = generate_ng_matrix(n, d, alpha, derive_seed(seed, {0, 0}));
  Rng rng(derive_seed(seed, {0, 1}));
  const Vector x_true = rng.normal_vector(static_cast<Eigen::Index>(d));
  inst.response = generate_response(inst.design, x_true, noise, derive_seed(seed, {0, 2}));
  const Json doc{{"command", "gen-ng"},
                 {"config", eff},
                 {"seed", seed},
                 {"x_true", vector_to_json(x_true)},
                 {"instance", instance_to_json(inst)}};
  write_document(dump(doc), text_of(eff, "out"), out);
}

void run_coreset(const Json& eff, std::ostream& out) {
  const std::string scheme = text_of(eff, "scheme");
  const double lambda = real_of(eff, "lambda");
  const auto seed = count_of(eff, "seed");
  const bool by_size = !eff.at("size").is_null();
  const bool by_epsilon = !eff.at("epsilon").is_null();
  check_lambda(lambda);
  static const std::vector<std::string> known = {"uniform", "leverage", "ridge-leverage",
                                                 "lp-lp",   "rlad",     "identity"};
  check(std::find(known.begin(), known.end(), scheme) != known.end(),
        "--scheme must be one of uniform, leverage, ridge-leverage, lp-lp, rlad, identity");
  if (scheme != "identity") check(by_size != by_epsilon, "give exactly one of --size and --epsilon");
  if (by_size) check(count_of(eff, "size") >= 1, "--size must be >= 1");
  if (by_epsilon) check_open_unit(real_of(eff, "epsilon"), "epsilon");
  check_open_unit(real_of(eff, "delta"), "delta");
  check(real_of(eff, "constant") > 0.0, "--constant must be positive");
  double p = scheme == "rlad" ? 1.0 : 2.0;
  if (!eff.at("p").is_null()) p = real_of(eff, "p");
  check(p >= 1.0 && p <= 4.0, "--p must lie in [1, 4]");
  check(scheme != "rlad" || p == 1.0, "--scheme rlad needs p = 1");
  check(scheme == "lp-lp" || scheme == "rlad" || scheme == "identity" || scheme == "uniform" || p == 2.0,
        "leverage schemes need p = 2");

  const RegressionInstance inst = load_instance(eff);
  inst.validate();
  Coreset coreset;
  Json doc{{"command", "coreset"}, {"config", eff}, {"seed", seed}};
  if (scheme == "identity") {
    coreset = identity_coreset(inst, p);
  } else {
    const Matrix aprime = augment(inst);
    SensitivityScores scores;
    if (scheme == "uniform") {
      scores = uniform_scores(inst.n());
    } else if (scheme == "leverage") {
      scores = ridge_leverage_scores(aprime, 0.0);
    } else if (scheme == "ridge-leverage") {
      scores = ridge_leverage_scores(aprime, lambda);
    } else {
      const WellConditionedBasis basis = p_conditioned_basis(aprime, p, derive_seed(seed, {2}));
      scores = scheme == "rlad"
                   ? rlad_sensitivity_bounds(basis, lambda, aprime)
                   : lp_lp_sensitivity_bounds(basis, lambda, induced_norm_upper(aprime, p), inst.n());
    }
    const std::size_t r = by_size ? count_of(eff, "size")
                                  : sample_size(scores.total, real_of(eff, "epsilon"), real_of(eff, "delta"),
                                                inst.d() + 1, real_of(eff, "constant"));
    coreset = build_coreset(inst, scores, r, p, seed);
    doc["sensitivity_total"] = scores.total;
  }
  doc["sample_size"] = coreset.size();
  doc["coreset"] = coreset_to_json(coreset);
  write_document(dump(doc), text_of(eff, "out"), out);
}

SolverOptions solver_options(const Json& eff) {
  SolverOptions options;
  options.tol = real_of(eff, "tol");
  options.max_iter = count_of(eff, "max_iter");
  check(options.tol > 0.0, "--tol must be positive");
  check(options.max_iter >= 1, "--max-iter must be >= 1");
  return options;
}

void run_solve(const Json& eff, std::ostream& out) {
  const Family family = family_of(eff);
  const double lambda = real_of(eff, "lambda");
  const double p = real_of(eff, "p");
  check_lambda(lambda);
  check(p >= 1.0 && p <= 4.0, "--p must lie in [1, 4]");
  const SolverOptions options = solver_options(eff);
  const ObjectiveSpec spec = ObjectiveSpec::for_family(family, lambda, p);

  const std::string coreset_path = text_of(eff, "coreset");
  Json doc{{"command", "solve"}, {"config", eff}};
  if (!coreset_path.empty()) {
    const Coreset coreset = load_coreset(coreset_path);
    const SolverResult result = solve(coreset.as_instance(), spec, options);
    doc["result"] = solver_result_to_json(result);
    if (has_instance(eff)) {
      doc["full_objective"] = evaluate_objective(load_instance(eff), result.solution, spec);
    }
  } else {
    doc["result"] = solver_result_to_json(solve(load_instance(eff), spec, options));
  }
  write_document(dump(doc), text_of(eff, "out"), out);
}

void run_verify(const Json& eff, std::ostream& out) {
  const Family family = family_of(eff);
  const double lambda = real_of(eff, "lambda");
  const double p = real_of(eff, "p");
  const double epsilon = real_of(eff, "epsilon");
  const auto queries = count_of(eff, "queries");
  const auto seed = count_of(eff, "seed");
  check_lambda(lambda);
  check(p >= 1.0 && p <= 4.0, "--p must lie in [1, 4]");
  check_open_unit(epsilon, "epsilon");
  check(queries >= 1, "--queries must be >= 1");
  const std::string coreset_path = text_of(eff, "coreset");
  if (coreset_path.empty()) throw UsageError("--coreset is required");

  const RegressionInstance inst = load_instance(eff);
  const Coreset coreset = load_coreset(coreset_path);
  const auto query_set = random_queries(inst.d(), queries, seed);
  const auto report =
      verify_coreset(inst, coreset, ObjectiveSpec::for_family(family, lambda, p), query_set, epsilon);
  const Json doc{{"command", "verify"}, {"config", eff}, {"seed", seed}, {"report", verification_to_json(report)}};
  write_document(dump(doc), text_of(eff, "out"), out);
}

ExperimentConfig experiment_config(const Json& eff) {
  Json config = eff;
  config.erase("format");
  config.erase("out");
  ExperimentConfig c = config_from_json(config);
  c.validate();
  return c;
}

ReportFormat format_of(const Json& eff) {
  const std::string format = text_of(eff, "format");
  check(format == "csv" || format == "json", "--format must be csv or json");
  return format == "csv" ? ReportFormat::csv : ReportFormat::json;
}

void emit_table(const std::string& command, const ExperimentConfig& config, const DataTable& table,
                ReportFormat format, const std::string& path, std::ostream& out) {
  if (format == ReportFormat::csv) {
    write_document(emit_report(table, format), path, out);
    return;
  }
  // Thread count does not affect results, so it is left out to keep documents comparable.
  Json echoed = config_to_json(config);
  echoed.erase("threads");
  const Json doc{{"command", command},
                 {"config", echoed},
                 {"master_seed", config.master_seed},
                 {"seeding", "trial seed = splitmix64 chain over (master_seed, 1, scheme, size, lambda, trial)"},
                 {"table", table_to_json(table)}};
  write_document(dump(doc), path, out);
}

void run_experiment(const Json& eff, std::ostream& out) {
  const ReportFormat format = format_of(eff);
  const ExperimentConfig config = experiment_config(eff);
  emit_table("experiment", config, run_relative_error_experiment(config), format, text_of(eff, "out"), out);
}

void run_sparsity(const Json& eff, std::ostream& out) {
  const ReportFormat format = format_of(eff);
  const ExperimentConfig config = experiment_config(eff);
  emit_table("sparsity", config, run_sparsity_experiment(config), format, text_of(eff, "out"), out);
}

void run_lowerbound(const Json& eff, std::ostream& out) {
  const double p = real_of(eff, "p");
  const double q = real_of(eff, "q");
  const double r = real_of(eff, "r");
  const double s = real_of(eff, "s");
  const double lambda = real_of(eff, "lambda");
  const double epsilon = real_of(eff, "epsilon");
  const auto seed = count_of(eff, "seed");
  const auto probes = count_of(eff, "probes");
  check_lambda(lambda);
  check_open_unit(epsilon, "epsilon");
  check(probes >= 1, "--probes must be >= 1");
  const ObjectiveSpec spec = ObjectiveSpec::general(p, q, r, s, lambda);
  spec.validate();
  require(r != s, ErrorKind::theorem_inapplicable,
          "r = s: the regularized problem is not covered by the scaling construction");

  Matrix m;
  Coreset coreset;
  const std::string coreset_path = text_of(eff, "coreset");
  if (has_instance(eff) != !coreset_path.empty()) throw UsageError("give both --instance and --coreset, or neither");
  if (coreset_path.empty()) {
    // Two unit rows; the candidate keeps only the first with weight 1.
    m = Matrix::Identity(2, 2);
    coreset.rows = m.topRows(1);
    coreset.weights = Vector::Ones(1);
    coreset.source_indices = {0};
    coreset.n = 2;
    coreset.p = p;
  } else {
    m = augment(load_instance(eff));
    coreset = load_coreset(coreset_path);
  }
  const auto witness = demonstrate_violation(m, coreset, spec, epsilon, seed, probes);
  Json doc{{"command", "lowerbound"}, {"config", eff}, {"seed", seed}};
  doc["witness"] = witness ? witness_to_json(*witness) : Json(nullptr);
  write_document(dump(doc), text_of(eff, "out"), out);
}

std::vector<FlagDef> experiment_flags() {
  return {{"n", Kind::count, "rows of the NG matrix"},
          {"d", Kind::count, "columns of the NG matrix (even)"},
          {"ng_alpha", Kind::real, "scale of the Gaussian block"},
          {"noise_scale", Kind::real, "relative noise level"},
          {"lambda_grid", Kind::real_list, "comma-separated lambda values"},
          {"sample_sizes", Kind::count_list, "comma-separated coreset sizes"},
          {"trials_per_cell", Kind::count, "odd number of trials per cell"},
          {"master_seed", Kind::count, "master seed"},
          {"objective_family", Kind::text, "lp_lp, ridge, lasso, modified_lasso or rlad"},
          {"p", Kind::real, "loss exponent for lp_lp"},
          {"schemes", Kind::text_list, "uniform, leverage, ridge_leverage, lp_lp, rlad, identity"},
          {"tol", Kind::real, "solver tolerance"},
          {"max_iter", Kind::count, "solver iteration cap"},
          {"threads", Kind::count, "worker threads (0 = all cores)"},
          {"csv_path", Kind::text, "CSV data instead of the NG generator"},
          {"target_column", Kind::text, "target column of the CSV file"},
          {"normalize", Kind::boolean, "max-normalize CSV features"},
          {"format", Kind::text, "csv or json"},
          {"out", Kind::text, "output file (default stdout)"}};
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coresets for norm-regularized regression", "regcoreset"};
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> commands;

  auto add = [&](const std::string& name, const std::string& description, std::vector<FlagDef> flags,
                 Json defaults, std::function<void(const Json&, std::ostream&)> run,
                 std::string layered = {}) {
    auto cmd = std::make_unique<Command>();
    cmd->app = app.add_subcommand(name, description);
    cmd->flags = std::move(flags);
    cmd->defaults = std::move(defaults);
    cmd->run = std::move(run);
    cmd->layered_file_key = std::move(layered);
    cmd->app->add_option("--config", cmd->config_path, "JSON file whose keys mirror the flags");
    for (const auto& def : cmd->flags) {
      cmd->app->add_option(flag_name(def.key), cmd->raw[def.key], def.help);
    }
    commands.push_back(std::move(cmd));
  };

  auto with_instance = [](std::vector<FlagDef> flags) {
    flags.insert(flags.begin(), kInstanceFlags.begin(), kInstanceFlags.end());
    return flags;
  };
  auto merged = [](Json a, const Json& b) {
    a.update(b);
    return a;
  };

  add("gen-ng", "Generate an NG instance",
      {{"n", Kind::count, "rows"},
       {"d", Kind::count, "columns (even)"},
       {"alpha", Kind::real, "scale of the Gaussian block"},
       {"noise_scale", Kind::real, "relative noise level"},
       {"seed", Kind::count, "seed"},
       {"out", Kind::text, "output file (default stdout)"}},
      Json{{"n", 1000}, {"d", 10}, {"alpha", 0.00065}, {"noise_scale", 1e-5}, {"seed", 0}, {"out", ""}},
      run_gen_ng);

  add("coreset", "Sample a coreset",
      with_instance({{"scheme", Kind::text, "uniform, leverage, ridge-leverage, lp-lp, rlad or identity"},
                     {"lambda", Kind::real, "regularization strength"},
                     {"size", Kind::count, "number of draws"},
                     {"epsilon", Kind::real, "target accuracy; sets the size from the sample-size bound"},
                     {"delta", Kind::real, "failure probability for --epsilon"},
                     {"constant", Kind::real, "sample-size constant for --epsilon"},
                     {"p", Kind::real, "loss exponent (rlad: 1, others: 2)"},
                     {"seed", Kind::count, "seed"},
                     {"out", Kind::text, "output file (default stdout)"}}),
      merged(instance_defaults(), Json{{"scheme", ""},
                                       {"lambda", 0.0},
                                       {"size", nullptr},
                                       {"epsilon", nullptr},
                                       {"delta", 0.1},
                                       {"constant", kDefaultSampleSizeConstant},
                                       {"p", nullptr},
                                       {"seed", 0},
                                       {"out", ""}}),
      run_coreset);

  add("solve", "Solve a regularized regression problem",
      with_instance({{"coreset", Kind::text, "solve on this coreset instead of the instance"},
                     {"family", Kind::text, "lp_lp, ridge, lasso, modified_lasso, rlad"},
                     {"lambda", Kind::real, "regularization strength"},
                     {"p", Kind::real, "loss exponent for lp_lp"},
                     {"tol", Kind::real, "tolerance"},
                     {"max_iter", Kind::count, "iteration cap"},
                     {"out", Kind::text, "output file (default stdout)"}}),
      merged(instance_defaults(), Json{{"coreset", ""},
                                       {"family", "ridge"},
                                       {"lambda", 0.0},
                                       {"p", 2.0},
                                       {"tol", 1e-8},
                                       {"max_iter", 200000},
                                       {"out", ""}}),
      run_solve);

  add("verify", "Check a coreset on seeded random queries",
      with_instance({{"coreset", Kind::text, "coreset JSON"},
                     {"family", Kind::text, "objective family"},
                     {"lambda", Kind::real, "regularization strength"},
                     {"p", Kind::real, "loss exponent for lp_lp"},
                     {"epsilon", Kind::real, "accuracy to check"},
                     {"queries", Kind::count, "number of random queries"},
                     {"seed", Kind::count, "query seed"},
                     {"out", Kind::text, "output file (default stdout)"}}),
      merged(instance_defaults(), Json{{"coreset", ""},
                                       {"family", "ridge"},
                                       {"lambda", 0.0},
                                       {"p", 2.0},
                                       {"epsilon", 0.1},
                                       {"queries", 200},
                                       {"seed", 0},
                                       {"out", ""}}),
      run_verify);

  Json experiment_defaults = config_to_json(ExperimentConfig{});
  experiment_defaults["format"] = "json";
  experiment_defaults["out"] = "";
  add("experiment", "Relative-error experiment over schemes, sizes and lambdas", experiment_flags(),
      experiment_defaults, run_experiment);

  Json sparsity_defaults = experiment_defaults;
  sparsity_defaults["lambda_grid"] = {0.0, 0.001, 0.01, 0.1, 0.5, 1.0};
  add("sparsity", "Zero counts of lasso, modified lasso and ridge along a lambda grid",
      experiment_flags(), sparsity_defaults, run_sparsity);

  add("lowerbound", "Build a counterexample query from a failing coreset candidate",
      with_instance({{"spec", Kind::text, "JSON file with p, q, r, s, lambda"},
                     {"coreset", Kind::text, "coreset JSON over [A b] (default: one row of I_2)"},
                     {"p", Kind::real, "loss norm"},
                     {"q", Kind::real, "regularizer norm"},
                     {"r", Kind::real, "loss exponent"},
                     {"s", Kind::real, "regularizer exponent"},
                     {"lambda", Kind::real, "regularization strength"},
                     {"epsilon", Kind::real, "coreset accuracy"},
                     {"probes", Kind::count, "random probe directions"},
                     {"seed", Kind::count, "probe seed"},
                     {"out", Kind::text, "output file (default stdout)"}}),
      merged(instance_defaults(), Json{{"spec", ""},
                                       {"coreset", ""},
                                       {"p", 2.0},
                                       {"q", 1.0},
                                       {"r", 2.0},
                                       {"s", 1.0},
                                       {"lambda", 1.0},
                                       {"epsilon", 0.1},
                                       {"probes", 256},
                                       {"seed", 0},
                                       {"out", ""}}),
      run_lowerbound, "spec");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  for (const auto& cmd : commands) {
    if (!cmd->app->parsed()) continue;
    try {
      const Json eff = cmd->effective();
      cmd->run(eff, out);
      return 0;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n" << cmd->app->help();
      return 1;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return 2;
    }
  }
  err << app.help();
  return 1;
}

}  // namespace regcoreset::cli
