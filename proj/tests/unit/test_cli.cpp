#include "cli_app.hpp"

#include "regcoreset/serialization.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using regcoreset::Json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = regcoreset::cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data_path(const std::string& name) {
  return (std::filesystem::path(REGCORESET_TEST_DATA_DIR) / name).string();
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = data_path(name);
  std::ofstream(path) << text;
  return path;
}

// A = [1], b = [2]: ridge with lambda = 1 has minimizer x = 1.
std::string scalar_instance() {
  return write_file("scalar_instance.json", R"({"n": 1, "d": 1, "design": [1.0], "response": [2.0]})");
}

const std::vector<std::string> kSmallExperiment = {
    "experiment", "--n", "300", "--d", "4", "--ng-alpha", "0.01", "--sample-sizes", "15,30",
    "--trials-per-cell", "3", "--master-seed", "2", "--lambda-grid", "0.5"};

}  // namespace

TEST(Cli, HelpExitsZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("experiment"), std::string::npos);
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  const CliRun r = run({"frobnicate"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UnknownFlagIsUsageError) { EXPECT_EQ(run({"solve", "--bogus", "1"}).code, 1); }

TEST(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(run({}).code, 1); }

TEST(Cli, SolveScalarRidge) {
  const CliRun r = run({"solve", "--instance", scalar_instance(), "--family", "ridge", "--lambda", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = Json::parse(r.out);
  ASSERT_EQ(doc["result"]["solution"].size(), 1u);
  EXPECT_NEAR(doc["result"]["solution"][0].get<double>(), 1.0, 1e-8);
  EXPECT_NEAR(doc["result"]["objective_value"].get<double>(), 2.0, 1e-8);
  EXPECT_TRUE(doc["result"]["converged"].get<bool>());
  EXPECT_EQ(doc["config"]["lambda"], 1.0);
  EXPECT_EQ(doc["config"]["family"], "ridge");
}

TEST(Cli, NegativeLambdaRejected) {
  const CliRun r = run({"solve", "--instance", scalar_instance(), "--lambda", "-1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("lambda"), std::string::npos);
}

TEST(Cli, NonNumericValueRejected) {
  EXPECT_EQ(run({"solve", "--instance", scalar_instance(), "--lambda", "abc"}).code, 1);
}

TEST(Cli, MissingInstanceFileIsError) {
  EXPECT_EQ(run({"solve", "--instance", data_path("nope.json")}).code, 1);
}

TEST(Cli, GenCoresetVerifyPipeline) {
  const std::string inst = data_path("pipeline_instance.json");
  const std::string core = data_path("pipeline_coreset.json");
  ASSERT_EQ(run({"gen-ng", "--n", "200", "--d", "4", "--alpha", "0.1", "--seed", "3", "--out", inst}).code, 0);

  CliRun r = run({"coreset", "--instance", inst, "--scheme", "identity", "--out", core});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"verify", "--instance", inst, "--coreset", core, "--family", "ridge", "--lambda", "0.5", "--queries", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json doc = Json::parse(r.out);
  EXPECT_TRUE(doc["report"]["passed"].get<bool>());
  EXPECT_EQ(doc["report"]["max_relative_deviation"].get<double>(), 0.0);

  r = run({"coreset", "--instance", inst, "--scheme", "ridge-leverage", "--lambda", "0.5", "--size", "40",
           "--seed", "1", "--out", core});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"solve", "--instance", inst, "--coreset", core, "--family", "modified_lasso", "--lambda", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  doc = Json::parse(r.out);
  EXPECT_GT(doc["full_objective"].get<double>(), 0.0);
}

TEST(Cli, CoresetSizeAndEpsilonAreExclusive) {
  const std::string inst = data_path("excl_instance.json");
  ASSERT_EQ(run({"gen-ng", "--n", "50", "--d", "2", "--out", inst}).code, 0);
  EXPECT_EQ(run({"coreset", "--instance", inst, "--scheme", "uniform", "--size", "5", "--epsilon", "0.5"}).code, 1);
  EXPECT_EQ(run({"coreset", "--instance", inst, "--scheme", "uniform", "--epsilon", "1.5"}).code, 1);
  EXPECT_EQ(run({"coreset", "--instance", inst, "--scheme", "uniform", "--epsilon", "0.5"}).code, 0);
}

TEST(Cli, ExperimentIsByteIdenticalAcrossRunsAndThreads) {
  const CliRun a = run(kSmallExperiment);
  ASSERT_EQ(a.code, 0) << a.err;
  const CliRun b = run(kSmallExperiment);
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> threaded = kSmallExperiment;
  threaded.insert(threaded.end(), {"--threads", "3"});
  EXPECT_EQ(run(threaded).out, a.out);

  const Json doc = Json::parse(a.out);
  EXPECT_EQ(doc["config"]["n"], 300);
  EXPECT_EQ(doc["config"]["sample_sizes"], Json::parse("[15, 30]"));
  EXPECT_EQ(doc["master_seed"], 2);
  EXPECT_FALSE(doc["config"].contains("threads"));
  EXPECT_EQ(doc["table"]["rows"], Json::parse(R"(["15", "30"])"));
}

TEST(Cli, ExperimentCsvFormat) {
  std::vector<std::string> args = kSmallExperiment;
  args.insert(args.end(), {"--format", "csv"});
  const CliRun r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("label,", 0), 0u);
  EXPECT_EQ(r.out.back(), '\n');
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const std::string cfg = write_file("exp_config.json",
                                     R"({"n": 300, "d": 4, "ng_alpha": 0.01, "sample_sizes": [15], "trials_per_cell": 1, "master_seed": 9})");
  const CliRun r = run({"experiment", "--config", cfg, "--master-seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["config"]["master_seed"], 5);
  EXPECT_EQ(doc["config"]["trials_per_cell"], 1);
}

TEST(Cli, ConfigFileUnknownKeyRejected) {
  const std::string cfg = write_file("bad_config.json", R"({"n": 300, "colour": "red"})");
  EXPECT_EQ(run({"experiment", "--config", cfg}).code, 1);
}

TEST(Cli, EvenTrialCountRejected) {
  EXPECT_EQ(run({"experiment", "--trials-per-cell", "4"}).code, 1);
}

TEST(Cli, SparsityDefaultsToSixLambdas) {
  const CliRun r = run({"sparsity", "--n", "200", "--d", "4", "--ng-alpha", "0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["table"]["cols"].size(), 6u);
  EXPECT_EQ(doc["table"]["rows"][2], "ridge");
}

TEST(Cli, LowerboundDefaultWitness) {
  const CliRun r = run({"lowerbound", "--epsilon", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = Json::parse(r.out);
  ASSERT_FALSE(doc["witness"].is_null());
  EXPECT_EQ(doc["witness"]["direction"], "undershoot");
  EXPECT_NEAR(doc["witness"]["alpha"].get<double>(), 1.01 * 1.1 / 0.9, 1e-9);
}

TEST(Cli, LowerboundEqualExponentsRejected) {
  const CliRun r = run({"lowerbound", "--r", "2", "--s", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, LowerboundSpecFile) {
  const std::string spec = write_file("lb_spec.json", R"({"p": 2, "q": 2, "r": 1, "s": 2, "lambda": 0.5})");
  const CliRun r = run({"lowerbound", "--spec", spec});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["config"]["r"], 1);
}

TEST(Cli, EpsilonOutOfRangeRejected) {
  EXPECT_EQ(run({"lowerbound", "--epsilon", "1.5"}).code, 1);
  EXPECT_EQ(run({"lowerbound", "--epsilon", "0"}).code, 1);
}
