#include "regcoreset/error.hpp"
#include "regcoreset/experiments.hpp"
#include "regcoreset/serialization.hpp"
#include "regcoreset/sensitivity.hpp"

#include "error_kind.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

using namespace regcoreset;
using testsupport::kind_of;

namespace {

std::string data_path(const std::string& name) {
  return (std::filesystem::path(REGCORESET_TEST_DATA_DIR) / name).string();
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = data_path(name);
  std::ofstream(path) << text;
  return path;
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n = 400;
  c.d = 6;
  c.ng_alpha = 0.01;
  c.lambda_grid = {0.5};
  c.sample_sizes = {20, 40};
  c.trials_per_cell = 3;
  c.master_seed = 4;
  c.threads = 1;
  return c;
}

}  // namespace

TEST(NgMatrix, BlockStructure) {
  const Matrix a = generate_ng_matrix(100, 6, 0.5, 1);
  ASSERT_EQ(a.rows(), 100);
  ASSERT_EQ(a.cols(), 6);
  EXPECT_EQ(a.bottomRightCorner(3, 3), Matrix::Identity(3, 3));
  EXPECT_EQ(a.bottomLeftCorner(3, 3), Matrix::Zero(3, 3));
  EXPECT_LE(a.topRightCorner(97, 3).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_GT(a.topLeftCorner(97, 3).cwiseAbs().maxCoeff(), 0.0);
}

TEST(NgMatrix, IdentityRowsHaveFullLeverage) {
  const Matrix a = generate_ng_matrix(100, 6, 0.5, 2);
  const SensitivityScores s = ridge_leverage_scores(a, 0.0);
  for (Eigen::Index i = 97; i < 100; ++i) EXPECT_GT(s.values(i), 0.999);
}

TEST(NgMatrix, RejectsOddDimension) {
  EXPECT_EQ(kind_of([] { generate_ng_matrix(100, 5, 0.5, 1); }), ErrorKind::invalid_parameter);
}

TEST(NgMatrix, DeterministicGivenSeed) {
  EXPECT_EQ(generate_ng_matrix(50, 4, 0.1, 9), generate_ng_matrix(50, 4, 0.1, 9));
}

TEST(Response, NoiselessIsExact) {
  const Matrix a = testsupport::random_matrix(20, 3, 1);
  const Vector x = testsupport::random_vector(3, 2);
  EXPECT_EQ(generate_response(a, x, 0.0, 5), a * x);
}

TEST(Response, NoiseHasRequestedRelativeSize) {
  const Matrix a = testsupport::random_matrix(200, 4, 3);
  const Vector x = testsupport::random_vector(4, 4);
  const Vector b = generate_response(a, x, 1e-5, 6);
  EXPECT_NEAR((b - a * x).norm() / (a * x).norm(), 1e-5, 1e-12);
  EXPECT_EQ(b, generate_response(a, x, 1e-5, 6));
}

TEST(Response, ZeroSignalIsDegenerate) {
  const Matrix a = testsupport::random_matrix(10, 2, 3);
  EXPECT_EQ(kind_of([&] { generate_response(a, Vector::Zero(2), 0.1, 1); }), ErrorKind::degenerate_signal);
}

TEST(LoadCsv, NormalizesByMaxAbs) {
  const std::string path = write_file("two_rows.csv", "x,y\n1,3\n2,4\n");
  const RegressionInstance inst = load_csv(path, "y", true);
  ASSERT_EQ(inst.design.rows(), 2);
  ASSERT_EQ(inst.design.cols(), 1);
  EXPECT_DOUBLE_EQ(inst.design(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(inst.design(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(inst.response(0), 3.0);
  EXPECT_DOUBLE_EQ(inst.response(1), 4.0);
}

TEST(LoadCsv, PowerPlantSchema) {
  const std::string path = write_file("ccpp.csv",
                                      "AT,V,AP,RH,PE\n"
                                      "14.96,41.76,1024.07,73.17,463.26\n"
                                      "25.18,62.96,1020.04,59.08,444.37\n"
                                      "5.11,39.4,1012.16,92.14,488.56\n"
                                      "-20.86,57.32,1010.24,76.64,446.48\n");
  const RegressionInstance inst = load_csv(path, "PE", true);
  EXPECT_EQ(inst.design.cols(), 4);
  EXPECT_EQ(inst.design.rows(), 4);
  for (Eigen::Index j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(inst.design.col(j).cwiseAbs().maxCoeff(), 1.0);
  EXPECT_DOUBLE_EQ(inst.design(3, 0), -20.86 / 25.18);
  const RegressionInstance raw = load_csv(path, "PE", false);
  EXPECT_DOUBLE_EQ(raw.design(0, 2), 1024.07);
}

TEST(LoadCsv, BadCellReportsLocation) {
  const std::string path = write_file("bad_cell.csv", "a,b,t\n1,2,3\n4,oops,6\n");
  try {
    load_csv(path, "t", true);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error);
    const std::string what = e.what();
    EXPECT_NE(what.find("row 3"), std::string::npos) << what;
    EXPECT_NE(what.find("column 2"), std::string::npos) << what;
  }
}

TEST(LoadCsv, MissingTargetIsSchemaError) {
  const std::string path = write_file("no_target.csv", "a,b\n1,2\n");
  EXPECT_EQ(kind_of([&] { load_csv(path, "PE", true); }), ErrorKind::schema_error);
}

TEST(LoadCsv, MissingFileIsParseError) {
  EXPECT_EQ(kind_of([] { load_csv(data_path("does_not_exist.csv"), "y", true); }), ErrorKind::parse_error);
}

TEST(Median, OddAndEvenCounts) {
  EXPECT_DOUBLE_EQ(median({0.3, 0.1, 0.5, 0.2, 0.4}), 0.3);
  EXPECT_DOUBLE_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
  EXPECT_EQ(kind_of([] { median({}); }), ErrorKind::invalid_parameter);
}

TEST(Config, EvenTrialCountRejected) {
  ExperimentConfig c = small_config();
  c.trials_per_cell = 4;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::invalid_parameter);
}

TEST(Config, SchemeMustMatchLoss) {
  ExperimentConfig c = small_config();
  c.schemes = {SamplingScheme::rlad};
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::scheme_mismatch);
  c.objective_family = Family::rlad;
  c.schemes = {SamplingScheme::ridge_leverage};
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::scheme_mismatch);
}

TEST(Config, DigestIgnoresThreadsOnly) {
  ExperimentConfig a = small_config();
  ExperimentConfig b = a;
  b.threads = 7;
  EXPECT_EQ(config_digest(a), config_digest(b));
  EXPECT_EQ(config_digest(a).size(), 16u);
  b.master_seed = 5;
  EXPECT_NE(config_digest(a), config_digest(b));
}

TEST(RelativeError, IdentitySchemeIsExact) {
  ExperimentConfig c = small_config();
  c.schemes = {SamplingScheme::identity};
  const DataTable t = run_relative_error_experiment(c);
  for (const auto& row : t.cells) {
    for (double v : row) EXPECT_LT(v, 1e-6);
  }
}

TEST(RelativeError, CellsAreMediansOfTrials) {
  const ExperimentConfig c = small_config();
  std::vector<TrialReport> reports;
  const DataTable t = run_relative_error_experiment(c, &reports);
  ASSERT_EQ(t.row_labels, (std::vector<std::string>{"20", "40"}));
  ASSERT_EQ(t.col_labels.size(), 2u);
  EXPECT_EQ(reports.size(), 2u * 2u * 1u * 3u);
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    for (std::size_t j = 0; j < t.cells[i].size(); ++j) {
      ASSERT_EQ(t.trials[i][j].size(), 3u);
      for (double v : t.trials[i][j]) EXPECT_GE(v, 0.0);
      EXPECT_DOUBLE_EQ(t.cells[i][j], testsupport::median_of(t.trials[i][j]));
    }
  }
  for (const TrialReport& r : reports) EXPECT_TRUE(r.solver_converged);
}

TEST(RelativeError, IndependentOfThreadCount) {
  ExperimentConfig c = small_config();
  const DataTable one = run_relative_error_experiment(c);
  c.threads = 4;
  const DataTable four = run_relative_error_experiment(c);
  EXPECT_TRUE(one == four);
  EXPECT_EQ(emit_report(one, ReportFormat::csv), emit_report(four, ReportFormat::csv));
}

TEST(RelativeError, TrialSeedsAreDistinct) {
  EXPECT_NE(trial_seed(0, 0, 0, 0, 0), trial_seed(0, 0, 0, 0, 1));
  EXPECT_NE(trial_seed(0, 0, 0, 0, 0), trial_seed(0, 1, 0, 0, 0));
  EXPECT_EQ(trial_seed(3, 1, 2, 0, 4), trial_seed(3, 1, 2, 0, 4));
}

TEST(Sparsity, RidgeIsDenseAndLassoGainsZeros) {
  ExperimentConfig c = small_config();
  c.lambda_grid = {0.0, 0.01, 0.1, 1.0};
  const DataTable t = run_sparsity_experiment(c);
  ASSERT_EQ(t.row_labels, (std::vector<std::string>{"lasso", "modified_lasso", "ridge"}));
  for (double v : t.cells[2]) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(t.cells[0][0], t.cells[1][0]);
  EXPECT_EQ(t.cells[1][0], t.cells[2][0]);
  for (std::size_t l = 1; l < 4; ++l) EXPECT_GE(t.cells[1][l], t.cells[1][l - 1]);
}

TEST(EmitReport, CsvSingleCell) {
  DataTable t;
  t.row_labels = {"row"};
  t.col_labels = {"col"};
  t.cells = {{0.5}};
  t.trials = {{{0.5}}};
  EXPECT_EQ(emit_report(t, ReportFormat::csv), "label,col\nrow,0.500000");
}

TEST(EmitReport, JsonRoundTrips) {
  const DataTable t = run_relative_error_experiment(small_config());
  const DataTable back = table_from_json(Json::parse(emit_report(t, ReportFormat::json)));
  EXPECT_TRUE(back == t);
}

TEST(SchemeNames, RoundTrip) {
  for (SamplingScheme s : {SamplingScheme::uniform, SamplingScheme::leverage, SamplingScheme::ridge_leverage,
                           SamplingScheme::lp_lp, SamplingScheme::rlad, SamplingScheme::identity}) {
    EXPECT_EQ(sampling_scheme_from_string(to_string(s)), s);
  }
  EXPECT_EQ(sampling_scheme_from_string("ridge-leverage"), SamplingScheme::ridge_leverage);
  EXPECT_FALSE(sampling_scheme_from_string("bogus").has_value());
}
