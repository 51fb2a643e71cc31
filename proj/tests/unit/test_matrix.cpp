#include "regcoreset/error.hpp"
#include "regcoreset/matrix.hpp"

#include "error_kind.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace regcoreset;
using testsupport::kind_of;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST(EntrywiseNorm, IdentityFrobenius) {
  EXPECT_NEAR(entrywise_p_norm(Matrix::Identity(2, 2), 2.0), std::sqrt(2.0), 1e-12);
}

TEST(EntrywiseNorm, HandSumOfAbsoluteEntries) {
  EXPECT_DOUBLE_EQ(entrywise_p_norm(mat({{1, -2}, {3, 0}}), 1.0), 6.0);
}

TEST(EntrywiseNorm, PythagoreanRow) { EXPECT_DOUBLE_EQ(entrywise_p_norm(mat({{3, 4}}), 2.0), 5.0); }

TEST(EntrywiseNorm, RejectsPBelowOne) {
  EXPECT_EQ(kind_of([] { entrywise_p_norm(Matrix::Identity(2, 2), 0.5); }), ErrorKind::invalid_parameter);
}

TEST(EntrywiseNorm, FrobeniusMatchesSingularValues) {
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    const Matrix m = testsupport::random_matrix(12, 4, seed);
    const Eigen::JacobiSVD<Matrix> oracle(m);
    EXPECT_NEAR(entrywise_p_norm(m, 2.0), oracle.singularValues().norm(), 1e-8);
  }
}

TEST(InducedNorm, Diagonal) { EXPECT_DOUBLE_EQ(induced_norm_upper(mat({{1, 0}, {0, 2}}), 1.0), 2.0); }

TEST(InducedNorm, Permutation) { EXPECT_NEAR(induced_norm_upper(mat({{0, 1}, {1, 0}}), 2.0), 1.0, 1e-12); }

TEST(InducedNorm, OnesColumnSums) { EXPECT_DOUBLE_EQ(induced_norm_upper(mat({{1, 1}, {1, 1}}), 1.0), 2.0); }

TEST(InducedNorm, InfinityIsMaxRowSum) {
  EXPECT_DOUBLE_EQ(induced_norm_upper(mat({{1, -3}, {2, 0}}), std::numeric_limits<double>::infinity()), 4.0);
}

TEST(InducedNorm, RejectsPBelowOne) {
  EXPECT_EQ(kind_of([] { induced_norm_upper(Matrix::Identity(2, 2), 0.9); }), ErrorKind::invalid_parameter);
}

TEST(InducedNorm, UpperBoundsRandomRatios) {
  const Matrix m = testsupport::random_matrix(7, 3, 11);
  std::mt19937 gen(99);
  std::normal_distribution<double> dist;
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const double bound = induced_norm_upper(m, p);
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
      Vector x(3);
      for (int j = 0; j < 3; ++j) x(j) = dist(gen);
      worst = std::max(worst, testsupport::pnorm(m * x, p) / testsupport::pnorm(x, p));
    }
    EXPECT_LE(worst, bound * (1.0 + 1e-12)) << "p = " << p;
  }
}

TEST(Svd, DiagonalValues) {
  const SvdResult s = svd(mat({{3, 0}, {0, 2}}));
  EXPECT_NEAR(s.singular_values(0), 3.0, 1e-12);
  EXPECT_NEAR(s.singular_values(1), 2.0, 1e-12);
}

TEST(Svd, OrthonormalColumnsHaveUnitValues) {
  const Matrix q = Eigen::HouseholderQR<Matrix>(testsupport::random_matrix(9, 3, 4)).householderQ() *
                   Matrix::Identity(9, 3);
  const SvdResult s = svd(q);
  for (Eigen::Index j = 0; j < 3; ++j) EXPECT_NEAR(s.singular_values(j), 1.0, 1e-10);
}

TEST(Svd, ReconstructsRandomMatrix) {
  const Matrix m = testsupport::random_matrix(10, 3, 5);
  const SvdResult s = svd(m);
  const Matrix back = s.left * s.singular_values.asDiagonal() * s.right.transpose();
  EXPECT_LT((back - m).norm() / m.norm(), 1e-8);
  EXPECT_LT((s.left.transpose() * s.left - Matrix::Identity(3, 3)).norm(), 1e-8);
  for (Eigen::Index j = 1; j < 3; ++j) EXPECT_GE(s.singular_values(j - 1), s.singular_values(j));
  EXPECT_GE(s.singular_values(2), 0.0);
}

TEST(Svd, RejectsWideInput) {
  EXPECT_EQ(kind_of([] { svd(Matrix::Ones(2, 3)); }), ErrorKind::shape_error);
}

TEST(Svd, RejectsNonFiniteEntries) {
  Matrix m = Matrix::Ones(3, 2);
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(kind_of([&] { svd(m); }), ErrorKind::invalid_parameter);
}

TEST(StatisticalDimension, LambdaZeroIsRank) {
  EXPECT_DOUBLE_EQ(statistical_dimension(Vector::Ones(3), 0.0), 3.0);
}

TEST(StatisticalDimension, HandValue) {
  Vector sigma(2);
  sigma << 2.0, 1.0;
  EXPECT_NEAR(statistical_dimension(sigma, 2.0), 1.0, 1e-12);
}

TEST(StatisticalDimension, HugeLambdaVanishes) {
  EXPECT_LT(statistical_dimension(Vector::Ones(1), 1e12), 1e-11);
}

TEST(StatisticalDimension, RejectsNonPositiveSingularValue) {
  Vector sigma(2);
  sigma << 1.0, 0.0;
  EXPECT_EQ(kind_of([&] { statistical_dimension(sigma, 1.0); }), ErrorKind::rank_deficiency);
}

TEST(StatisticalDimension, StrictlyDecreasingInLambda) {
  const SvdResult s = svd(testsupport::random_matrix(20, 4, 8));
  double prev = statistical_dimension(s.singular_values, 0.0);
  for (double lambda : {1e-6, 0.01, 0.5, 1.0, 10.0, 1000.0}) {
    const double now = statistical_dimension(s.singular_values, lambda);
    EXPECT_LT(now, prev);
    EXPECT_GT(now, 0.0);
    prev = now;
  }
}

TEST(Augment, OneByOne) {
  RegressionInstance inst{mat({{1}}), Vector::Constant(1, 2.0)};
  EXPECT_EQ(augment(inst), mat({{1, 2}}));
}

TEST(Augment, ZeroResponseGivesZeroColumn) {
  RegressionInstance inst{testsupport::random_matrix(5, 2, 3), Vector::Zero(5)};
  EXPECT_TRUE(augment(inst).col(2).isZero(0.0));
}

TEST(Augment, ShapeLawAndSplitRoundTrip) {
  for (Eigen::Index n : {1, 4, 9}) {
    for (Eigen::Index d : {1, 3}) {
      RegressionInstance inst{testsupport::random_matrix(n, d, 17), testsupport::random_vector(n, 18)};
      const Matrix a = augment(inst);
      EXPECT_EQ(a.rows(), n);
      EXPECT_EQ(a.cols(), d + 1);
      const RegressionInstance back = split_augmented(a);
      EXPECT_EQ(back.design, inst.design);
      EXPECT_EQ(back.response, inst.response);
    }
  }
}

TEST(Instance, ValidateRejectsMismatch) {
  RegressionInstance inst{Matrix::Ones(3, 2), Vector::Ones(2)};
  EXPECT_EQ(kind_of([&] { inst.validate(); }), ErrorKind::shape_error);
}

TEST(Instance, TallRequirement) {
  RegressionInstance inst{Matrix::Ones(2, 3), Vector::Ones(2)};
  EXPECT_NO_THROW(inst.validate());
  EXPECT_EQ(kind_of([&] { inst.validate(true); }), ErrorKind::shape_error);
}

TEST(Norms, VectorNorms) {
  Vector v(3);
  v << 3.0, -4.0, 0.0;
  EXPECT_DOUBLE_EQ(lp_norm(v, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(lp_norm(v, 1.0), 7.0);
  EXPECT_DOUBLE_EQ(lp_norm(v, std::numeric_limits<double>::infinity()), 4.0);
}
