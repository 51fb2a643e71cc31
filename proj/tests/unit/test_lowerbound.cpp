#include "regcoreset/coreset.hpp"
#include "regcoreset/error.hpp"
#include "regcoreset/lowerbound.hpp"
#include "regcoreset/objective.hpp"

#include "error_kind.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace regcoreset;
using testsupport::kind_of;

namespace {

// The weighted rows `rows` drawn from M, each with its weight.
Coreset rows_coreset(const Matrix& rows, const Vector& weights, std::size_t n) {
  Coreset c;
  c.rows = rows;
  c.weights = weights;
  c.source_indices.assign(static_cast<std::size_t>(rows.rows()), 0);
  c.n = n;
  return c;
}

Coreset first_row_of_identity() {
  return rows_coreset(Matrix::Identity(2, 2).topRows(1), Vector::Ones(1), 2);
}

Coreset full_rows(const Matrix& m) {
  Coreset c = rows_coreset(m, Vector::Ones(m.rows()), static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) c.source_indices[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
  return c;
}

// Independent recomputation through the objective module.
double recomputed_ratio(const Matrix& m, const Coreset& c, const Vector& y, const ObjectiveSpec& spec) {
  const ObjectiveSpec g = ObjectiveSpec::general(spec.p, spec.q, spec.r, spec.s, spec.lambda);
  const double full = evaluate_objective(RegressionInstance{m, Vector::Zero(m.rows())}, y, g);
  const double reduced = evaluate_objective(RegressionInstance{c.rows, Vector::Zero(c.rows.rows())}, y, g);
  return reduced / full;
}

}  // namespace

TEST(FindViolation, IdentityCoresetHasNone) {
  const Matrix m = testsupport::random_matrix(20, 3, 1);
  EXPECT_FALSE(find_unregularized_violation(m, full_rows(m), 2.0, 2.0, 0.05, 200, 3).has_value());
}

TEST(FindViolation, SingleRowOfIdentityUndershoots) {
  const auto v = find_unregularized_violation(Matrix::Identity(2, 2), first_row_of_identity(), 2.0, 2.0, 0.1, 64, 1);
  ASSERT_TRUE(v.has_value());
  EXPECT_NEAR(v->epsilon_prime, 1.0, 1e-12);
  EXPECT_NEAR(v->ratio, 0.0, 1e-12);
  EXPECT_EQ(v->direction, ViolationDirection::undershoot);
  EXPECT_NEAR(std::abs(v->x(0)), 0.0, 1e-12);
}

TEST(FindViolation, DeterministicGivenSeed) {
  const Matrix m = testsupport::random_matrix(30, 3, 2);
  const Coreset c = build_coreset(split_augmented(m), uniform_scores(30), 5, 2.0, 4);
  const auto a = find_unregularized_violation(m.leftCols(2), rows_coreset(c.rows.leftCols(2), c.weights, 30), 2.0,
                                              2.0, 0.01, 100, 7);
  const auto b = find_unregularized_violation(m.leftCols(2), rows_coreset(c.rows.leftCols(2), c.weights, 30), 2.0,
                                              2.0, 0.01, 100, 7);
  ASSERT_EQ(a.has_value(), b.has_value());
  if (a) {
    EXPECT_EQ(a->x, b->x);
    EXPECT_EQ(a->epsilon_prime, b->epsilon_prime);
  }
}

TEST(UnregularizedRatio, NanOnNullDirection) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  EXPECT_TRUE(std::isnan(unregularized_ratio(m, full_rows(m), Vector::Unit(2, 1), 2.0, 2.0)));
}

TEST(CounterexampleAlpha, HandValue) {
  EXPECT_NEAR(counterexample_alpha(0.1, 0.3, 1.0, 1.0, 1.0, 2.0, 1.0), 2.02, 1e-12);
}

TEST(CounterexampleAlpha, EqualExponentsInapplicable) {
  EXPECT_EQ(kind_of([] { counterexample_alpha(0.1, 0.3, 1.0, 1.0, 1.0, 2.0, 2.0); }),
            ErrorKind::theorem_inapplicable);
}

TEST(CounterexampleAlpha, ZeroLambdaReturnsOne) {
  EXPECT_EQ(counterexample_alpha(0.1, 0.3, 0.0, 1.0, 1.0, 2.0, 1.0), 1.0);
}

TEST(CounterexampleAlpha, SmallerRegularizerExponentUsesReciprocalBound) {
  // r < s: alpha^(s-r) = 0.99 (eps'-eps)/(eps'+eps) ||Mx|| / (lambda ||x||).
  const double alpha = counterexample_alpha(0.1, 0.3, 2.0, 3.0, 1.5, 1.0, 2.0);
  EXPECT_NEAR(alpha, 0.99 * (0.2 / 0.4) * 3.0 / (2.0 * 1.5), 1e-12);
}

TEST(CounterexampleAlpha, ScaleCovariantInLambda) {
  for (double r : {2.0, 3.0}) {
    const double a1 = counterexample_alpha(0.05, 0.4, 0.7, 2.0, 1.3, r, 1.0);
    const double a2 = counterexample_alpha(0.05, 0.4, 1.4, 2.0, 1.3, r, 1.0);
    EXPECT_NEAR(a2 / a1, std::pow(2.0, 1.0 / (r - 1.0)), 1e-12);
  }
}

TEST(DemonstrateViolation, HandInstanceUndershoots) {
  const Matrix m = Matrix::Identity(2, 2);
  const Coreset c = first_row_of_identity();
  const ObjectiveSpec spec = ObjectiveSpec::general(2.0, 1.0, 2.0, 1.0, 1.0);
  const auto w = demonstrate_violation(m, c, spec, 0.1, 5);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->direction, ViolationDirection::undershoot);
  EXPECT_LT(w->regularized_ratio, 1.0 - 0.5 * (0.1 + w->epsilon_prime));
  EXPECT_NEAR(recomputed_ratio(m, c, w->y, spec), w->regularized_ratio, 1e-10);
  EXPECT_LT((w->y - w->alpha * w->base_x).norm(), 1e-15);
  // By hand: x = e2, eps' = 1, alpha = 1.01 * 11/9, ratio = 1 / (alpha + 1).
  EXPECT_NEAR(w->alpha, 1.01 * 1.1 / 0.9, 1e-9);
  EXPECT_NEAR(w->regularized_ratio, 1.0 / (w->alpha + 1.0), 1e-9);
}

TEST(DemonstrateViolation, OvershootWithSmallerLossExponent) {
  const Matrix m = Matrix::Identity(2, 2);
  // Row e1 with weight 4 and p = 2: scaled row is 2 e1, so the e1 ratio is 4.
  Matrix rows = Matrix::Zero(1, 2);
  rows(0, 0) = 2.0;
  const Coreset c = rows_coreset(rows, Vector::Constant(1, 4.0), 2);
  const ObjectiveSpec spec = ObjectiveSpec::general(2.0, 2.0, 1.0, 2.0, 0.5);
  const auto w = demonstrate_violation(m, c, spec, 0.2, 3);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->direction, ViolationDirection::overshoot);
  EXPECT_GT(w->regularized_ratio, 1.0 + 0.5 * (0.2 + w->epsilon_prime));
  EXPECT_NEAR(recomputed_ratio(m, c, w->y, spec), w->regularized_ratio, 1e-10);
}

TEST(DemonstrateViolation, IdentityCoresetGivesNothing) {
  const Matrix m = testsupport::random_matrix(15, 2, 8);
  EXPECT_FALSE(demonstrate_violation(m, full_rows(m), ObjectiveSpec::general(2, 1, 2, 1, 1.0), 0.05, 1).has_value());
}

TEST(DemonstrateViolation, EqualExponentsInapplicable) {
  EXPECT_EQ(kind_of([] {
              demonstrate_violation(Matrix::Identity(2, 2), first_row_of_identity(), ObjectiveSpec::ridge(1.0), 0.1, 1);
            }),
            ErrorKind::theorem_inapplicable);
}

TEST(DemonstrateViolation, SampledCoresetsWitnessesAreConsistent) {
  const Matrix m = testsupport::random_matrix(40, 3, 12);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Coreset drawn = build_coreset(split_augmented(m), uniform_scores(40), 4, 2.0, seed);
    const ObjectiveSpec spec = ObjectiveSpec::general(2.0, 1.0, 2.0, 1.0, 0.3);
    const auto w = demonstrate_violation(m, drawn, spec, 0.1, seed);
    ASSERT_TRUE(w.has_value());
    EXPECT_NEAR(recomputed_ratio(m, drawn, w->y, spec), w->regularized_ratio, 1e-10);
  }
}

TEST(ColumnSpaceShift, ShiftMatchesSubspaceRatio) {
  const Matrix a = testsupport::random_matrix(50, 3, 20);
  const Vector u = testsupport::random_vector(3, 21);
  const Vector v = testsupport::random_vector(3, 22);
  const Coreset sampled = build_coreset(RegressionInstance{a, a * u}, uniform_scores(50), 6, 2.0, 1);
  for (double p : {1.0, 2.0, 3.0}) {
    const ColumnSpaceShift s = column_space_shift(a, sampled, u, v, p);
    EXPECT_NEAR(s.shifted_ratio, s.direct_ratio, 1e-10 * s.direct_ratio);
  }
}

TEST(ViolationDirection, Names) {
  EXPECT_EQ(to_string(ViolationDirection::overshoot), "overshoot");
  EXPECT_EQ(to_string(ViolationDirection::undershoot), "undershoot");
}
