#include <gtest/gtest.h>

#include <vector>

#include "test_support.hpp"
#include "tplag/tplag.hpp"

using namespace tplag;
using tplag_test::ConfigGen;

namespace {

ExactMatrix exact_three_by_two_A() {
  return build_A(exact_of(std::vector<double>{0.0, 1.0}),
                 exact_of(std::vector<double>{4.0, 3.0, 2.0}));
}

}  // namespace

TEST(ParseExact, Formats) {
  EXPECT_EQ(parse_exact("-129/10"), ExactScalar(-129, 10));
  EXPECT_EQ(parse_exact("0.25"), ExactScalar(1, 4));
  EXPECT_EQ(parse_exact("-12.9"), ExactScalar(-129, 10));
  EXPECT_EQ(parse_exact("3e-2"), ExactScalar(3, 100));
  EXPECT_EQ(parse_exact("1.5e3"), ExactScalar(1500));
  EXPECT_THROW(parse_exact("abc"), Error);
  EXPECT_THROW(parse_exact("1/0"), Error);
  EXPECT_THROW(parse_exact(""), Error);
}

TEST(ExactScalar, CanonicalForm) {
  const ExactScalar r(-6, 4);
  EXPECT_EQ(numerator(r), -3);
  EXPECT_EQ(denominator(r), 2);
  EXPECT_GT(denominator(r), 0);
}

TEST(ExactOfDouble, IsExactEmbedding) {
  EXPECT_EQ(exact_of_double(0.5), ExactScalar(1, 2));
  EXPECT_EQ(exact_of_double(-0.75), ExactScalar(-3, 4));
  const double v = 1.0 / 3.0;
  const ExactScalar r = exact_of_double(v);
  EXPECT_EQ(static_cast<double>(to_bigfloat(r)), v);
}

TEST(ExactNevilleBd, AllOnesColumn) {
  ExactMatrix a(3, 1);
  a(0, 0) = a(1, 0) = a(2, 0) = 1;
  const ExactMatrix bd = exact_neville_bd(a);
  EXPECT_EQ(bd(0, 0), 1);
  EXPECT_EQ(bd(1, 0), 1);
  EXPECT_EQ(bd(2, 0), 1);
}

TEST(ExactNevilleBd, ThreeByTwoHandComputed) {
  const ExactMatrix bd = exact_neville_bd(exact_three_by_two_A());
  EXPECT_EQ(bd(0, 0), 3);
  EXPECT_EQ(bd(0, 1), ExactScalar(4, 3));
  EXPECT_EQ(bd(1, 0), ExactScalar(2, 3));
  EXPECT_EQ(bd(1, 1), ExactScalar(1, 3));
  EXPECT_EQ(bd(2, 0), ExactScalar(1, 2));
  EXPECT_EQ(bd(2, 1), ExactScalar(3, 2));
}

TEST(ExactNevilleBd, RejectsNonSTP) {
  ExactMatrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 2;
  a(1, 1) = 1;  // determinant negative
  EXPECT_THROW(exact_neville_bd(a), NotSTP);
}

TEST(ExactLsSolve, SquareSystem) {
  ExactMatrix l(2, 2);
  l(0, 0) = 2;
  l(0, 1) = 1;
  l(1, 0) = 0;
  l(1, 1) = 3;
  const ExactVector c = exact_ls_solve(l, {ExactScalar(5), ExactScalar(6)});
  EXPECT_EQ(c[0], ExactScalar(3, 2));
  EXPECT_EQ(c[1], 2);
}

TEST(ExactLsSolve, ResidualIsOrthogonalToColumns) {
  const ExactMatrix a = exact_three_by_two_A();
  const ExactVector b = {ExactScalar(1), ExactScalar(3), ExactScalar(-2)};
  const ExactVector z = exact_ls_solve(a, b);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    ExactScalar dot(0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      ExactScalar ri = b[i];
      for (std::size_t k = 0; k < a.cols(); ++k) ri -= a(i, k) * z[k];
      dot += a(i, j) * ri;
    }
    EXPECT_EQ(dot, 0);
  }
}

TEST(ExactLsSolve, RankDeficientRejected) {
  ExactMatrix l(2, 2);
  l(0, 0) = 1;
  l(0, 1) = 2;
  l(1, 0) = 2;
  l(1, 1) = 4;
  EXPECT_THROW(exact_ls_solve(l, {ExactScalar(1), ExactScalar(1)}), RankDeficient);
}

TEST(ExactPinv, IdentityAndPenrose) {
  const ExactMatrix pinv_id = exact_pinv(ExactMatrix::identity(3));
  EXPECT_EQ(pinv_id, ExactMatrix::identity(3));
  const ExactMatrix a = exact_three_by_two_A();
  const ExactMatrix pinv = exact_pinv(a);
  EXPECT_EQ(matmul(pinv, a), ExactMatrix::identity(2));
  EXPECT_EQ(pinv(0, 0), ExactScalar(7, 6));
  EXPECT_EQ(pinv(1, 2), ExactScalar(4, 3));
}

TEST(ExactProjection, SquareIsIdentity) {
  ExactMatrix l(2, 2);
  l(0, 0) = 3;
  l(0, 1) = 1;
  l(1, 0) = 1;
  l(1, 1) = 2;
  EXPECT_EQ(exact_projection(l), ExactMatrix::identity(2));
}

TEST(ExactProjection, IdempotentExactly) {
  const ExactMatrix h = exact_projection(exact_three_by_two_A());
  EXPECT_EQ(matmul(h, h), h);
  EXPECT_EQ(transpose(h), h);
}

TEST(RelError2Norm, TrivialCases) {
  const ExactVector v = {ExactScalar(3), ExactScalar(-4)};
  EXPECT_DOUBLE_EQ(rel_error_2norm(std::vector<double>{3.0, -4.0}, v), 0.0);
  EXPECT_DOUBLE_EQ(rel_error_2norm(std::vector<double>{6.0, -8.0}, v), 1.0);
  EXPECT_THROW(rel_error_2norm(std::vector<double>{1.0}, v), DimensionMismatch);
}

TEST(ConditionNumber2, SmallCases) {
  EXPECT_NEAR(condition_number_2(ExactMatrix::identity(3)), 1.0, 1e-30);
  ExactMatrix d(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 1;
  EXPECT_NEAR(condition_number_2(d), 2.0, 1e-14);
  ExactMatrix r(2, 2);
  r(0, 0) = 1;
  r(0, 1) = 2;
  r(1, 0) = 2;
  r(1, 1) = 4;
  EXPECT_THROW(condition_number_2(r), RankDeficient);
  EXPECT_THROW(condition_number_2(d, 500), Error);
}

TEST(ExactDet, KnownValues) {
  ExactMatrix m(2, 2);
  m(0, 0) = ExactScalar(1, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 4;
  EXPECT_EQ(exact_det(m), 1);
  ExactMatrix one(1, 1);
  one(0, 0) = ExactScalar(-7, 3);
  EXPECT_EQ(exact_det(one), ExactScalar(-7, 3));
}

TEST(Cancellation, TokenAbortsLongComputation) {
  ConfigGen gen(79);
  const NodeConfig cfg = gen.ordered(6, 10);
  CancelToken tok;
  tok.cancel();
  const ExactMatrix a = build_A(exact_of(cfg.x), exact_of(cfg.t));
  EXPECT_THROW(exact_neville_bd(a, &tok), Cancelled);
  EXPECT_THROW(exact_pinv(a, &tok), Cancelled);
}

TEST(BigSolve, HighPrecisionLeastSquares) {
  // overdetermined system with a known exact solution: b = M * (1, 2)
  BigMatrix m(3, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 3;
  m(1, 1) = 4;
  m(2, 0) = 5;
  m(2, 1) = 7;
  BigVector b(3);
  for (std::size_t i = 0; i < 3; ++i) b[i] = m(i, 0) * 1 + m(i, 1) * 2;
  const BigVector y = big_ls_solve(m, b);
  EXPECT_LT(static_cast<double>(abs(y[0] - 1)), 1e-100);
  EXPECT_LT(static_cast<double>(abs(y[1] - 2)), 1e-100);
}
