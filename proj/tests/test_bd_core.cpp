#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "property_corpus.hpp"
#include "test_support.hpp"
#include "tplag/tplag.hpp"

using namespace tplag;
using tplag_test::ConfigGen;

namespace {

NodeConfig three_by_two() { return NodeConfig({0.0, 1.0}, {4.0, 3.0, 2.0}); }

std::vector<double> chebyshev_basis() {
  std::vector<double> x(11);
  for (int j = 0; j < 11; ++j) x[j] = -std::cos(j * M_PI / 10);
  return x;
}

std::vector<double> chebyshev_samples() {
  std::vector<double> t(21);
  for (int i = 0; i < 21; ++i) t[i] = std::cos(i * M_PI / 20);
  return t;
}

}  // namespace

TEST(NodeConfig, ValidateOrderingOrderedCase) {
  NodeConfig cfg = three_by_two();
  EXPECT_TRUE(cfg.ordered_flag);
  EXPECT_TRUE(validate_ordering(cfg));
}

TEST(NodeConfig, ChebyshevPointsAreNotOrdered) {
  NodeConfig cfg(chebyshev_basis(), chebyshev_samples());
  EXPECT_FALSE(validate_ordering(cfg));
}

TEST(NodeConfig, RepeatedNodesRejected) {
  EXPECT_THROW(NodeConfig({0.0, 0.0}, {1.0}), RepeatedNode);
  EXPECT_THROW(NodeConfig({0.0, 1.0}, {5.0, 4.0, 4.0}), RepeatedNode);
}

TEST(NodeConfig, CoincidentSampleIsFlaggedNotRejected) {
  // Chebyshev-style sets legitimately share endpoints, so construction
  // tolerates a sample node on a basis node; the explicit matrix builders
  // enforce their distinct-node contract.
  const NodeConfig cfg({0.0, 1.0}, {3.0, 1.0});
  EXPECT_TRUE(cfg.mixed_flag);
  EXPECT_FALSE(cfg.ordered_flag);
  EXPECT_THROW(build_A(cfg), MixedNode);
  EXPECT_THROW(build_L(cfg), MixedNode);
}

TEST(NodeConfig, SquarePermutedSamplesOutOfContract) {
  const NodeConfig cfg({0.0, 1.0}, {1.0, 0.0});  // samples are the basis, reordered
  EXPECT_TRUE(cfg.mixed_flag);
  EXPECT_THROW(build_L(cfg), MixedNode);
}

TEST(NodeConfig, UnsortedRejected) {
  EXPECT_THROW(NodeConfig({1.0, 0.0}, {3.0, 2.0}), NotSorted);
  EXPECT_THROW(NodeConfig({0.0, 1.0}, {2.0, 3.0}), NotSorted);
}

TEST(NodeConfig, TooFewSamplesRejected) {
  EXPECT_THROW(NodeConfig({0.0, 1.0, 2.0}, {5.0, 4.0}), DimensionMismatch);
}

TEST(BuildA, ThreeByTwo) {
  const Matrix<double> a = build_A(three_by_two());
  const double expected[3][2] = {{3, 4}, {2, 3}, {1, 2}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_DOUBLE_EQ(a(i, j), expected[i][j]);
}

TEST(BuildA, DegreeZeroIsOnesColumn) {
  const Matrix<double> a = build_A(NodeConfig({0.5}, {9.0, 7.0, 3.0, 1.0}));
  ASSERT_EQ(a.cols(), 1u);
  for (std::size_t i = 0; i < a.rows(); ++i) EXPECT_DOUBLE_EQ(a(i, 0), 1.0);
}

TEST(BuildA, MatchesExactRationalOracle) {
  ConfigGen gen(11);
  for (int c = 0; c < 25; ++c) {
    const NodeConfig cfg = gen.ordered(5, 9);
    const Matrix<double> a = build_A(cfg);
    const ExactMatrix ae = build_A(exact_of(cfg.x), exact_of(cfg.t));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const double exact = static_cast<double>(to_bigfloat(ae(i, j)));
        EXPECT_NEAR(a(i, j), exact, 1e-13 * std::abs(exact));
      }
  }
}

TEST(BuildL, ThreeByTwo) {
  const Matrix<double> l = build_L(three_by_two());
  const double expected[3][2] = {{-3, 4}, {-2, 3}, {-1, 2}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_DOUBLE_EQ(l(i, j), expected[i][j]);
}

TEST(ScalingDiag, SmallCases) {
  const ScalingDiag d2 = scaling_diag({0.0, 1.0});
  EXPECT_DOUBLE_EQ(d2.den[0], -1.0);
  EXPECT_DOUBLE_EQ(d2.den[1], 1.0);
  const ScalingDiag d1 = scaling_diag({0.0});
  ASSERT_EQ(d1.den.size(), 1u);
  EXPECT_DOUBLE_EQ(d1.den[0], 1.0);  // empty product
}

TEST(ScalingDiag, RepeatedNodeRejected) {
  EXPECT_THROW(scaling_diag({1.0, 1.0}), RepeatedNode);
}

TEST(ScalingDiag, SignPattern) {
  ConfigGen gen(13);
  for (int c = 0; c < 25; ++c) {
    const NodeConfig cfg = gen.ordered(6, 8);
    const std::size_t n1 = cfg.x.size();
    const ScalingDiag d = scaling_diag(cfg.x);
    for (std::size_t j = 0; j < n1; ++j) {
      const double expected_sign = ((n1 - 1 - j) % 2 == 0) ? 1.0 : -1.0;
      EXPECT_GT(d.den[j] * expected_sign, 0.0);
    }
  }
}

TEST(ScalingDiag, MatchesExactOracle) {
  ConfigGen gen(17);
  for (int c = 0; c < 25; ++c) {
    const NodeConfig cfg = gen.ordered(6, 8);
    const ScalingDiag d = scaling_diag(cfg.x);
    const std::vector<ExactScalar> de = scaling_denominators(exact_of(cfg.x));
    for (std::size_t j = 0; j < d.den.size(); ++j)
      EXPECT_EQ(exact_of_double(d.den[j]), de[j]);  // dyadic grid: products exact
  }
}

TEST(Tnbdlr, DegreeZeroIsTrivial) {
  const BDMatrix bd = tnbdlr(NodeConfig({0.5}, {9.0, 7.0, 3.0}));
  EXPECT_DOUBLE_EQ(bd.pivot(0), 1.0);
  EXPECT_DOUBLE_EQ(bd.mult(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(bd.mult(2, 0), 1.0);
}

TEST(Tnbdlr, ThreeByTwoClosedForm) {
  const BDMatrix bd = tnbdlr(three_by_two());
  EXPECT_DOUBLE_EQ(bd.pivot(0), 3.0);
  EXPECT_DOUBLE_EQ(bd.pivot(1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(bd.multT(1, 0), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(bd.mult(1, 0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(bd.mult(2, 0), 0.5);
  EXPECT_DOUBLE_EQ(bd.mult(2, 1), 1.5);
}

TEST(Tnbdlr, RequiresOrderedConfig) {
  NodeConfig cfg({0.0, 1.0}, {2.0, 0.5});  // samples straddle the basis
  EXPECT_FALSE(cfg.ordered_flag);
  EXPECT_THROW(tnbdlr(cfg), NotOrdered);
}

TEST(Tnbdlr, AllEntriesPositive) {
  ConfigGen gen(19);
  for (int c = 0; c < 25; ++c) EXPECT_TRUE(tnbdlr(gen.ordered(6, 12)).all_positive());
}

// Entrywise agreement with exact Neville elimination on the bundled
// large instance (degree 20, 31 samples).
TEST(Tnbdlr, LargeInstanceEntrywiseAccuracy) {
  const ProblemFile pf = load_problem(std::string(TPLAG_DATA_DIR) + "/example1.json");
  const NodeConfig cfg = pf.config();
  ASSERT_TRUE(cfg.ordered_flag);
  const BDMatrix bd = tnbdlr(cfg);
  const ExactMatrix ref =
      exact_neville_bd(build_A(exact_of(cfg.x), exact_of(cfg.t)));
  double worst = 0;
  for (std::size_t i = 0; i < bd.rows(); ++i)
    for (std::size_t j = 0; j < bd.cols(); ++j) {
      const BigFloat exact = to_bigfloat(ref(i, j));
      const double rel =
          static_cast<double>(abs((BigFloat(bd.entries()(i, j)) - exact) / exact));
      worst = std::max(worst, rel);
    }
  EXPECT_LE(worst, 1e-14);
}

TEST(ReconstructFromBd, TrivialColumn) {
  const BDMatrix bd = tnbdlr(NodeConfig({0.5}, {9.0, 7.0, 3.0}));
  const Matrix<double> a = reconstruct_from_bd(bd);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(a(i, 0), 1.0);
}

TEST(ReconstructFromBd, ThreeByTwoExact) {
  ExactMatrix bd(3, 2);
  bd(0, 0) = 3;
  bd(0, 1) = ExactScalar(4, 3);
  bd(1, 0) = ExactScalar(2, 3);
  bd(1, 1) = ExactScalar(1, 3);
  bd(2, 0) = ExactScalar(1, 2);
  bd(2, 1) = ExactScalar(3, 2);
  const ExactMatrix a = reconstruct_from_bd(bd);
  EXPECT_EQ(a(0, 0), 3);
  EXPECT_EQ(a(0, 1), 4);
  EXPECT_EQ(a(1, 0), 2);
  EXPECT_EQ(a(1, 1), 3);
  EXPECT_EQ(a(2, 0), 1);
  EXPECT_EQ(a(2, 1), 2);
}

TEST(ReconstructFromBd, RoundTripsExactly) {
  const auto res = tplag_test::check_bd_reconstruction_exact(25, 23);
  EXPECT_TRUE(res.ok()) << res.failures << " of " << res.cases << " reconstructions differ";
}

TEST(BdCsv, SchemaAndValues) {
  std::ostringstream os;
  write_bd_csv(os, tnbdlr(three_by_two()));
  const std::string csv = os.str();
  EXPECT_NE(csv.find("i,j,value,kind"), std::string::npos);
  EXPECT_NE(csv.find("1,1,3,pivot"), std::string::npos);
  EXPECT_NE(csv.find("2,2,0.3333333333333333,pivot"), std::string::npos);
  EXPECT_NE(csv.find("1,2,1.3333333333333333,multT"), std::string::npos);
  EXPECT_NE(csv.find("3,2,1.5,mult"), std::string::npos);
}
