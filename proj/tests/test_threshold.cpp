#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sisnet/generators.hpp"
#include "sisnet/threshold.hpp"

using namespace sisnet;

namespace {
const double sqrt2 = std::sqrt(2.0);
const Graph star = gen_star(3);
const Graph empty3 = Graph::empty(3);
} // namespace

TEST(Classify, Band) {
  EXPECT_EQ(classify(0.5), Verdict::DiesOut);
  EXPECT_EQ(classify(1.5), Verdict::Spreads);
  EXPECT_EQ(classify(1.0), Verdict::Inconclusive);
  EXPECT_EQ(classify(1.0 + 5e-10), Verdict::Inconclusive);
  EXPECT_EQ(classify(1.0 - 2e-9), Verdict::DiesOut);
  EXPECT_EQ(classify(std::nan("")), Verdict::Inconclusive);
  EXPECT_EQ(classify(JsrBracket{0.9, 1.1, 2, NormId::Induced1}), Verdict::Inconclusive);
  EXPECT_EQ(classify(JsrBracket{0.5, 0.9, 2, NormId::Induced1}), Verdict::DiesOut);
  EXPECT_EQ(classify(JsrBracket{1.1, 1.3, 2, NormId::Induced1}), Verdict::Spreads);
}

TEST(ThresholdStatic, Examples) {
  auto v = threshold_static(star, {0.1, 0.2});
  EXPECT_EQ(v.verdict, Verdict::DiesOut);
  EXPECT_NEAR(v.value, 0.5 * sqrt2, 1e-9);
  EXPECT_NEAR(v.upper, 0.8 + 0.1 * sqrt2, 1e-9);
  EXPECT_EQ(threshold_static(star, {0.6, 0.2}).verdict, Verdict::Spreads);
  for (double beta : {0.0, 0.5, 1.0}) EXPECT_EQ(threshold_static(Graph::empty(5), {beta, 0.3}).verdict, Verdict::DiesOut);
}

TEST(ThresholdStatic, ZeroRecovery) {
  auto v = threshold_static(star, {0.2, 0.0});
  EXPECT_TRUE(std::isinf(v.value));
  EXPECT_EQ(v.verdict, Verdict::Spreads);
  // M = I exactly: neither grows nor decays
  v = threshold_static(empty3, {0.2, 0.0});
  EXPECT_TRUE(std::isnan(v.value));
  EXPECT_EQ(v.verdict, Verdict::Inconclusive);
}

TEST(ThresholdStatic, AgreesWithSingletonBracket) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen_gilbert(8, 0.3, seed, seed % 2 == 1);
    for (double beta : {0.02, 0.1, 0.3}) {
      const EpidemicParams params{beta, 0.25};
      const std::vector<Graph> one{g};
      EXPECT_EQ(threshold_static(g, params).verdict, classify(jsr_bracket(build_system_set(one, params), 3)));
    }
  }
}

TEST(ThresholdPeriodic, Examples) {
  const std::vector<Graph> star_empty{star, empty3};
  auto v = threshold_periodic(star_empty, {0.3536, 0.2});
  EXPECT_NEAR(v.value, 0.8 * (0.8 + 0.3536 * sqrt2), 1e-9);
  EXPECT_NEAR(v.value, 1.0401, 1e-4);
  EXPECT_EQ(v.verdict, Verdict::Spreads);

  const std::vector<Graph> empties{empty3, empty3};
  v = threshold_periodic(empties, {0.4, 0.5});
  EXPECT_NEAR(v.value, 0.25, 1e-15);
  EXPECT_NEAR(v.lower, 0.5, 1e-15);
  EXPECT_EQ(v.verdict, Verdict::DiesOut);
}

TEST(ThresholdPeriodic, LengthOneMatchesStatic) {
  for (double beta : {0.1, 0.6}) {
    const std::vector<Graph> one{star};
    const auto p = threshold_periodic(one, {beta, 0.2});
    const auto s = threshold_static(star, {beta, 0.2});
    EXPECT_EQ(p.verdict, s.verdict);
    EXPECT_NEAR(p.value, s.upper, 1e-9);
  }
}

TEST(ThresholdRegular, Examples) {
  auto v = threshold_regular(8, {0.02, 0.2});
  EXPECT_NEAR(v.value, 0.8, 1e-12);
  EXPECT_EQ(v.verdict, Verdict::DiesOut);
  v = threshold_regular(8, {0.05, 0.2});
  EXPECT_NEAR(v.value, 2.0, 1e-12);
  EXPECT_EQ(v.verdict, Verdict::Spreads);
  EXPECT_EQ(threshold_regular(0, {0.9, 0.1}).verdict, Verdict::DiesOut);
  EXPECT_THROW(threshold_regular(-1, {0.1, 0.1}), ParameterError);
}

TEST(ThresholdRegular, AgreesWithRegularGraphs) {
  const std::vector<Graph> graphs{gen_regular(40, 6, 1), gen_regular(40, 6, 2), gen_regular(40, 6, 3)};
  for (double beta : {0.01, 0.03, 0.05, 0.1}) {
    const EpidemicParams params{beta, 0.2};
    const auto d = threshold_dynamic(graphs, params, 3);
    EXPECT_EQ(d.verdict, threshold_regular(6, params).verdict);
    EXPECT_NEAR(d.lower, 0.8 + 6 * beta, 1e-9);
  }
}

TEST(ProductRadius, ComparatorExample) {
  const std::vector<Graph> seq{star, empty3};
  const std::vector<Graph> rev{empty3, star};
  const double closed = 0.8 * (0.8 + 0.3 * sqrt2);
  EXPECT_NEAR(product_spectral_radius(seq, {0.3, 0.2}), closed, 1e-9);
  EXPECT_NEAR(product_spectral_radius(rev, {0.3, 0.2}), closed, 1e-9);
  EXPECT_LT(closed, 1.0);
  EXPECT_NEAR(jsr_symmetric(build_system_set(seq, {0.3, 0.2})), 0.8 + 0.3 * sqrt2, 1e-9);
  EXPECT_GT(0.8 + 0.3 * sqrt2, 1.0);
}

TEST(ProductRadius, SingletonAndReversalOracle) {
  const std::vector<Graph> one{star};
  EXPECT_NEAR(product_spectral_radius(one, {0.3, 0.2}), 0.8 + 0.3 * sqrt2, 1e-9);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::vector<Graph> seq{gen_gilbert(6, 0.4, seed, true), gen_gilbert(6, 0.4, seed + 100, true)};
    const std::vector<Graph> rev{seq[1], seq[0]};
    const EpidemicParams params{0.3, 0.1};
    const Matrix prod = system_matrix(seq[1], params) * system_matrix(seq[0], params);
    const double expect = oracle::spectral_radius(prod);
    EXPECT_NEAR(product_spectral_radius(seq, params), expect, 1e-8 * std::max(1.0, expect));
    EXPECT_NEAR(product_spectral_radius(rev, params), expect, 1e-8 * std::max(1.0, expect));
  }
  EXPECT_THROW(product_spectral_radius(std::span<const Graph>{}, {0.1, 0.1}), ParameterError);
}

TEST(ThresholdDynamic, BracketAndVerdicts) {
  const std::vector<Graph> star_edge{star, Graph::from_edges(3, false, {{0, 1}})};
  auto v = threshold_dynamic(star_edge, {0.5, 0.2}, 4);
  EXPECT_EQ(v.criterion, "jsr");
  EXPECT_NEAR(v.value, 0.8 + 0.5 * sqrt2, 1e-9);
  EXPECT_EQ(v.verdict, Verdict::Spreads);

  // directed pair whose bracket straddles one at shallow depth
  const std::vector<Graph> arcs{Graph::from_edges(2, true, {{0, 1}}), Graph::from_edges(2, true, {{1, 0}})};
  v = threshold_dynamic(arcs, {0.25, 0.2}, 1);
  EXPECT_EQ(v.criterion, "jsr_bracket");
  EXPECT_LT(v.lower, 1.0);
  EXPECT_GT(v.upper, 1.0);
  EXPECT_EQ(v.verdict, Verdict::Inconclusive);
  ASSERT_TRUE(v.norm.has_value());
  EXPECT_EQ(*v.norm, NormId::Induced1);
}

TEST(ThresholdJson, Keys) {
  const auto j = to_json(threshold_static(star, {0.1, 0.2}));
  for (const char *key : {"criterion", "value", "lower", "upper", "depth", "norm", "verdict"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["verdict"], "DiesOut");
  EXPECT_TRUE(j["norm"].is_null());
  const std::vector<Graph> arcs{Graph::from_edges(2, true, {{0, 1}})};
  EXPECT_EQ(to_json(threshold_dynamic(arcs, {0.1, 0.2}, 2))["norm"], "induced-1");
}

TEST(GilbertBound, ReferenceRows) {
  struct Row {
    double delta, beta, printed;
  };
  const Row rows[] = {{0.95, 0.01, 0.09}, {0.54, 0.01, 0.5}, {0.04, 0.01, 1.0}, {0.7, 0.3, 1.5}, {0.2, 0.8, 4.0}};
  for (const auto &r : rows) {
    const auto b = gilbert_spread_bound(1000, 0.004, {r.beta, r.delta});
    EXPECT_NEAR(b.raw, r.printed, 0.005);
    EXPECT_EQ(b.clamped, std::min(1.0, b.raw));
  }
  EXPECT_EQ(gilbert_spread_bound(1000, 0.004, {0.8, 0.2}).clamped, 1.0);
  EXPECT_THROW(gilbert_spread_bound(1, 0.5, {0.1, 0.1}), ParameterError);
  EXPECT_THROW(gilbert_spread_bound(10, 1.5, {0.1, 0.1}), ParameterError);
}

TEST(ExpectedColumnSum, Examples) {
  EXPECT_NEAR(expected_column_sum(10, 0.5, {0.1, 0.2}, 1), 1.25, 1e-15);
  EXPECT_NEAR(expected_column_sum(10, 0.5, {0.1, 0.2}, 3), 1.953125, 1e-14);
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_EQ(expected_column_sum(10, 0.5, {0.0, 1.0}, k), 0.0);
  EXPECT_THROW(expected_column_sum(10, 0.5, {0.1, 0.2}, 0), ParameterError);
}

TEST(McColumnSum, NoInfectionIsDeterministic) {
  for (auto mode : {GilbertSampling::IidOffDiagonal, GilbertSampling::Symmetric}) {
    const auto e = mc_column_sum(10, 0.5, {0.0, 0.3}, 3, 500, 1, mode);
    EXPECT_DOUBLE_EQ(e.mean, std::pow(0.7, 3));
    EXPECT_EQ(e.std_err, 0.0);
  }
}

TEST(McColumnSum, AgreesWithFormula) {
  const EpidemicParams params{0.1, 0.2};
  EXPECT_NEAR(expected_column_sum(10, 0.3, params, 3), 1.225043, 1e-6);
  for (auto mode : {GilbertSampling::IidOffDiagonal, GilbertSampling::Symmetric})
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto e = mc_column_sum(10, 0.3, params, k, 100000, 5, mode);
      EXPECT_GT(e.std_err, 0.0);
      EXPECT_LE(std::abs(e.mean - expected_column_sum(10, 0.3, params, k)), 3 * e.std_err) << "k=" << k;
    }
}

TEST(McColumnSum, SeedDeterminism) {
  const auto a = mc_column_sum(8, 0.2, {0.3, 0.1}, 2, 1000, 42);
  const auto b = mc_column_sum(8, 0.2, {0.3, 0.1}, 2, 1000, 42);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_err, b.std_err);
  EXPECT_THROW(mc_column_sum(8, 0.2, {0.3, 0.1}, 2, 0, 42), ParameterError);
}
