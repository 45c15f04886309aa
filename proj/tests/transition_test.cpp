#include "tsat/transition.h"

#include <gtest/gtest.h>

#include "tsat/error.h"
#include "tsat/instance.h"
#include "tsat/random.h"
#include "tsat/solver.h"

using namespace tsat;

TEST(Transition, DefaultGrid) {
  auto ms = defaultClauseCounts(12);
  ASSERT_EQ(ms.size(), 15u);
  EXPECT_EQ(ms.front(), 12u);
  EXPECT_EQ(ms[1], 18u);
  EXPECT_EQ(ms.back(), 96u);
  EXPECT_EQ(defaultClauseCounts(5)[1], 8u); // 7.5 rounds away from zero
}

TEST(Transition, EnginesAgreePerInstance) {
  for (std::size_t n : {6u, 9u, 12u})
    for (std::size_t m : {n, 4 * n, 6 * n})
      for (std::uint64_t j = 0; j < 25; ++j) {
        Instance inst = randomInstance(n, m, deriveSeed(3, m, j));
        ASSERT_EQ(bruteForceSolve(inst).sat,
                  solve(inst, OrderingStrategy::asGiven(), 0).sat);
      }
  auto trie = computeTransition(10, {20, 40, 60}, 40, 5, Engine::Trie);
  auto oracle = computeTransition(10, {20, 40, 60}, 40, 5, Engine::Oracle);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_EQ(trie.points[i].satCount, oracle.points[i].satCount);
}

TEST(Transition, DeterministicAndPointwiseReproducible) {
  auto a = computeTransition(8, {8, 24, 40}, 30, 11, Engine::Oracle);
  auto b = computeTransition(8, {8, 24, 40}, 30, 11, Engine::Oracle);
  EXPECT_EQ(transitionCsv(a), transitionCsv(b));
  auto single = computeTransition(8, {24}, 30, 11, Engine::Oracle);
  EXPECT_EQ(single.points[0].satCount, a.points[1].satCount);
}

TEST(Transition, ExtremesAtTwelveVariables) {
  auto c = computeTransition(12, {12, 96}, 200, 2024, Engine::Oracle);
  EXPECT_GE(c.points[0].satFraction, 0.99);
  EXPECT_LE(c.points[1].satFraction, 0.05);
}

TEST(Transition, Errors) {
  EXPECT_THROW(computeTransition(25, {30}, 1, 0, Engine::Oracle), Error);
  EXPECT_THROW(computeTransition(5, {}, 1, 0, Engine::Oracle), Error);
  EXPECT_THROW(computeTransition(5, {5}, 0, 0, Engine::Oracle), Error);
}

TEST(Crossing, Interpolation) {
  EXPECT_DOUBLE_EQ(crossingPoint({{4.0, 0.6}, {4.5, 0.4}}, 0.5), 4.25);
  EXPECT_DOUBLE_EQ(crossingPoint({{1, 1}, {2, 0.5}, {3, 0.5}, {4, 0}}, 0.5), 2.0);
  try {
    crossingPoint({{1, 1.0}, {2, 0.9}, {3, 0.7}}, 0.5);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::LevelNotBracketed);
  }
  EXPECT_THROW(crossingPoint(std::vector<std::pair<double, double>>{}, 0.5),
               Error);
}

TEST(Isotonic, PoolsViolators) {
  auto fit = isotonicNonincreasing({1.0, 0.8, 0.85, 0.5, 0.55, 0.1}, {});
  std::vector<double> expect = {1.0, 0.825, 0.825, 0.525, 0.525, 0.1};
  ASSERT_EQ(fit.size(), expect.size());
  for (std::size_t i = 0; i < fit.size(); ++i)
    EXPECT_NEAR(fit[i], expect[i], 1e-12);
  auto weighted = isotonicNonincreasing({0.2, 0.6}, {3, 1});
  EXPECT_NEAR(weighted[0], 0.3, 1e-12);
  EXPECT_NEAR(weighted[1], 0.3, 1e-12);
}

TEST(Isotonic, EmpiricalCurveIsNearlyMonotone) {
  auto c = computeTransition(10, defaultClauseCounts(10), 100, 8, Engine::Oracle);
  std::vector<double> y;
  for (const auto &p : c.points)
    y.push_back(p.satFraction);
  auto fit = isotonicNonincreasing(y, {});
  for (std::size_t i = 0; i < y.size(); ++i) {
    double se = std::sqrt(std::max(fit[i] * (1 - fit[i]), 0.01) / 100.0);
    EXPECT_LE(std::abs(fit[i] - y[i]), 3 * se) << "m=" << c.points[i].m;
    if (i > 0)
      EXPECT_LE(fit[i], fit[i - 1]);
  }
}

TEST(Output, CsvAndComparison) {
  TransitionCurve c;
  c.nVars = 4;
  c.points = {{16, 4.0, 10, 6, 0.6}, {18, 4.5, 10, 4, 0.4}};
  EXPECT_EQ(transitionCsv(c), "n_vars,m,ratio,trials,sat_count,sat_fraction\n"
                              "4,16,4,10,6,0.6\n4,18,4.5,10,4,0.4\n");
  EXPECT_EQ(compareWithModel(c, {}), "m_over_n,sat_fraction\n4,0.6\n4.5,0.4\n");

  std::vector<CurvePoint> same = {makeCurvePoint(4, 1, 32, 0.6),
                                  makeCurvePoint(4, 1, 36, 0.4)};
  EXPECT_EQ(compareWithModel(c, same),
            "m_over_n,sat_fraction,model_d_value\n4,0.6,0.6\n4.5,0.4,0.4\n");

  std::vector<CurvePoint> narrow = {makeCurvePoint(4, 1, 30, 0.9),
                                    makeCurvePoint(4, 1, 33, 0.3)};
  EXPECT_EQ(compareWithModel(c, narrow),
            "m_over_n,sat_fraction,model_d_value\n4,0.6,0.5\n4.5,0.4,\n");
}
