#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "classmatch/matching.hpp"
#include "classmatch/rng.hpp"
#include "classmatch/types.hpp"
#include "classmatch/valuation.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace classmatch;

namespace {

double solveValue(const std::vector<double>& w, int L, int R, int r) {
  MaxWeightMatcher m(L, R, w);
  for (int s = 0; s < r; ++s) REQUIRE(m.augmentBest().has_value());
  return m.value();
}

std::set<int> matchedRights(const MaxWeightMatcher& m) {
  std::set<int> out;
  for (int r = 0; r < m.numRight(); ++r)
    if (m.matchOfRight(r) != -1) out.insert(r);
  return out;
}

std::set<int> matchedLefts(const MaxWeightMatcher& m) {
  std::set<int> out;
  for (int l = 0; l < m.numLeft(); ++l)
    if (m.matchOfLeft(l) != -1) out.insert(l);
  return out;
}

}  // namespace

TEST_CASE("solver matches enumeration for every size, continuous weights") {
  Rng rng(11, 0);
  for (int trial = 0; trial < 120; ++trial) {
    const int L = 1 + static_cast<int>(rng.nextU64() % 5);
    const int R = 1 + static_cast<int>(rng.nextU64() % 5);
    auto w = testutil::randomWeights(rng, L * R);
    MaxWeightMatcher m(L, R, w);
    for (int r = 1; r <= std::min(L, R); ++r) {
      auto expected = oracle::bruteForceBest(w, L, R, r);
      REQUIRE(m.augmentBest().has_value());
      CHECK(m.value() == doctest::Approx(expected.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("solver matches enumeration on tied grid weights") {
  Rng rng(12, 0);
  for (int trial = 0; trial < 120; ++trial) {
    const int L = 1 + static_cast<int>(rng.nextU64() % 4);
    const int R = 1 + static_cast<int>(rng.nextU64() % 4);
    auto w = testutil::gridWeights(rng, L * R);
    for (int r = 1; r <= std::min(L, R); ++r) {
      auto expected = oracle::bruteForceBest(w, L, R, r);
      CHECK(solveValue(w, L, R, r) == doctest::Approx(expected.value));
    }
  }
}

TEST_CASE("solver handles negative weights with exact size") {
  Rng rng(13, 0);
  for (int trial = 0; trial < 80; ++trial) {
    const int L = 1 + static_cast<int>(rng.nextU64() % 4);
    const int R = 1 + static_cast<int>(rng.nextU64() % 4);
    std::vector<double> w(L * R);
    for (auto& v : w) v = rng.nextDouble() * 2.0 - 1.0;
    for (int r = 1; r <= std::min(L, R); ++r) {
      auto expected = oracle::bruteForceBest(w, L, R, r);
      CHECK(solveValue(w, L, R, r) == doctest::Approx(expected.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("one-shot Hungarian cross-check at full size") {
  Rng rng(14, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const int L = 1 + static_cast<int>(rng.nextU64() % 5);
    const int R = 1 + static_cast<int>(rng.nextU64() % 5);
    auto w = (trial % 2) ? testutil::randomWeights(rng, L * R)
                         : testutil::gridWeights(rng, L * R);
    const int r = std::min(L, R);
    CHECK(solveValue(w, L, R, r) ==
          doctest::Approx(oracle::hungarianMaxValue(w, L, R)).epsilon(1e-9));
  }
}

TEST_CASE("nesting and uniqueness on continuous weights") {
  // Nesting of optimal vertex sets checked against independently enumerated
  // optima, and the strict gap between best and second-best total weights,
  // across 1000 random instances.
  Rng rng(15, 0);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int L = 2 + static_cast<int>(rng.nextU64() % 4);  // up to 5
    const int R = 2 + static_cast<int>(rng.nextU64() % 4);
    auto w = testutil::randomWeights(rng, L * R);
    std::set<int> prev_lefts, prev_rights;
    for (int r = 1; r <= std::min(L, R); ++r) {
      auto best = oracle::bruteForceBest(w, L, R, r);
      CHECK(best.value - best.second > kDefaultTol);  // strict optimum gap
      std::set<int> lefts, rights;
      for (auto [l, j] : best.pairs) {
        lefts.insert(l);
        rights.insert(j);
      }
      for (int l : prev_lefts) CHECK(lefts.count(l));
      for (int j : prev_rights) CHECK(rights.count(j));
      prev_lefts = lefts;
      prev_rights = rights;
      ++checked;
    }
  }
  CHECK(checked > 400);
}

TEST_CASE("incremental solver states nest by construction") {
  Rng rng(16, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const int L = 2 + static_cast<int>(rng.nextU64() % 4);
    const int R = 2 + static_cast<int>(rng.nextU64() % 4);
    auto w = (trial % 2) ? testutil::randomWeights(rng, L * R)
                         : testutil::gridWeights(rng, L * R);
    MaxWeightMatcher m(L, R, w);
    std::set<int> prev_l, prev_r;
    while (auto step = m.augmentBest()) {
      auto ls = matchedLefts(m);
      auto rs = matchedRights(m);
      for (int l : prev_l) CHECK(ls.count(l));
      for (int r : prev_r) CHECK(rs.count(r));
      prev_l = ls;
      prev_r = rs;
    }
  }
}

TEST_CASE("entry gains equal enumerated marginals") {
  Rng rng(17, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int L = 1 + static_cast<int>(rng.nextU64() % 3);
    const int R = 2 + static_cast<int>(rng.nextU64() % 4);
    auto w = (trial % 3 == 0) ? testutil::gridWeights(rng, L * R)
                              : testutil::randomWeights(rng, L * R);
    // solve a prefix of the rights, query gains of the rest
    const int base = 1 + static_cast<int>(rng.nextU64() % (R - 1));
    MaxWeightMatcher m(L, R, w);
    for (int j = base; j < R; ++j) m.deactivateRight(j);
    const int r0 = std::min(L, base);
    for (int s = 0; s < r0; ++s) REQUIRE(m.augmentBest().has_value());
    for (int j = base; j < R; ++j) m.activateRight(j);

    // oracle: v(prefix ∪ {j}) − v(prefix), unrestricted max with nonneg weights
    std::vector<double> wb(L * base);
    for (int l = 0; l < L; ++l)
      for (int j = 0; j < base; ++j) wb[l * base + j] = w[l * R + j];
    const double v_base = oracle::bruteForceValue(wb, L, base);

    auto gains = m.entryGains();
    for (int j = base; j < R; ++j) {
      std::vector<double> wj(L * (base + 1));
      for (int l = 0; l < L; ++l) {
        for (int c = 0; c < base; ++c) wj[l * (base + 1) + c] = w[l * R + c];
        wj[l * (base + 1) + base] = w[l * R + j];
      }
      const double expected = oracle::bruteForceValue(wj, L, base + 1) - v_base;
      CHECK(gains[j] == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("removal values equal enumerated re-solves") {
  Rng rng(18, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int L = 1 + static_cast<int>(rng.nextU64() % 4);
    const int R = 1 + static_cast<int>(rng.nextU64() % 4);
    auto w = (trial % 3 == 0) ? testutil::gridWeights(rng, L * R)
                              : testutil::randomWeights(rng, L * R);
    MaxWeightMatcher m(L, R, w);
    const int r = std::min(L, R);
    for (int s = 0; s < r; ++s) REQUIRE(m.augmentBest().has_value());
    for (int b = 0; b < R; ++b) {
      if (m.matchOfRight(b) == -1) continue;
      // oracle: drop column b, take the unrestricted best
      std::vector<double> wb(L * (R - 1));
      for (int l = 0; l < L; ++l) {
        int c = 0;
        for (int j = 0; j < R; ++j)
          if (j != b) wb[l * (R - 1) + c++] = w[l * R + j];
      }
      const double expected =
          (R == 1) ? 0.0 : oracle::bruteForceValue(wb, L, R - 1);
      CHECK(m.removalValue(b) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("augment step replay reproduces the matching") {
  Rng rng(19, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const int L = 2 + static_cast<int>(rng.nextU64() % 4);
    const int R = 2 + static_cast<int>(rng.nextU64() % 4);
    auto w = testutil::randomWeights(rng, L * R);
    MaxWeightMatcher m(L, R, w);
    std::vector<AugmentStep> steps;
    while (auto s = m.augmentBest()) steps.push_back(*s);
    auto replayed = replaySteps(steps);
    std::set<std::pair<int, int>> expect;
    for (int l = 0; l < L; ++l)
      if (m.matchOfLeft(l) != -1) expect.insert({l, m.matchOfLeft(l)});
    CHECK(std::set<std::pair<int, int>>(replayed.begin(), replayed.end()) ==
          expect);
  }
}

// --- spec'd worked examples -------------------------------------------------

TEST_CASE("table1: unique maximum-weight matching of size 4") {
  auto inst = testutil::table1();
  std::vector<int> agents = {0, 1, 2, 3}, items = {0, 1, 2, 3};
  auto m = maxWeightMatchingOfSize(inst, agents, items, 4);
  std::vector<std::pair<int, int>> expect = {{0, 0}, {1, 3}, {2, 1}, {3, 2}};
  CHECK(m.pairs == expect);
  CHECK(m.totalWeight(inst) == doctest::Approx(13.0));
}

TEST_CASE("size zero gives the empty matching") {
  auto inst = testutil::table1();
  auto m = maxWeightMatchingOfSize(inst, {0, 1}, {0, 1, 2}, 0);
  CHECK(m.pairs.empty());
}

TEST_CASE("infeasible size throws") {
  auto inst = testutil::table1();
  CHECK_THROWS_AS(maxWeightMatchingOfSize(inst, {0, 1}, {0, 1, 2}, 3),
                  InfeasibleSize);
}

TEST_CASE("random instance equals enumeration oracle at r = 3") {
  Rng rng(42, 7);
  auto w = testutil::randomWeights(rng, 4 * 5);
  Instance inst({4}, 5, w);
  std::vector<int> agents = {0, 1, 2, 3}, items = {0, 1, 2, 3, 4};
  auto m = maxWeightMatchingOfSize(inst, agents, items, 3);
  auto expected = oracle::bruteForceBest(w, 4, 5, 3);
  CHECK(m.totalWeight(inst) == doctest::Approx(expected.value));
}

TEST_CASE("table1 assignment valuations") {
  auto inst = testutil::table1();
  // Class 2's value for class 1's max-weight bundle {j1, j4}: brute force
  // gives 4 (the worked example's prose says 5; the envy conclusion is
  // unchanged since 4 > 3).
  CHECK(assignmentValuation(inst, 1, {0, 3}) == doctest::Approx(4.0));
  CHECK(oracle::valuation(inst, 1, {0, 3}) == doctest::Approx(4.0));
  CHECK(assignmentValuation(inst, 0, {2, 3}) == doctest::Approx(5.0));
  CHECK(assignmentValuation(inst, 0, {}) == doctest::Approx(0.0));
}

TEST_CASE("assignment valuation is bounded and monotone") {
  Rng rng(20, 0);
  for (int trial = 0; trial < 50; ++trial) {
    Instance inst({2, 2}, 5, testutil::randomWeights(rng, 4 * 5));
    for (int p = 0; p < 2; ++p) {
      CHECK(assignmentValuation(inst, p, {0, 1, 2}) <=
            std::min(2, 3) + kDefaultTol);
      const double v1 = assignmentValuation(inst, p, {0, 1});
      const double v2 = assignmentValuation(inst, p, {0, 1, 4});
      CHECK(v2 >= v1 - kDefaultTol);
    }
  }
}

TEST_CASE("table1 marginal gains") {
  auto inst = testutil::table1();
  CHECK(marginalGain(inst, 0, {0}, 1) == doctest::Approx(1.0));
  CHECK(marginalGain(inst, 0, {0}, 2) == doctest::Approx(0.0));
  // empty bundle: best single utility in the class
  CHECK(marginalGain(inst, 1, {}, 0) == doctest::Approx(2.0));
  CHECK(marginalGain(inst, 1, {}, 3) == doctest::Approx(3.0));
}

TEST_CASE("marginal gains are nonnegative and match valuations") {
  Rng rng(21, 0);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst({2, 1}, 4, (trial % 2) ? testutil::randomWeights(rng, 3 * 4)
                                         : testutil::gridWeights(rng, 3 * 4));
    for (int p = 0; p < 2; ++p) {
      const std::vector<int> bundle = {0, 2};
      for (int j : {1, 3}) {
        const double g = marginalGain(inst, p, bundle, j);
        CHECK(g >= 0.0);
        std::vector<int> with = bundle;
        with.push_back(j);
        const double expect =
            oracle::valuation(inst, p, with) - oracle::valuation(inst, p, bundle);
        CHECK(g == doctest::Approx(expect).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("table1 favorite bundles") {
  auto inst = testutil::table1();
  CHECK(favoriteBundle(inst, 0, 2) == std::vector<int>{0, 3});
  CHECK(assignmentValuation(inst, 0, {0, 3}) == doctest::Approx(10.0));
  CHECK(favoriteBundle(inst, 0, 0).empty());
}

TEST_CASE("favorite bundle equals enumeration over all size-r bundles") {
  Rng rng(22, 0);
  for (int trial = 0; trial < 120; ++trial) {
    const int np = 1 + static_cast<int>(rng.nextU64() % 4);
    const int m = 3 + static_cast<int>(rng.nextU64() % 6);  // up to 8
    Instance inst({np}, m, (trial % 3 == 0)
                               ? testutil::gridWeights(rng, np * m)
                               : testutil::randomWeights(rng, np * m));
    for (int r = 0; r <= std::min(4, m); ++r) {
      auto bundle = favoriteBundle(inst, 0, r);
      CHECK(static_cast<int>(bundle.size()) == r);
      if (r == 0) continue;
      CHECK(assignmentValuation(inst, 0, bundle) ==
            doctest::Approx(oracle::bestBundleValue(inst, 0, r)).epsilon(1e-9));
    }
  }
}

TEST_CASE("augmenting path trace: single max edge at r = 1") {
  auto inst = testutil::table1();
  auto steps = augmentingPathTrace(inst, {0, 1, 2, 3}, {0, 1, 2, 3}, 1);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].added.size() == 1);
  CHECK(steps[0].removed.empty());
  CHECK(steps[0].gain == doctest::Approx(5.0));
  CHECK(steps[0].added[0].first == 0);   // i1
  CHECK(steps[0].added[0].second == 0);  // j1
}

TEST_CASE("table1 class 2 trace: adding j3 to {j4} is the single edge (i4,j3)") {
  auto inst = testutil::table1();
  auto steps = augmentingPathTrace(inst, {2, 3}, {3, 2}, 2);
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].added == std::vector<std::pair<int, int>>{{2, 3}});
  CHECK(steps[1].added == std::vector<std::pair<int, int>>{{3, 2}});
  CHECK(steps[1].removed.empty());
  CHECK(steps[1].gain == doctest::Approx(2.0));
}

TEST_CASE("trace replay reproduces max_weight_matching_of_size") {
  Rng rng(23, 5);
  auto w = testutil::randomWeights(rng, 25);
  Instance inst({5}, 5, w);
  std::vector<int> idx = {0, 1, 2, 3, 4};
  auto steps = augmentingPathTrace(inst, idx, idx, 3);
  auto replayed = replaySteps(steps);
  auto m = maxWeightMatchingOfSize(inst, idx, idx, 3);
  CHECK(replayed == m.pairs);
}

TEST_CASE("all-marginal and all-removal batches agree with single queries") {
  Rng rng(24, 0);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst({2, 2}, 6, (trial % 2) ? testutil::randomWeights(rng, 4 * 6)
                                         : testutil::gridWeights(rng, 4 * 6));
    const std::vector<int> bundle = {1, 4};
    for (int p = 0; p < 2; ++p) {
      auto gains = allMarginalGains(inst, p, bundle);
      for (int j : {0, 2, 3, 5})
        CHECK(gains[j] ==
              doctest::Approx(marginalGain(inst, p, bundle, j)).epsilon(1e-9));
      auto removals = allRemovalValues(inst, p, bundle);
      for (size_t c = 0; c < bundle.size(); ++c) {
        std::vector<int> rest;
        for (size_t c2 = 0; c2 < bundle.size(); ++c2)
          if (c2 != c) rest.push_back(bundle[c2]);
        CHECK(removals[c] ==
              doctest::Approx(oracle::valuation(inst, p, rest)).epsilon(1e-9));
      }
    }
  }
}
