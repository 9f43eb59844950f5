// Copyright 2026 The matchprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "matchprobe/fixtures.hpp"
#include "matchprobe/instance_io.hpp"
#include "matchprobe/stability.hpp"
#include "test_support.hpp"

namespace matchprobe {
namespace {

using testing::ref_a_optimal;
using testing::ref_b_optimal;
using testing::ref_stable;

TEST(PreferenceTable, RejectsDuplicateWithPosition) {
  try {
    PreferenceTable({{0, 1, 2}, {0, 0, 2}, {2, 1, 0}}, "a_prefs");
    FAIL() << "expected a format error";
  } catch (const InstanceFormatError& e) {
    EXPECT_STREQ(e.what(),
                 "a_prefs[1][1]: duplicate entry 0 (first seen at position 0)");
  }
}

TEST(PreferenceTable, RejectsOutOfRangeAndShortRows) {
  EXPECT_THROW(PreferenceTable({{0, 3}, {1, 0}}), InstanceFormatError);
  EXPECT_THROW(PreferenceTable(std::vector<std::vector<int>>{{0}, {1, 0}}),
               InstanceFormatError);
}

TEST(PreferenceTable, RankAndPrefers) {
  PreferenceTable t({{2, 0, 1}, {0, 1, 2}, {1, 2, 0}});
  EXPECT_EQ(t.rank(0, 2), 0);
  EXPECT_EQ(t.rank(0, 1), 2);
  EXPECT_TRUE(t.prefers(0, 2, 1));
  EXPECT_FALSE(t.prefers(2, 0, 1));
}

TEST(Matching, RejectsNonPermutation) {
  EXPECT_THROW(Matching({0, 0}), InstanceFormatError);
  Matching m({1, 0, 2});
  EXPECT_EQ(m.partner_of_b(1), 0);
  EXPECT_TRUE(m.contains(2, 2));
}

TEST(Instance, HiddenAccessThrows) {
  Instance inst{PreferenceProfile({{0, 1}, {1, 0}}), std::nullopt, std::nullopt,
                "open"};
  EXPECT_THROW(inst.hidden(), HiddenPreferenceError);
  EXPECT_THROW(rank(inst, AgentId::b(0), AgentId::a(1)), HiddenPreferenceError);
  EXPECT_EQ(rank(inst, AgentId::a(1), AgentId::b(0)), 1);
}

TEST(Stability, IdentityFixtureIsStable) {
  auto inst = fixture_identity(3);
  EXPECT_TRUE(is_stable(inst, *inst.matching));
  EXPECT_EQ(a_optimal_matching(inst), Matching::identity(3));
  EXPECT_EQ(b_optimal_matching(inst), Matching::identity(3));
}

TEST(Stability, Rot2Optima) {
  auto inst = fixture_rot2();
  EXPECT_EQ(a_optimal_matching(inst), Matching({0, 1}));
  EXPECT_EQ(b_optimal_matching(inst), Matching({1, 0}));
  EXPECT_EQ(enumerate_stable_matchings(inst.profile, inst.hidden()).size(), 2u);
}

TEST(Stability, Swap2BlockingPair) {
  auto inst = fixture_swap2();
  EXPECT_TRUE(is_blocking_pair(inst, Matching::identity(2), AgentId::a(1),
                               AgentId::b(0)));
  EXPECT_EQ(a_optimal_matching(inst), Matching({1, 0}));
}

TEST(Stability, DeferredAcceptanceMatchesReferenceOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 1 + static_cast<int>(seed % 6);
    auto inst = random_instance(n, seed);
    const auto& a = inst.profile.rows();
    const auto& b = inst.hidden().rows();
    EXPECT_EQ(a_optimal_matching(inst).pairs(), ref_a_optimal(a, b)) << seed;
    EXPECT_EQ(b_optimal_matching(inst).pairs(), ref_b_optimal(a, b)) << seed;
    for (const auto& m : enumerate_stable_matchings(inst.profile, inst.hidden()))
      EXPECT_TRUE(ref_stable(a, b, m.pairs()));
  }
}

TEST(Stability, ProposalCountsSumToQueriesPlusN) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto inst = random_instance(5, seed);
    auto run = run_deferred_acceptance(inst.profile, [&](int b, int x, int y) {
      return inst.hidden().prefers(b, x, y) ? x : y;
    });
    std::size_t extra = 0;
    for (int k : run.proposals_received) extra += static_cast<std::size_t>(k - 1);
    EXPECT_EQ(run.comparisons, extra);
  }
}

TEST(Stability, PotentialBlockingPairCount) {
  auto inst = fixture_rot2();
  EXPECT_EQ(count_potential_blocking_pairs(inst.profile, Matching({1, 0})), 2);
  EXPECT_EQ(count_potential_blocking_pairs(inst.profile, Matching({0, 1})), 0);
  EXPECT_EQ(potential_blockers(inst.profile, Matching({1, 0}), 0),
            std::vector<int>{0});
}

TEST(Fixtures, EqualFixtureHasIdenticalRows) {
  auto inst = fixture_equal(4);
  for (int a = 1; a < 4; ++a)
    EXPECT_EQ(inst.profile.rows()[a], inst.profile.rows()[0]);
  EXPECT_EQ(enumerate_stable_matchings(inst.profile, inst.hidden()).size(), 1u);
}

TEST(Fixtures, Figure1ListsMatchConstruction) {
  auto inst = fixture_figure1(12);
  EXPECT_EQ(inst.profile.rows()[0],
            (std::vector<int>{0, 6, 7, 8, 9, 10, 11, 1, 2, 3, 4, 5}));
  EXPECT_EQ(inst.profile.rows()[7][1], 11);
  EXPECT_EQ(inst.profile.rows()[11][0], 11);
  const auto& b = inst.hidden().rows();
  EXPECT_EQ(b[0][0], 1);
  EXPECT_EQ(b[0][1], 0);
  EXPECT_EQ(b[1][0], 0);
  EXPECT_EQ(b[1][1], 1);
  // b_7 = (front, a_7, a_8, a_9, a_10, a_11, a_6, back).
  EXPECT_EQ(std::vector<int>(b[7].begin(), b[7].begin() + 6),
            (std::vector<int>{7, 8, 9, 10, 11, 6}));
  // Static variant: every A_1 agent is in front at b_11.
  EXPECT_EQ(std::vector<int>(b[11].begin(), b[11].begin() + 6),
            (std::vector<int>{0, 1, 2, 3, 4, 5}));
  EXPECT_TRUE(is_stable(inst, *inst.matching));
  EXPECT_EQ(b_optimal_matching(inst), Matching::identity(12));
  EXPECT_THROW(figure1_profile(10), PreconditionError);
}

TEST(InstanceIo, RoundTrip) {
  auto inst = random_instance(5, 42);
  inst.matching = a_optimal_matching(inst);
  EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
}

TEST(InstanceIo, PositionalErrors) {
  try {
    parse_instance(R"({"n":2,"a_prefs":[[0,1],[1,1]]})");
    FAIL();
  } catch (const InstanceFormatError& e) {
    EXPECT_STREQ(e.what(),
                 "a_prefs[1][1]: duplicate entry 1 (first seen at position 0)");
  }
  EXPECT_THROW(parse_instance("{"), InstanceFormatError);
  EXPECT_THROW(parse_instance(R"({"n":2})"), InstanceFormatError);
  EXPECT_THROW(parse_instance(R"({"n":2,"a_prefs":[[0,1]]})"), InstanceFormatError);
  EXPECT_THROW(parse_instance(R"({"n":2,"a_prefs":[[0,1],[0,1]],"matching":[0,2]})"),
               InstanceFormatError);
}

TEST(InstanceIo, HiddenRealizationSurvivesWithoutBPrefs) {
  auto inst = parse_instance(R"({"n":2,"a_prefs":[[0,1],[1,0]]})");
  EXPECT_FALSE(inst.realization.has_value());
  EXPECT_THROW(b_optimal_matching(inst), HiddenPreferenceError);
}

}  // namespace
}  // namespace matchprobe
