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

#include <cmath>

#include "matchprobe/certify.hpp"
#include "matchprobe/fixtures.hpp"
#include "matchprobe/verify.hpp"
#include "test_support.hpp"

namespace matchprobe {
namespace {

int ceil_log2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

TEST(VerifyComparison, Examples) {
  auto id = fixture_identity(3);
  RealizationSource s1(id.hidden());
  auto r1 = verify_stable_comparison(id.profile, Matching::identity(3), s1);
  EXPECT_EQ(r1.verdict, Verdict::Stable);
  EXPECT_EQ(r1.queries(), 0u);

  auto fig = fixture_figure1(12);
  RealizationSource s2(fig.hidden());
  auto r2 = verify_stable_comparison(fig.profile, Matching::identity(12), s2);
  EXPECT_EQ(r2.verdict, Verdict::Stable);
  EXPECT_EQ(r2.queries(), 0u);

  auto rot = fixture_rot2();
  RealizationSource s3(rot.hidden());
  auto r3 = verify_stable_comparison(rot.profile, Matching({1, 0}), s3);
  EXPECT_EQ(r3.verdict, Verdict::Stable);
  EXPECT_EQ(r3.queries(), 2u);
}

TEST(VerifyComparison, FindsBlockingPair) {
  auto swap = fixture_swap2();
  RealizationSource s(swap.hidden());
  auto r = verify_stable_comparison(swap.profile, Matching::identity(2), s);
  EXPECT_EQ(r.verdict, Verdict::BlockingPair);
  EXPECT_EQ(r.blocking_pair, (std::pair<int, int>{1, 0}));
  EXPECT_TRUE(is_blocking_pair(swap.profile, swap.hidden(), Matching::identity(2), 1, 0));
  auto j = r.to_json();
  EXPECT_EQ(j["verdict"], "blocking-pair");
  EXPECT_EQ(j["witness"], nlohmann::json::array({"a_1", "b_0"}));
  EXPECT_EQ(j["model"], "comparison");
}

TEST(VerifyComparison, ExactCountAndSoundVerdicts) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    auto inst = random_instance(n, seed);
    std::mt19937_64 rng(seed);
    auto perm = random_permutation(n, rng);
    const Matching any(perm);
    RealizationSource src(inst.hidden());
    auto r = verify_stable_comparison(inst.profile, any, src);
    EXPECT_EQ(r.positive(), is_stable(inst, any));
    if (r.positive()) {
      EXPECT_EQ(r.queries(),
                static_cast<std::size_t>(count_potential_blocking_pairs(inst.profile, any)));
      EXPECT_EQ(r.queries(), count_relationship_pairs(r.knowledge, any));
      EXPECT_TRUE(certifies_semantic(r.knowledge, inst.profile, any, CertTarget::Stable));
    } else {
      auto [a, b] = *r.blocking_pair;
      EXPECT_TRUE(is_blocking_pair(inst.profile, inst.hidden(), any, a, b));
    }
  }
}

TEST(VerifyTwoSided, Fix2SidedReplaysTwoForOne) {
  auto inst = fixture_two_sided();
  RealizationSource a_side(inst.profile), b_side(inst.hidden());
  auto r = verify_stable_twosided(a_side, b_side, *inst.matching);
  EXPECT_EQ(r.verdict, Verdict::Stable);
  EXPECT_EQ(r.queries(), 4u);
  // Each probed pair costs one B query answered unfavourably, then one A query.
  const auto& e = r.transcript.entries();
  ASSERT_EQ(e.size(), 4u);
  EXPECT_EQ(e[0].query.side, Side::B);
  EXPECT_EQ(e[1].query.side, Side::A);
  EXPECT_EQ(e[2].query.side, Side::B);
  EXPECT_EQ(e[3].query.side, Side::A);
}

// Smallest set of two-sided comparisons certifying stability, by brute force
// over all subsets of the 2·n·C(n,2) distinct comparisons. n = 2 only.
std::size_t twosided_optimum(const PreferenceTable& a_prefs,
                             const PreferenceTable& b_prefs, const Matching& m) {
  struct Cmp { Side side; int agent, x, y; };
  std::vector<Cmp> all;
  const int n = m.size();
  for (int v = 0; v < n; ++v)
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        all.push_back({Side::A, v, x, y});
        all.push_back({Side::B, v, x, y});
      }
  std::size_t best = all.size() + 1;
  for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
    KnowledgeState ka(n), kb(n);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!(mask >> i & 1u)) continue;
      const auto& c = all[i];
      const auto& t = c.side == Side::A ? a_prefs : b_prefs;
      auto& k = c.side == Side::A ? ka : kb;
      if (t.prefers(c.agent, c.x, c.y))
        k.add(c.agent, c.x, c.y);
      else
        k.add(c.agent, c.y, c.x);
    }
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        if (m.contains(a, b)) continue;
        ok = ka.entails(a, m.partner_of_a(a), b) || kb.entails(b, m.partner_of_b(b), a);
      }
    if (ok) best = std::min<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

TEST(VerifyTwoSided, Fix2SidedOptimumIsTwo) {
  auto inst = fixture_two_sided();
  EXPECT_EQ(twosided_optimum(inst.profile, inst.hidden(), *inst.matching), 2u);
}

TEST(VerifyTwoSided, MutualTopChoices) {
  auto id = fixture_identity(2);
  RealizationSource a_side(id.profile), b_side(id.hidden());
  auto r = verify_stable_twosided(a_side, b_side, Matching::identity(2));
  EXPECT_EQ(r.verdict, Verdict::Stable);
  EXPECT_EQ(r.queries(), 2u);
}

TEST(VerifyTwoSided, FirstProbedPairBlocks) {
  // a_0 and b_1 like each other best but are not matched.
  PreferenceTable a({{1, 0}, {0, 1}}), b({{1, 0}, {0, 1}});
  RealizationSource a_side(a), b_side(b);
  auto r = verify_stable_twosided(a_side, b_side, Matching::identity(2));
  EXPECT_EQ(r.verdict, Verdict::BlockingPair);
  EXPECT_EQ(r.queries(), 2u);
  EXPECT_EQ(r.blocking_pair, (std::pair<int, int>{0, 1}));
}

TEST(VerifyTwoSided, AtMostTwicePairsAndSound) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    auto inst = random_instance(n, seed);
    const Matching m = a_optimal_matching(inst);
    RealizationSource a_side(inst.profile), b_side(inst.hidden());
    auto r = verify_stable_twosided(a_side, b_side, m);
    EXPECT_EQ(r.verdict, Verdict::Stable);
    EXPECT_LE(r.queries(), static_cast<std::size_t>(2 * (n * n - n)));
    EXPECT_GE(r.queries(), static_cast<std::size_t>(n * n - n));
  }
}

TEST(VerifyInterview, Examples) {
  auto id = fixture_identity(3);
  RealizationSource s1(id.hidden());
  EXPECT_EQ(verify_stable_interview(id.profile, Matching::identity(3), s1).queries(), 0u);
  auto rot = fixture_rot2();
  RealizationSource s2(rot.hidden());
  auto r = verify_stable_interview(rot.profile, Matching({1, 0}), s2);
  EXPECT_EQ(r.verdict, Verdict::Stable);
  EXPECT_EQ(r.queries(), 4u);
}

TEST(VerifyInterview, SingleBWithThreeBlockers) {
  // Everyone ranks b_0 first; b_0 holds its favourite a_3.
  PreferenceProfile p({{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}, {0, 1, 2, 3}});
  PreferenceTable b({{3, 0, 1, 2}, {0, 1, 2, 3}, {1, 2, 0, 3}, {2, 0, 1, 3}});
  const Matching m({1, 2, 3, 0});
  RealizationSource src(b);
  auto r = verify_stable_interview(p, m, src);
  EXPECT_EQ(r.verdict, Verdict::Stable);
  std::size_t on_b0 = 0;
  for (const auto& e : r.transcript.entries()) on_b0 += e.query.agent == 0;
  EXPECT_EQ(on_b0, 4u);
}

TEST(VerifyInterview, CountMatchesFormula) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    auto inst = random_instance(n, seed);
    for (const auto& m : enumerate_stable_matchings(inst.profile, inst.hidden())) {
      RealizationSource src(inst.hidden());
      auto r = verify_stable_interview(inst.profile, m, src);
      ASSERT_EQ(r.verdict, Verdict::Stable);
      std::size_t expect = 0;
      for (int b = 0; b < n; ++b) {
        auto z = potential_blockers(inst.profile, m, b);
        if (!z.empty()) expect += 1 + z.size();
      }
      EXPECT_EQ(r.queries(), expect);
    }
  }
}

TEST(VerifySet, Examples) {
  auto id = fixture_identity(3);
  RealizationSource s1(id.hidden());
  EXPECT_EQ(verify_stable_set(id.profile, Matching::identity(3), s1).queries(), 0u);
  auto rot = fixture_rot2();
  RealizationSource s2(rot.hidden());
  auto r = verify_stable_set(rot.profile, Matching({1, 0}), s2);
  EXPECT_EQ(r.verdict, Verdict::Stable);
  EXPECT_EQ(r.queries(), 2u);
  auto eq = fixture_equal(4);
  const Matching bopt = b_optimal_matching(eq);
  RealizationSource s3(eq.hidden());
  std::size_t nonempty = 0;
  for (int b = 0; b < 4; ++b) nonempty += !potential_blockers(eq.profile, bopt, b).empty();
  EXPECT_EQ(verify_stable_set(eq.profile, bopt, s3).queries(), nonempty);
  EXPECT_EQ(nonempty, 3u);
}

TEST(VerifySet, SoundOnArbitraryMatchings) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    auto inst = random_instance(n, seed);
    std::mt19937_64 rng(seed + 1000);
    const Matching m(random_permutation(n, rng));
    RealizationSource src(inst.hidden());
    auto r = verify_stable_set(inst.profile, m, src);
    EXPECT_EQ(r.positive(), is_stable(inst, m));
    EXPECT_LE(r.queries(), static_cast<std::size_t>(n));
    if (!r.positive()) {
      auto [a, b] = *r.blocking_pair;
      EXPECT_TRUE(is_blocking_pair(inst.profile, inst.hidden(), m, a, b));
    }
  }
}

TEST(VerifyBOptimalSet, Examples) {
  auto id = fixture_identity(3);
  RealizationSource s1(id.hidden());
  EXPECT_EQ(verify_b_optimal_set(id.profile, Matching::identity(3), s1).verdict,
            Verdict::BOptimal);

  auto rot = fixture_rot2();
  RealizationSource s2(rot.hidden());
  auto r2 = verify_b_optimal_set(rot.profile, Matching::identity(2), s2);
  EXPECT_EQ(r2.verdict, Verdict::RotationExposed);
  ASSERT_TRUE(r2.rotation.has_value());
  EXPECT_EQ(r2.rotation->pairs, (std::vector<std::pair<int, int>>{{0, 0}, {1, 1}}));

  auto fig = fixture_figure1(12);
  RealizationSource s3(fig.hidden());
  auto r3 = verify_b_optimal_set(fig.profile, Matching::identity(12), s3);
  EXPECT_EQ(r3.verdict, Verdict::BOptimal);
  EXPECT_LE(r3.queries(), 24u * 6u);
  EXPECT_TRUE(certifies_b_optimal(r3.knowledge, fig.profile, Matching::identity(12)));
}

TEST(VerifyBOptimalSet, BoundHalvingAndSoundness) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const int n = 2 + static_cast<int>(seed % 19);
    auto inst = random_instance(n, seed);
    std::vector<Matching> candidates = {b_optimal_matching(inst),
                                        a_optimal_matching(inst)};
    for (const auto& m : candidates) {
      RealizationSource src(inst.hidden());
      auto r = verify_b_optimal_set(inst.profile, m, src);
      const bool truly = m == b_optimal_matching(inst);
      EXPECT_EQ(r.verdict == Verdict::BOptimal, truly) << seed;
      if (r.verdict == Verdict::BOptimal) {
        EXPECT_TRUE(certifies_b_optimal(r.knowledge, inst.profile, m));
        EXPECT_GE(r.queries(), static_cast<std::size_t>(n - 1));
      }
      if (r.verdict == Verdict::RotationExposed) {
        const auto exposed = exposed_rotations(inst, m);
        EXPECT_NE(std::find(exposed.begin(), exposed.end(), *r.rotation), exposed.end());
      }
      EXPECT_LE(r.queries(), static_cast<std::size_t>(2 * n * (ceil_log2(n) + 2)));
      for (std::size_t i = 0; i + 1 < r.candidate_sizes.size(); ++i)
        for (int a = 0; a < n; ++a)
          if (r.candidate_sizes[i][a] > 1) {
            EXPECT_LE(2 * r.candidate_sizes[i + 1][a], r.candidate_sizes[i][a] + 1);
          }
    }
  }
}

TEST(VerifyBOptimalSet, SemanticSoundnessSmall) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    auto inst = random_instance(n, seed);
    const Matching m = b_optimal_matching(inst);
    RealizationSource src(inst.hidden());
    auto r = verify_b_optimal_set(inst.profile, m, src);
    ASSERT_EQ(r.verdict, Verdict::BOptimal);
    EXPECT_TRUE(certifies_semantic(r.knowledge, inst.profile, m,
                                   CertTarget::StableBOptimal));
  }
}

}  // namespace
}  // namespace matchprobe
