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

// Adaptive answer source for the figure1 lower-bound family. The position
// of each A_1 agent in the B_2 lists is decided lazily: a_i ends up in front
// of b_j's middle block only for the B_2 agent that completes its coverage.

#ifndef MATCHPROBE_ADVERSARY_HPP_
#define MATCHPROBE_ADVERSARY_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "matchprobe/core.hpp"
#include "matchprobe/fixtures.hpp"
#include "matchprobe/oracles.hpp"
#include "matchprobe/rotations.hpp"

namespace matchprobe {

class Fig1Adversary : public AnswerSource {
 public:
  explicit Fig1Adversary(int n)
      : n_(n),
        half_(n / 2),
        profile_(figure1_profile(n)),
        target_(n / 2, -1),
        hit_(n / 2, std::vector<bool>(n, false)),
        hit_count_(n / 2, 0) {
    for (int j = 0; j < half_; ++j) b1_.push_back(figure1_b1_list(n, j));
    for (int j = half_; j < n; ++j) {
      std::vector<int> rank(n, -1);
      const auto block = figure1_middle_block(n, j);
      for (std::size_t k = 0; k < block.size(); ++k) rank[block[k]] = static_cast<int>(k);
      middle_rank_.push_back(std::move(rank));
    }
  }

  int n() const override { return n_; }

  bool prefers(int b, int x, int y) override {
    if (b >= half_) {
      // Lower index first when both are A_1 agents.
      for (int v : {std::min(x, y), std::max(x, y)})
        if (v < half_) record_hit(v, b);
    }
    const bool answer = key(b, x) < key(b, y);
    answers_.emplace_back(b, answer ? x : y, answer ? y : x);
    return answer;
  }

  void on_interview(int b, int a) override {
    if (b >= half_ && a < half_) record_hit(a, b);
  }

  const PreferenceProfile& profile() const { return profile_; }

  // Committed t(i), or -1 while a_i has not covered every B_2 agent.
  const std::vector<int>& committed_targets() const { return target_; }

  // A_1 agents that were queried against every B_2 agent.
  std::vector<int> resolved_agents() const {
    std::vector<int> out;
    for (int i = 0; i < half_; ++i)
      if (hit_count_[i] == n_ - half_) out.push_back(i);
    return out;
  }

  std::size_t answers_given() const { return answers_.size(); }

  // Fixes every open t(i) to its lowest unhit B_2 agent, builds the lists
  // and checks them against every answer given.
  Realization finalize() const {
    std::vector<int> t = target_;
    for (int i = 0; i < half_; ++i) {
      if (t[i] >= 0) continue;
      for (int j = half_; j < n_ && t[i] < 0; ++j)
        if (!hit_[i][j]) t[i] = j;
    }
    Realization r = figure1_realization(n_, t);
    for (const auto& [b, w, l] : answers_)
      if (!r.prefers(b, w, l))
        throw InconsistentAnswersError("adversary: answer a_" + std::to_string(w) +
                                       " over a_" + std::to_string(l) + " at b_" +
                                       std::to_string(b) + " contradicts the completion");
    return r;
  }

  Instance finalized_instance() const {
    return Instance{profile_, finalize(), Matching::identity(n_),
                    "figure1-adversary-" + std::to_string(n_)};
  }

 private:
  void record_hit(int i, int j) {
    if (target_[i] >= 0 || hit_[i][j]) return;
    hit_[i][j] = true;
    if (++hit_count_[i] == n_ - half_) target_[i] = j;
  }

  // Position class in b's list; smaller comes first.
  std::pair<int, int> key(int b, int a) const {
    if (b < half_) {
      const auto& row = b1_[b];
      return {0, static_cast<int>(std::find(row.begin(), row.end(), a) - row.begin())};
    }
    if (a >= half_) return {1, middle_rank_[b - half_][a]};
    return {target_[a] == b ? 0 : 2, a};
  }

  int n_;
  int half_;
  PreferenceProfile profile_;
  std::vector<std::vector<int>> b1_;
  std::vector<std::vector<int>> middle_rank_;
  std::vector<int> target_;
  std::vector<std::vector<bool>> hit_;
  std::vector<int> hit_count_;
  std::vector<std::tuple<int, int, int>> answers_;  // (b, preferred, other)
};

// Per odd i < n/2, one uniformly drawn (a_k, b_j), k ∈ {i-1, i}, b_j ∈ B_2,
// with b_j preferring a_k to a_j. Every other such pair keeps the partner
// in front.
inline Instance gen_fig1_randomized(int n, std::uint64_t seed) {
  auto profile = figure1_profile(n);
  const int half = n / 2;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> side(0, 1), pick(half, n - 1);
  std::vector<int> target(half, -1);
  for (int i = 1; i < half; i += 2) {
    const int k = i - 1 + side(rng);
    target[k] = pick(rng);
  }
  return Instance{std::move(profile), figure1_realization(n, target),
                  Matching::identity(n),
                  "figure1-random-" + std::to_string(n) + "-" + std::to_string(seed)};
}

// The 2n-2 comparisons refuting every edge out of a_{n-1} and confirming
// each existing r-edge.
inline std::vector<Query> fig1_certificate(const Instance& inst) {
  const int n = inst.size();
  const Matching m = inst.matching.value_or(Matching::identity(n));
  std::vector<Query> out;
  for (int i = 0; i + 1 < n; ++i)
    out.push_back({QueryModel::Comparison, Side::B, i, {n - 1, i}});
  const auto edges = r_edges(inst.profile, inst.hidden(), m);
  for (int a = 0; a < n; ++a)
    if (edges[a] >= 0)
      out.push_back({QueryModel::Comparison, Side::B, edges[a],
                     {a, m.partner_of_b(edges[a])}});
  return out;
}

}  // namespace matchprobe

#endif  // MATCHPROBE_ADVERSARY_HPP_
