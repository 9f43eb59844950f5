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
#include <sstream>

#include "matchprobe/graph.hpp"

namespace matchprobe {
namespace {

DirectedGraph cycle(int n) {
  DirectedGraph g(n);
  for (int v = 0; v < n; ++v) g.add_arc(v, (v + 1) % n);
  return g;
}

DirectedGraph random_digraph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  DirectedGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng)) g.add_arc(u, v);
  return g;
}

bool acyclic_after_arcs(const DirectedGraph& g, const std::vector<int>& removed) {
  DirectedGraph h(g.vertex_count());
  for (std::size_t i = 0; i < g.arcs().size(); ++i)
    if (std::find(removed.begin(), removed.end(), static_cast<int>(i)) == removed.end())
      h.add_arc(g.arcs()[i].from, g.arcs()[i].to);
  return is_acyclic(h);
}

bool acyclic_after_vertices(const DirectedGraph& g, const std::vector<int>& removed) {
  DirectedGraph h(g.vertex_count());
  for (const auto& a : g.arcs())
    if (std::find(removed.begin(), removed.end(), a.from) == removed.end() &&
        std::find(removed.begin(), removed.end(), a.to) == removed.end())
      h.add_arc(a.from, a.to);
  return is_acyclic(h);
}

// Minimum FAS by trying every arc subset in order of size.
std::size_t brute_fas(const DirectedGraph& g) {
  const std::size_t m = g.arcs().size();
  std::size_t best = m;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> removed;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) removed.push_back(static_cast<int>(i));
    if (removed.size() < best && acyclic_after_arcs(g, removed)) best = removed.size();
  }
  return best;
}

TEST(FeedbackArcSet, Examples) {
  EXPECT_EQ(feedback_arc_set(cycle(3), SolveMode::Exact).size(), 1u);
  DirectedGraph dag(4);
  dag.add_arc(0, 1);
  dag.add_arc(1, 2);
  dag.add_arc(0, 3);
  EXPECT_TRUE(feedback_arc_set(dag, SolveMode::Exact).empty());
  EXPECT_TRUE(feedback_arc_set(dag, SolveMode::Greedy).empty());
  DirectedGraph two(4);
  two.add_arc(0, 1);
  two.add_arc(1, 0);
  two.add_arc(2, 3);
  two.add_arc(3, 2);
  EXPECT_EQ(feedback_arc_set(two, SolveMode::Exact).size(), 2u);
}

TEST(FeedbackArcSet, InfiniteArcsAreNeverChosen) {
  DirectedGraph g(3);
  g.add_arc(0, 1, kInfiniteWeight);
  g.add_arc(1, 2, kInfiniteWeight);
  const int cut = g.add_arc(2, 0);
  for (auto mode : {SolveMode::Exact, SolveMode::Greedy})
    EXPECT_EQ(feedback_arc_set(g, mode), std::vector<int>{cut});
  DirectedGraph stuck(2);
  stuck.add_arc(0, 1, kInfiniteWeight);
  stuck.add_arc(1, 0, kInfiniteWeight);
  EXPECT_THROW(feedback_arc_set(stuck, SolveMode::Exact), PreconditionError);
  EXPECT_THROW(feedback_arc_set(stuck, SolveMode::Greedy), PreconditionError);
}

TEST(FeedbackArcSet, SelfLoopRejected) {
  DirectedGraph g(2);
  g.add_arc(0, 0);
  EXPECT_THROW(feedback_arc_set(g, SolveMode::Exact), PreconditionError);
}

TEST(FeedbackArcSet, ExactMatchesBruteForceAndGreedyIsFeasible) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + trial % 5;
    auto g = random_digraph(n, 0.4, rng);
    if (g.arcs().size() > 14) continue;
    const auto exact = feedback_arc_set(g, SolveMode::Exact);
    EXPECT_TRUE(acyclic_after_arcs(g, exact));
    EXPECT_EQ(exact.size(), brute_fas(g));
    const auto greedy = feedback_arc_set(g, SolveMode::Greedy);
    EXPECT_TRUE(acyclic_after_arcs(g, greedy));
    EXPECT_GE(greedy.size(), exact.size());
  }
}

TEST(FeedbackArcSet, SubsetSearchBeyondOrderingLimit) {
  // 14 vertices: two disjoint 7-cycles.
  DirectedGraph g(14);
  for (int v = 0; v < 7; ++v) {
    g.add_arc(v, (v + 1) % 7);
    g.add_arc(7 + v, 7 + (v + 1) % 7);
  }
  const auto f = feedback_arc_set(g, SolveMode::Exact);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_TRUE(acyclic_after_arcs(g, f));
}

TEST(FeedbackVertexSet, ExamplesAndMinimality) {
  EXPECT_EQ(feedback_vertex_set(cycle(4), SolveMode::Exact).size(), 1u);
  DirectedGraph two(4);
  two.add_arc(0, 1);
  two.add_arc(1, 0);
  two.add_arc(2, 3);
  two.add_arc(3, 2);
  EXPECT_EQ(feedback_vertex_set(two, SolveMode::Exact).size(), 2u);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 6;
    auto g = random_digraph(n, 0.35, rng);
    const auto exact = feedback_vertex_set(g, SolveMode::Exact);
    EXPECT_TRUE(acyclic_after_vertices(g, exact));
    const auto greedy = feedback_vertex_set(g, SolveMode::Greedy);
    EXPECT_TRUE(acyclic_after_vertices(g, greedy));
    EXPECT_GE(greedy.size(), exact.size());
    // No smaller set works.
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) >= exact.size()) continue;
      std::vector<int> vs;
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1u) vs.push_back(v);
      EXPECT_FALSE(acyclic_after_vertices(g, vs));
    }
  }
}

TEST(FeedbackVertexSet, FixedVerticesRespected) {
  auto g = cycle(3);
  const auto f = feedback_vertex_set(g, SolveMode::Exact, {false, false, true});
  EXPECT_EQ(f, std::vector<int>{2});
  EXPECT_THROW(feedback_vertex_set(g, SolveMode::Exact, {false, false, false}),
               PreconditionError);
}

TEST(EdgeList, ParsesAndRejects) {
  std::istringstream in("# triangle\n0 1\n\n1 2\n2 0\n");
  auto g = read_edge_list(in);
  EXPECT_EQ(g.vertex_count(), 3);
  EXPECT_EQ(g.arcs().size(), 3u);
  std::istringstream bad("0 1 2\n");
  EXPECT_THROW(read_edge_list(bad), InstanceFormatError);
  std::istringstream neg("0 -1\n");
  EXPECT_THROW(read_edge_list(neg), InstanceFormatError);
}

}  // namespace
}  // namespace matchprobe
