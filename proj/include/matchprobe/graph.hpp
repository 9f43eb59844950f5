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

// Weighted digraphs with exact and greedy feedback arc / vertex set solvers.

#ifndef MATCHPROBE_GRAPH_HPP_
#define MATCHPROBE_GRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "matchprobe/core.hpp"

namespace matchprobe {

inline constexpr double kInfiniteWeight = std::numeric_limits<double>::infinity();

struct Arc {
  int from = 0;
  int to = 0;
  double weight = 1.0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(int vertices) : n_(vertices) {
    if (vertices < 0) throw PreconditionError("graph: negative vertex count");
  }

  int vertex_count() const { return n_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  // Returns the arc index.
  int add_arc(int from, int to, double weight = 1.0) {
    if (from < 0 || from >= n_ || to < 0 || to >= n_)
      throw PreconditionError("graph: arc endpoint out of range");
    if (!(weight > 0)) throw PreconditionError("graph: arc weights must be positive");
    arcs_.push_back({from, to, weight});
    return static_cast<int>(arcs_.size()) - 1;
  }

  bool has_self_loop() const {
    return std::any_of(arcs_.begin(), arcs_.end(),
                       [](const Arc& a) { return a.from == a.to; });
  }

  std::vector<std::vector<int>> out_neighbors() const {
    std::vector<std::vector<int>> adj(n_);
    for (const auto& a : arcs_) adj[a.from].push_back(a.to);
    for (auto& row : adj) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return adj;
  }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
};

enum class SolveMode { Exact, Greedy };

namespace detail {

// Kahn's algorithm over the arcs and vertices still present.
inline bool acyclic_without(const DirectedGraph& g, const std::vector<bool>& arc_gone,
                            const std::vector<bool>& vertex_gone) {
  const int n = g.vertex_count();
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> adj(n);
  const auto& arcs = g.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    if (arc_gone[i] || vertex_gone[a.from] || vertex_gone[a.to]) continue;
    adj[a.from].push_back(a.to);
    ++indeg[a.to];
  }
  std::vector<int> stack;
  int live = 0;
  for (int v = 0; v < n; ++v) {
    if (vertex_gone[v]) continue;
    ++live;
    if (indeg[v] == 0) stack.push_back(v);
  }
  int seen = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++seen;
    for (int w : adj[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  return seen == live;
}

// Up to `cap` simple cycles, each as a list of arc indices. Cycles are
// reported once, rooted at their smallest vertex.
inline std::vector<std::vector<int>> enumerate_cycles(const DirectedGraph& g,
                                                      const std::vector<bool>& arc_gone,
                                                      const std::vector<bool>& vertex_gone,
                                                      std::size_t cap) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> out_arcs(n);
  const auto& arcs = g.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    if (arc_gone[i] || vertex_gone[a.from] || vertex_gone[a.to]) continue;
    out_arcs[a.from].push_back(static_cast<int>(i));
  }
  std::vector<std::vector<int>> cycles;
  std::vector<bool> on_path(n, false);
  std::vector<int> path;
  std::size_t steps = 0;
  const std::size_t step_cap = cap * 64 + 4096;
  auto dfs = [&](auto&& self, int root, int v) -> void {
    if (cycles.size() >= cap || ++steps > step_cap) return;
    for (int ai : out_arcs[v]) {
      const int w = arcs[ai].to;
      if (w < root) continue;
      if (w == root) {
        path.push_back(ai);
        cycles.push_back(path);
        path.pop_back();
        if (cycles.size() >= cap) return;
      } else if (!on_path[w]) {
        on_path[w] = true;
        path.push_back(ai);
        self(self, root, w);
        path.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (int root = 0; root < n && cycles.size() < cap; ++root) {
    if (vertex_gone[root]) continue;
    on_path[root] = true;
    dfs(dfs, root, root);
    on_path[root] = false;
  }
  return cycles;
}

// One cycle of the remaining graph as arc indices, empty when acyclic.
inline std::vector<int> find_cycle(const DirectedGraph& g, const std::vector<bool>& arc_gone,
                                   const std::vector<bool>& vertex_gone) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> out_arcs(n);
  const auto& arcs = g.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    if (arc_gone[i] || vertex_gone[a.from] || vertex_gone[a.to]) continue;
    out_arcs[a.from].push_back(static_cast<int>(i));
  }
  std::vector<int> state(n, 0), via(n, -1);  // 0 new, 1 on stack, 2 done
  for (int s = 0; s < n; ++s) {
    if (state[s] != 0 || vertex_gone[s]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, k] = stack.back();
      if (k == out_arcs[v].size()) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      const int ai = out_arcs[v][k++];
      const int w = arcs[ai].to;
      if (state[w] == 1) {
        std::vector<int> cyc{ai};
        for (int u = v; u != w; u = arcs[via[u]].from) cyc.push_back(via[u]);
        std::reverse(cyc.begin(), cyc.end());
        return cyc;
      }
      if (state[w] == 0) {
        state[w] = 1;
        via[w] = ai;
        stack.emplace_back(w, 0);
      }
    }
  }
  return {};
}

inline void check_fas_input(const DirectedGraph& g) {
  if (g.has_self_loop())
    throw PreconditionError("feedback set: the graph has a self-loop");
}

inline std::vector<int> fas_ordering_dp(const DirectedGraph& g) {
  const int n = g.vertex_count();
  const auto& arcs = g.arcs();
  const std::uint32_t full = (1u << n) - 1;
  // Placing v right after S costs the weight of v's arcs into S, which then
  // point backwards.
  std::vector<double> best(std::size_t{1} << n, kInfiniteWeight);
  std::vector<int> choice(std::size_t{1} << n, -1);
  best[0] = 0;
  for (std::uint32_t s = 0; s < full; ++s) {
    if (best[s] == kInfiniteWeight) continue;
    for (int v = 0; v < n; ++v) {
      if (s >> v & 1u) continue;
      double cost = 0;
      for (const auto& a : arcs)
        if (a.from == v && (s >> a.to & 1u)) cost += a.weight;
      const std::uint32_t t = s | (1u << v);
      if (best[s] + cost < best[t]) {
        best[t] = best[s] + cost;
        choice[t] = v;
      }
    }
  }
  if (best[full] == kInfiniteWeight)
    throw PreconditionError("feedback arc set: every solution removes an infinite-weight arc");
  std::vector<int> position(n);
  std::uint32_t s = full;
  for (int k = n - 1; k >= 0; --k) {
    const int v = choice[s];
    position[v] = k;
    s &= ~(1u << v);
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (position[arcs[i].from] > position[arcs[i].to]) out.push_back(static_cast<int>(i));
  return out;
}

// Visits every k-subset of [0, m) in lexicographic order; stops when `f`
// returns true.
template <class F>
bool for_each_subset(int m, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (f(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

inline bool is_acyclic(const DirectedGraph& g) {
  return detail::acyclic_without(g, std::vector<bool>(g.arcs().size(), false),
                                 std::vector<bool>(g.vertex_count(), false));
}

inline constexpr int kExactFasArcLimit = 25;
inline constexpr int kExactFasVertexLimit = 12;

// Arc indices whose removal leaves g acyclic. Only finite-weight arcs are
// chosen. Exact minimises total weight (cardinality for unit weights).
inline std::vector<int> feedback_arc_set(const DirectedGraph& g, SolveMode mode) {
  detail::check_fas_input(g);
  const auto& arcs = g.arcs();
  std::vector<int> finite;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].weight != kInfiniteWeight) finite.push_back(static_cast<int>(i));
  const std::vector<bool> no_vertex(g.vertex_count(), false);

  if (mode == SolveMode::Exact) {
    const bool unit = std::all_of(finite.begin(), finite.end(),
                                  [&](int i) { return arcs[i].weight == 1.0; });
    if (g.vertex_count() <= kExactFasVertexLimit)
      return detail::fas_ordering_dp(g);
    if (!unit || static_cast<int>(finite.size()) > kExactFasArcLimit)
      throw OracleLimitError(
          "oracle size limit: exact feedback arc set needs <= " +
          std::to_string(kExactFasVertexLimit) + " vertices or <= " +
          std::to_string(kExactFasArcLimit) + " unit-weight arcs");
    const int m = static_cast<int>(finite.size());
    for (int k = 0; k <= m; ++k) {
      std::vector<int> found;
      const bool ok = detail::for_each_subset(m, k, [&](const std::vector<int>& idx) {
        std::vector<bool> gone(arcs.size(), false);
        for (int i : idx) gone[finite[i]] = true;
        if (!detail::acyclic_without(g, gone, no_vertex)) return false;
        for (int i : idx) found.push_back(finite[i]);
        return true;
      });
      if (ok) return found;
    }
    throw PreconditionError("feedback arc set: every solution removes an infinite-weight arc");
  }

  // Greedy: drop the finite arc lying on the most enumerated cycles.
  std::vector<bool> gone(arcs.size(), false);
  std::vector<int> out;
  while (!detail::acyclic_without(g, gone, no_vertex)) {
    auto cycles = detail::enumerate_cycles(g, gone, no_vertex, 2000);
    if (cycles.empty()) cycles.push_back(detail::find_cycle(g, gone, no_vertex));
    std::vector<double> score(arcs.size(), 0);
    for (const auto& c : cycles) {
      bool any = false;
      for (int ai : c)
        if (arcs[ai].weight != kInfiniteWeight) {
          score[ai] += 1.0 / arcs[ai].weight;
          any = true;
        }
      if (!any)
        throw PreconditionError(
            "feedback arc set: a cycle consists of infinite-weight arcs only");
    }
    int pick = -1;
    for (int i : finite)
      if (!gone[i] && score[i] > 0 && (pick < 0 || score[i] > score[pick])) pick = i;
    if (pick < 0)
      throw PreconditionError("feedback arc set: no removable arc on the remaining cycles");
    gone[pick] = true;
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr int kExactFvsVertexLimit = 25;

// Vertices whose removal leaves g acyclic. `removable[v]` false plays the
// role of an infinite vertex weight; empty means every vertex is removable.
inline std::vector<int> feedback_vertex_set(const DirectedGraph& g, SolveMode mode,
                                            std::vector<bool> removable = {}) {
  detail::check_fas_input(g);
  const int n = g.vertex_count();
  if (removable.empty()) removable.assign(n, true);
  std::vector<int> cand;
  for (int v = 0; v < n; ++v)
    if (removable[v]) cand.push_back(v);
  const std::vector<bool> no_arc(g.arcs().size(), false);

  if (mode == SolveMode::Exact) {
    if (n > kExactFvsVertexLimit)
      throw OracleLimitError("oracle size limit: exact feedback vertex set needs <= " +
                             std::to_string(kExactFvsVertexLimit) + " vertices");
    const int m = static_cast<int>(cand.size());
    for (int k = 0; k <= m; ++k) {
      std::vector<int> found;
      const bool ok = detail::for_each_subset(m, k, [&](const std::vector<int>& idx) {
        std::vector<bool> gone(n, false);
        for (int i : idx) gone[cand[i]] = true;
        if (!detail::acyclic_without(g, no_arc, gone)) return false;
        for (int i : idx) found.push_back(cand[i]);
        return true;
      });
      if (ok) return found;
    }
    throw PreconditionError("feedback vertex set: no solution avoids the fixed vertices");
  }

  std::vector<bool> gone(n, false);
  std::vector<int> out;
  while (!detail::acyclic_without(g, no_arc, gone)) {
    auto cycles = detail::enumerate_cycles(g, no_arc, gone, 2000);
    if (cycles.empty()) cycles.push_back(detail::find_cycle(g, no_arc, gone));
    std::vector<int> score(n, 0);
    for (const auto& c : cycles) {
      bool any = false;
      for (int ai : c) {
        const int v = g.arcs()[ai].from;
        if (removable[v]) {
          ++score[v];
          any = true;
        }
      }
      if (!any)
        throw PreconditionError("feedback vertex set: a cycle has no removable vertex");
    }
    int pick = -1;
    for (int v : cand)
      if (!gone[v] && score[v] > 0 && (pick < 0 || score[v] > score[pick])) pick = v;
    if (pick < 0)
      throw PreconditionError("feedback vertex set: no removable vertex on the remaining cycles");
    gone[pick] = true;
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// "u v" per line; blank lines and lines starting with '#' are skipped. The
// vertex count is one more than the largest index seen.
inline DirectedGraph read_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_v = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra) || u < 0 || v < 0)
      throw InstanceFormatError("edge list line " + std::to_string(line_no) +
                                ": expected two non-negative integers");
    edges.emplace_back(u, v);
    max_v = std::max({max_v, u, v});
  }
  DirectedGraph g(max_v + 1);
  for (auto [u, v] : edges) g.add_arc(u, v);
  return g;
}

inline DirectedGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceFormatError("cannot open graph file " + path);
  return read_edge_list(in);
}

}  // namespace matchprobe

#endif  // MATCHPROBE_GRAPH_HPP_
