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

// Rotation edges, exposed rotations and the candidate digraph used to certify
// that a matching exposes no rotation.
//
// For a stable M, the r-edge of a is the first b below M(a) in a's list that
// prefers a to M(b). Following a -> M(r(a)) gives a functional graph on A;
// its cycles are exactly the exposed rotations.

#ifndef MATCHPROBE_ROTATIONS_HPP_
#define MATCHPROBE_ROTATIONS_HPP_

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "matchprobe/core.hpp"
#include "matchprobe/knowledge.hpp"
#include "matchprobe/stability.hpp"

namespace matchprobe {

struct Rotation {
  // Matched pairs (a, M(a)) in cycle order; pair k+1 holds next_A(a_k).
  std::vector<std::pair<int, int>> pairs;

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

inline std::string to_string(const Rotation& r) {
  std::ostringstream out;
  out << "[";
  for (std::size_t k = 0; k < r.pairs.size(); ++k) {
    if (k) out << ",";
    out << "(a_" << r.pairs[k].first << ",b_" << r.pairs[k].second << ")";
  }
  out << "]";
  return out.str();
}

inline std::optional<int> r_edge(const PreferenceProfile& profile,
                                 const Realization& realization,
                                 const Matching& m, int a) {
  const auto list = profile.list(a);
  for (int pos = profile.rank(a, m.partner_of_a(a)) + 1;
       pos < static_cast<int>(list.size()); ++pos) {
    const int b = list[pos];
    if (realization.prefers(b, a, m.partner_of_b(b))) return b;
  }
  return std::nullopt;
}

inline std::optional<AgentId> r_edge(const Instance& inst, const Matching& m,
                                     AgentId a) {
  if (a.side != Side::A) throw PreconditionError("r_edge expects an A agent");
  auto b = r_edge(inst.profile, inst.hidden(), m, a.index);
  if (!b) return std::nullopt;
  return AgentId::b(*b);
}

// Cycles of a -> M(edge[a]) where edge[a] < 0 means "no edge". Each cycle is
// reported starting from its lowest A index; cycles are ordered by that index.
inline std::vector<Rotation> rotations_from_edges(const Matching& m,
                                                  const std::vector<int>& edge) {
  const int n = m.size();
  auto next = [&](int a) { return edge[a] < 0 ? -1 : m.partner_of_b(edge[a]); };
  // 0 = unvisited, 1 = on current walk, 2 = done.
  std::vector<int> color(n, 0);
  std::vector<Rotation> found;
  for (int start = 0; start < n; ++start) {
    if (color[start]) continue;
    std::vector<int> walk;
    int v = start;
    while (v >= 0 && color[v] == 0) {
      color[v] = 1;
      walk.push_back(v);
      v = next(v);
    }
    if (v >= 0 && color[v] == 1) {
      auto it = std::find(walk.begin(), walk.end(), v);
      std::vector<int> cycle(it, walk.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()),
                  cycle.end());
      Rotation r;
      for (int a : cycle) r.pairs.emplace_back(a, m.partner_of_a(a));
      found.push_back(std::move(r));
    }
    for (int w : walk) color[w] = 2;
  }
  std::sort(found.begin(), found.end(), [](const Rotation& x, const Rotation& y) {
    return x.pairs.front().first < y.pairs.front().first;
  });
  return found;
}

inline std::vector<int> r_edges(const PreferenceProfile& profile,
                                const Realization& realization,
                                const Matching& m) {
  std::vector<int> edge(profile.size(), -1);
  for (int a = 0; a < profile.size(); ++a)
    if (auto b = r_edge(profile, realization, m, a)) edge[a] = *b;
  return edge;
}

inline std::vector<Rotation> exposed_rotations(const PreferenceProfile& profile,
                                               const Realization& realization,
                                               const Matching& m) {
  return rotations_from_edges(m, r_edges(profile, realization, m));
}

inline std::vector<Rotation> exposed_rotations(const Instance& inst,
                                               const Matching& m) {
  return exposed_rotations(inst.profile, inst.hidden(), m);
}

// Each a on the rotation moves to the B partner of its successor.
inline Matching apply_rotation_unchecked(const Matching& m, const Rotation& r) {
  std::vector<int> pairs = m.pairs();
  const std::size_t len = r.pairs.size();
  for (std::size_t k = 0; k < len; ++k)
    pairs[r.pairs[k].first] = r.pairs[(k + 1) % len].second;
  return Matching(std::move(pairs));
}

inline Matching apply_rotation(const Instance& inst, const Matching& m,
                               const Rotation& r) {
  const auto exposed = exposed_rotations(inst, m);
  if (std::find(exposed.begin(), exposed.end(), r) == exposed.end())
    throw PreconditionError("apply_rotation: " + to_string(r) +
                            " is not exposed in " + to_string(m));
  return apply_rotation_unchecked(m, r);
}

// Candidate arc a -> b for a potential r-edge (b below M(a) in a's list).
struct CandidateArc {
  int a = 0;
  int b = 0;
  bool refuted = false;
};

// Vertices: A agents are 0..n-1, B agents n..2n-1. Matching arcs run
// b -> M(b); unrefuted candidate arcs run a -> b, so every cycle alternates.
class RotationCandidateGraph {
 public:
  RotationCandidateGraph(Matching m, std::vector<CandidateArc> arcs)
      : m_(std::move(m)), arcs_(std::move(arcs)) {}

  int size() const { return m_.size(); }
  const Matching& matching() const { return m_; }
  const std::vector<CandidateArc>& arcs() const { return arcs_; }

  std::size_t unrefuted_count() const {
    return static_cast<std::size_t>(std::count_if(
        arcs_.begin(), arcs_.end(), [](const CandidateArc& c) { return !c.refuted; }));
  }

  bool is_acyclic() const { return !find_cycle().has_value(); }

  // Some alternating cycle, as the A agents on it in order.
  std::optional<std::vector<int>> find_cycle() const {
    const int n = size();
    std::vector<std::vector<int>> out(n);
    for (const auto& c : arcs_)
      if (!c.refuted) out[c.a].push_back(m_.partner_of_b(c.b));
    // Iterative DFS with colouring over the contracted A-level graph.
    std::vector<int> color(n, 0), parent(n, -1);
    std::vector<std::size_t> cursor(n, 0);
    for (int root = 0; root < n; ++root) {
      if (color[root]) continue;
      std::vector<int> stack{root};
      color[root] = 1;
      while (!stack.empty()) {
        const int v = stack.back();
        if (cursor[v] < out[v].size()) {
          const int w = out[v][cursor[v]++];
          if (color[w] == 0) {
            color[w] = 1;
            parent[w] = v;
            stack.push_back(w);
          } else if (color[w] == 1) {
            std::vector<int> cycle{w};
            for (int u = v; u != w; u = parent[u]) cycle.push_back(u);
            std::reverse(cycle.begin() + 1, cycle.end());
            return cycle;
          }
        } else {
          color[v] = 2;
          stack.pop_back();
        }
      }
    }
    return std::nullopt;
  }

  // Graphviz rendering; candidate arcs are labelled refuted/unrefuted.
  std::string to_dot() const {
    std::ostringstream out;
    out << "digraph candidates {\n";
    for (int i = 0; i < size(); ++i)
      out << "  b_" << i << " -> a_" << m_.partner_of_b(i)
          << " [label=\"matched\", style=bold];\n";
    for (const auto& c : arcs_)
      out << "  a_" << c.a << " -> b_" << c.b << " [label=\""
          << (c.refuted ? "refuted" : "unrefuted") << "\""
          << (c.refuted ? ", style=dashed" : "") << "];\n";
    out << "}\n";
    return out.str();
  }

 private:
  Matching m_;
  std::vector<CandidateArc> arcs_;
};

// A candidate (a, b) is refuted when M(b) ≺_b a is known, or when some b'
// strictly between M(a) and b in a's list is known to prefer a to M(b').
template <EntailmentSource K>
RotationCandidateGraph candidate_graph(const PreferenceProfile& profile,
                                       const Matching& m, const K& knowledge) {
  std::vector<CandidateArc> arcs;
  for (int a = 0; a < profile.size(); ++a) {
    const auto list = profile.list(a);
    bool confirmed_above = false;
    for (int pos = profile.rank(a, m.partner_of_a(a)) + 1;
         pos < static_cast<int>(list.size()); ++pos) {
      const int b = list[pos];
      const int mb = m.partner_of_b(b);
      const bool refuted = confirmed_above || knowledge.entails(b, mb, a);
      arcs.push_back({a, b, refuted});
      if (knowledge.entails(b, a, mb)) confirmed_above = true;
    }
  }
  return RotationCandidateGraph(m, std::move(arcs));
}

inline bool is_acyclic(const RotationCandidateGraph& g) { return g.is_acyclic(); }

}  // namespace matchprobe

#endif  // MATCHPROBE_ROTATIONS_HPP_
