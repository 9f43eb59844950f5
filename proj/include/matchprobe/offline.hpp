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

// Full-information computations: smallest certificates by search, the
// feedback-arc-set certifier, the linear set-query certifier and the
// hardness reductions.

#ifndef MATCHPROBE_OFFLINE_HPP_
#define MATCHPROBE_OFFLINE_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matchprobe/certify.hpp"
#include "matchprobe/core.hpp"
#include "matchprobe/graph.hpp"
#include "matchprobe/knowledge.hpp"
#include "matchprobe/oracles.hpp"
#include "matchprobe/rotations.hpp"
#include "matchprobe/stability.hpp"

namespace matchprobe {

struct CertificateProblem {
  QueryModel model = QueryModel::Comparison;
  CertTarget target = CertTarget::Stable;
  Instance instance;
  // None: certify some stable matching of the requested kind.
  std::optional<Matching> matching;
  // Overrides the default size cap and MATCHPROBE_ORACLE_LIMIT.
  std::optional<int> limit;
  // Set model only: allow just top(b, S) with M(b) ∈ S.
  bool restrict_set_universe = false;
};

struct Certificate {
  std::size_t size = 0;
  std::vector<Query> queries;
  Matching matching;
  KnowledgeState knowledge;
};

inline int default_oracle_limit(QueryModel model) {
  return model == QueryModel::Set ? 4 : 5;
}

// Explicit limit, else MATCHPROBE_ORACLE_LIMIT, else the model default.
inline int oracle_limit(QueryModel model, std::optional<int> explicit_limit = {}) {
  if (explicit_limit) return *explicit_limit;
  if (const char* env = std::getenv("MATCHPROBE_ORACLE_LIMIT")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw PreconditionError("MATCHPROBE_ORACLE_LIMIT is not an integer: " +
                              std::string(env));
    }
  }
  return default_oracle_limit(model);
}

// Replays queries against the realization.
inline KnowledgeState replay(const std::vector<Query>& queries, const Realization& truth) {
  RealizationSource src(truth);
  QueryOracle oracle(src);
  for (const auto& q : queries) {
    switch (q.model) {
      case QueryModel::Comparison: oracle.prefer(q.agent, q.payload[0], q.payload[1]); break;
      case QueryModel::Set: oracle.top(q.agent, q.payload); break;
      case QueryModel::Interview: oracle.interview(q.agent, q.payload[0]); break;
    }
  }
  return oracle.knowledge();
}

namespace detail {

// One way to spend queries on a single B agent.
struct LocalOption {
  std::size_t cost = 0;
  PartialOrder order;
  std::uint32_t below = 0;  // agents known to rank after M(b)
  std::uint32_t above = 0;  // agents known to rank before M(b)
  std::vector<Query> queries;
};

inline void project(LocalOption& o, int mb) {
  o.below = o.above = 0;
  for (int a = 0; a < o.order.size(); ++a) {
    if (o.order.entails(mb, a)) o.below |= 1u << a;
    if (o.order.entails(a, mb)) o.above |= 1u << a;
  }
}

// Every knowledge state for b reachable under `model`, with the fewest
// queries reaching it.
inline std::vector<LocalOption> local_options(QueryModel model, int b,
                                              const Realization& truth, int mb,
                                              bool restrict_sets) {
  const int n = truth.size();
  std::vector<LocalOption> out;
  if (model == QueryModel::Interview) {
    // Interviews reveal the true order on the interviewed set.
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      LocalOption o;
      o.order = PartialOrder(n);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if ((s >> x & 1u) && (s >> y & 1u) && truth.prefers(b, x, y) && x != y)
            o.order.add(x, y);
      for (int a = 0; a < n; ++a)
        if (s >> a & 1u) {
          o.queries.push_back({QueryModel::Interview, Side::B, b, {a}});
          ++o.cost;
        }
      project(o, mb);
      out.push_back(std::move(o));
    }
    return out;
  }

  std::vector<std::vector<int>> universe;
  if (model == QueryModel::Comparison) {
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) universe.push_back({x, y});
  } else {
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      if (std::popcount(s) < 2) continue;
      if (restrict_sets && !(s >> mb & 1u)) continue;
      std::vector<int> set;
      for (int a = 0; a < n; ++a)
        if (s >> a & 1u) set.push_back(a);
      universe.push_back(std::move(set));
    }
  }

  std::map<std::vector<std::uint64_t>, std::size_t> index;
  LocalOption start;
  start.order = PartialOrder(n);
  index.emplace(start.order.signature(), 0);
  out.push_back(std::move(start));
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& q : universe) {
      PartialOrder next = out[head].order;
      bool gained = false;
      if (model == QueryModel::Comparison) {
        const bool x_first = truth.prefers(b, q[0], q[1]);
        gained = x_first ? next.add(q[0], q[1]) : next.add(q[1], q[0]);
      } else {
        int best = q[0];
        for (int v : q)
          if (truth.rank(b, v) < truth.rank(b, best)) best = v;
        for (int v : q)
          if (v != best) gained |= next.add(best, v);
      }
      if (!gained) continue;
      auto sig = next.signature();
      if (index.count(sig)) continue;
      LocalOption o;
      o.cost = out[head].cost + 1;
      o.order = std::move(next);
      o.queries = out[head].queries;
      o.queries.push_back({model, Side::B, b, q});
      index.emplace(std::move(sig), out.size());
      out.push_back(std::move(o));
    }
  }
  for (auto& o : out) project(o, mb);
  return out;
}

// Keeps only options not dominated by a cheaper or equal one with at least
// the same information. `full` compares whole orders; otherwise only the
// relations with M(b).
inline std::vector<LocalOption> pareto(std::vector<LocalOption> opts, bool full) {
  std::stable_sort(opts.begin(), opts.end(),
                   [](const LocalOption& l, const LocalOption& r) { return l.cost < r.cost; });
  std::vector<LocalOption> keep;
  for (auto& o : opts) {
    bool dominated = false;
    for (const auto& k : keep) {
      const bool covers = full ? o.order.is_subset_of(k.order)
                               : ((o.below & ~k.below) == 0 && (o.above & ~k.above) == 0);
      if (covers) {
        dominated = true;
        break;
      }
    }
    if (!dominated) keep.push_back(std::move(o));
  }
  return keep;
}

// Relations with M(b) only; enough for the stability and rotation checks.
struct ProjectedKnowledge {
  const Matching* m = nullptr;
  std::vector<std::uint32_t> below, above;

  bool entails(int b, int x, int y) const {
    const int mb = m->partner_of_b(b);
    if (x == mb) return below[b] >> y & 1u;
    if (y == mb) return above[b] >> x & 1u;
    return false;
  }
};

inline Certificate search_certificate(const CertificateProblem& p, const Matching& m) {
  const auto& profile = p.instance.profile;
  const auto& truth = p.instance.hidden();
  const int n = profile.size();
  const bool full = p.target == CertTarget::StableAOptimal;

  std::vector<std::vector<LocalOption>> options(n);
  for (int b = 0; b < n; ++b) {
    const int mb = m.partner_of_b(b);
    std::uint32_t need = 0;
    for (int a : potential_blockers(profile, m, b)) need |= 1u << a;
    auto all = local_options(p.model, b, truth, mb, p.restrict_set_universe);
    std::erase_if(all, [&](const LocalOption& o) { return (o.below & need) != need; });
    options[b] = pareto(std::move(all), full);
    if (options[b].empty())
      throw std::logic_error("certificate search: no option settles b_" + std::to_string(b));
  }

  std::vector<std::size_t> suffix_min(n + 1, 0), suffix_max(n + 1, 0);
  for (int b = n - 1; b >= 0; --b) {
    suffix_min[b] = suffix_min[b + 1] + options[b].front().cost;
    suffix_max[b] = suffix_max[b + 1] + options[b].back().cost;
  }

  std::vector<std::size_t> pick(n, 0);
  ProjectedKnowledge proj{&m, std::vector<std::uint32_t>(n), std::vector<std::uint32_t>(n)};
  auto accept = [&] {
    if (p.target == CertTarget::Stable) return true;  // enforced per b already
    for (int b = 0; b < n; ++b) {
      proj.below[b] = options[b][pick[b]].below;
      proj.above[b] = options[b][pick[b]].above;
    }
    if (p.target == CertTarget::StableBOptimal) return certifies_b_optimal(proj, profile, m);
    KnowledgeState k(n);
    for (int b = 0; b < n; ++b) k.order(b) = options[b][pick[b]].order;
    return certifies_semantic(k, profile, m, p.target, n);
  };
  auto dfs = [&](auto&& self, int b, std::size_t budget) -> bool {
    if (b == n) return accept();
    for (std::size_t i = 0; i < options[b].size(); ++i) {
      const std::size_t c = options[b][i].cost;
      if (c + suffix_min[b + 1] > budget) break;  // sorted by cost
      pick[b] = i;
      if (self(self, b + 1, budget - c)) return true;
    }
    return false;
  };
  for (std::size_t k = suffix_min[0]; k <= suffix_max[0]; ++k) {
    if (!dfs(dfs, 0, k)) continue;
    Certificate c;
    c.matching = m;
    for (int b = 0; b < n; ++b)
      for (const auto& q : options[b][pick[b]].queries) c.queries.push_back(q);
    c.size = c.queries.size();
    c.knowledge = replay(c.queries, truth);
    return c;
  }
  throw std::logic_error("certificate search: full information does not certify");
}

inline void check_truth(const CertificateProblem& p, const Matching& m) {
  const Instance& inst = p.instance;
  if (!is_stable(inst, m))
    throw PreconditionError("min_certificate: the matching is not stable under the realization");
  if (p.target == CertTarget::StableBOptimal && !(m == b_optimal_matching(inst)))
    throw PreconditionError("min_certificate: the matching is not B-optimal");
  if (p.target == CertTarget::StableAOptimal && !(m == a_optimal_matching(inst)))
    throw PreconditionError("min_certificate: the matching is not A-optimal");
}

}  // namespace detail

// Smallest query set whose true answers certify the target. Iterative
// deepening over the total size, choosing one knowledge state per B agent.
inline Certificate min_certificate(const CertificateProblem& p) {
  const Instance& inst = p.instance;
  inst.validate();
  inst.hidden();
  const int n = inst.size();
  const int limit = oracle_limit(p.model, p.limit);
  if (n > limit)
    throw OracleLimitError("oracle size limit: brute-force certificates support n <= " +
                           std::to_string(limit) + " in the " + model_name(p.model) +
                           " model, got n = " + std::to_string(n));
  if (p.matching) {
    detail::check_truth(p, *p.matching);
    return detail::search_certificate(p, *p.matching);
  }
  switch (p.target) {
    case CertTarget::StableBOptimal:
      return detail::search_certificate(p, b_optimal_matching(inst));
    case CertTarget::StableAOptimal:
      return detail::search_certificate(p, a_optimal_matching(inst));
    case CertTarget::Stable: break;
  }
  std::optional<Certificate> best;
  for (const auto& m : enumerate_stable_matchings(inst.profile, inst.hidden())) {
    auto c = detail::search_certificate(p, m);
    if (!best || c.size < best->size) best = std::move(c);
  }
  return *best;
}

struct OfflineCertificate {
  std::vector<Query> queries;
  KnowledgeState knowledge;
  std::size_t stability_queries = 0;
  std::size_t confirming_queries = 0;
  std::size_t refuting_queries = 0;

  std::size_t size() const { return queries.size(); }
};

namespace detail {

inline void require_b_optimal(const Instance& inst, const Matching& m) {
  if (!is_stable(inst, m))
    throw PreconditionError("offline certifier: the matching is not stable");
  if (!exposed_rotations(inst, m).empty())
    throw PreconditionError("offline certifier: the matching exposes a rotation");
}

}  // namespace detail

// Stability queries, one confirmation per r-edge, then one refutation per
// arc of a feedback arc set over the remaining potential r-edges.
inline OfflineCertificate certify_b_optimal_approx_comparison(
    const Instance& inst, const Matching& m, SolveMode fas_mode = SolveMode::Exact) {
  detail::require_b_optimal(inst, m);
  const auto& profile = inst.profile;
  const int n = profile.size();
  RealizationSource src(inst.hidden());
  QueryOracle oracle(src);
  OfflineCertificate out;

  for (int a = 0; a < n; ++a) {
    const auto list = profile.list(a);
    for (int pos = 0; pos < profile.rank(a, m.partner_of_a(a)); ++pos) {
      const int b = list[pos];
      oracle.prefer(b, a, m.partner_of_b(b));
    }
  }
  out.stability_queries = oracle.total();

  const auto edges = r_edges(profile, inst.hidden(), m);
  for (int a = 0; a < n; ++a)
    if (edges[a] >= 0) oracle.prefer(edges[a], a, m.partner_of_b(edges[a]));
  out.confirming_queries = oracle.total() - out.stability_queries;

  // Vertices: a_i = i, b_j = n + j. Matching arcs point B to A.
  DirectedGraph g(2 * n);
  for (int a = 0; a < n; ++a) g.add_arc(n + m.partner_of_a(a), a, kInfiniteWeight);
  const auto cg = candidate_graph(profile, m, oracle.knowledge());
  for (const auto& arc : cg.arcs()) {
    if (arc.refuted) continue;
    if (edges[arc.a] == arc.b) {
      g.add_arc(arc.a, n + arc.b, kInfiniteWeight);
    } else {
      g.add_arc(arc.a, n + arc.b, 1.0);
    }
  }
  for (int idx : feedback_arc_set(g, fas_mode)) {
    const auto& arc = g.arcs()[idx];
    const int a = arc.from, b = arc.to - n;
    oracle.prefer(b, a, m.partner_of_b(b));
  }
  out.refuting_queries = oracle.total() - out.stability_queries - out.confirming_queries;
  out.queries.reserve(oracle.total());
  for (const auto& e : oracle.transcript().entries()) out.queries.push_back(e.query);
  out.knowledge = oracle.knowledge();
  return out;
}

// P(b) = {a : M(a) ≺_a b and M(b) ≺_b a}.
inline std::vector<int> refutable_set(const Instance& inst, const Matching& m, int b) {
  std::vector<int> out;
  const int mb = m.partner_of_b(b);
  for (int a = 0; a < inst.size(); ++a) {
    if (a == mb) continue;
    if (inst.profile.prefers(a, m.partner_of_a(a), b) && inst.hidden().prefers(b, mb, a))
      out.push_back(a);
  }
  return out;
}

// At most n stability queries, n refuting queries top(b, P(b) ∪ {M(b)}) and
// n confirmations top(r(a), {a, M(r(a))}).
inline OfflineCertificate certify_b_optimal_offline_set(const Instance& inst,
                                                        const Matching& m) {
  detail::require_b_optimal(inst, m);
  const auto& profile = inst.profile;
  const int n = profile.size();
  RealizationSource src(inst.hidden());
  QueryOracle oracle(src);
  OfflineCertificate out;
  for (int b = 0; b < n; ++b) {
    auto s = potential_blockers(profile, m, b);
    if (s.empty()) continue;
    s.push_back(m.partner_of_b(b));
    oracle.top(b, s);
  }
  out.stability_queries = oracle.total();
  for (int b = 0; b < n; ++b) {
    auto s = refutable_set(inst, m, b);
    if (s.empty()) continue;
    s.push_back(m.partner_of_b(b));
    oracle.top(b, s);
  }
  out.refuting_queries = oracle.total() - out.stability_queries;
  const auto edges = r_edges(profile, inst.hidden(), m);
  for (int a = 0; a < n; ++a)
    if (edges[a] >= 0) oracle.top(edges[a], {a, m.partner_of_b(edges[a])});
  out.confirming_queries = oracle.total() - out.stability_queries - out.refuting_queries;
  for (const auto& e : oracle.transcript().entries()) out.queries.push_back(e.query);
  out.knowledge = oracle.knowledge();
  return out;
}

namespace detail {

inline std::vector<std::vector<int>> simple_out_neighbors(const DirectedGraph& g) {
  if (g.has_self_loop()) throw PreconditionError("reduction: the graph has a self-loop");
  return g.out_neighbors();
}

// v lists every w' outside N⁺(v) ∪ {v'} first, then v', then N⁺(v)'.
inline std::vector<std::vector<int>> reduction_a_rows(const std::vector<std::vector<int>>& out) {
  const int n = static_cast<int>(out.size());
  std::vector<std::vector<int>> rows(n);
  for (int v = 0; v < n; ++v) {
    const auto& nb = out[v];
    for (int w = 0; w < n; ++w)
      if (w != v && !std::binary_search(nb.begin(), nb.end(), w)) rows[v].push_back(w);
    rows[v].push_back(v);
    for (int u : nb) rows[v].push_back(u);
  }
  return rows;
}

// v' ranks v first, then the rest by index.
inline std::vector<std::vector<int>> reduction_b_rows(int n) {
  std::vector<std::vector<int>> rows(n);
  for (int v = 0; v < n; ++v) {
    rows[v].push_back(v);
    for (int w = 0; w < n; ++w)
      if (w != v) rows[v].push_back(w);
  }
  return rows;
}

}  // namespace detail

// Vertex v becomes a_v and b_v = v'; M = {(a_v, b_v)}.
inline Instance gen_fas_reduction(const DirectedGraph& g) {
  const auto out = detail::simple_out_neighbors(g);
  const int n = g.vertex_count();
  return Instance{PreferenceProfile(detail::reduction_a_rows(out), "a_prefs"),
                  Realization(detail::reduction_b_rows(n), "b_prefs"),
                  Matching::identity(n), "fas-reduction"};
}

// Same lists: b_v = M(a_v) ranks a_v first, and a_v places M(a_u) after
// M(a_v) exactly for the arcs (v, u).
inline Instance gen_fvs_reduction(const DirectedGraph& g) {
  auto inst = gen_fas_reduction(g);
  inst.label = "fvs-reduction";
  return inst;
}

// The comparison reduction plus z = a_n and z' = b_n. Every other A agent
// puts z' first; every other B agent puts z last.
inline Instance gen_interview_hardness(const DirectedGraph& g) {
  const auto out = detail::simple_out_neighbors(g);
  const int n = g.vertex_count();
  auto a_rows = detail::reduction_a_rows(out);
  auto b_rows = detail::reduction_b_rows(n);
  for (auto& row : a_rows) row.insert(row.begin(), n);
  for (auto& row : b_rows) row.push_back(n);
  std::vector<int> z_row, zp_row{n};
  for (int v = 0; v < n; ++v) {
    z_row.push_back(v);
    zp_row.push_back(v);
  }
  z_row.push_back(n);
  a_rows.push_back(std::move(z_row));
  b_rows.push_back(std::move(zp_row));
  return Instance{PreferenceProfile(std::move(a_rows), "a_prefs"),
                  Realization(std::move(b_rows), "b_prefs"), Matching::identity(n + 1),
                  "interview-hardness"};
}

}  // namespace matchprobe

#endif  // MATCHPROBE_OFFLINE_HPP_
