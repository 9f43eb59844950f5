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

// Online algorithms that find A-optimal or B-optimal stable matchings while
// the B side is hidden behind a query oracle.

#ifndef MATCHPROBE_SOLVE_HPP_
#define MATCHPROBE_SOLVE_HPP_

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "matchprobe/core.hpp"
#include "matchprobe/oracles.hpp"
#include "matchprobe/rotations.hpp"
#include "matchprobe/stability.hpp"

namespace matchprobe {

// Accounting for the rotation search. Step 2 covers every query after the
// initial A-optimal run.
struct RotationSearchStats {
  std::size_t step1_queries = 0;
  std::size_t step2_queries = 0;
  // First query for a given (a, p(a)) combination; repeats are bad.
  std::size_t good_queries = 0;
  std::size_t bad_queries = 0;
  std::size_t rotations_applied = 0;
  // Emulated comparisons (equals the query count in the comparison model).
  std::size_t comparisons = 0;
};

struct SolveResult {
  Matching matching;
  QueryModel model = QueryModel::Comparison;
  QueryTranscript transcript;
  KnowledgeState knowledge;
  // Per b: proposals received during the A-proposing run, when one ran.
  std::vector<int> proposals_received;
  RotationSearchStats stats;

  std::size_t queries() const { return transcript.size(); }

  nlohmann::json to_json() const {
    return {{"matching", matching.pairs()},
            {"queries", queries()},
            {"model", model_name(model)}};
  }
};

namespace detail {

inline SolveResult finish(const QueryOracle& oracle, QueryModel model, Matching m) {
  SolveResult r;
  r.matching = std::move(m);
  r.model = model;
  r.transcript = oracle.transcript();
  r.knowledge = oracle.knowledge();
  return r;
}

// prefer(b, x, y) through interviews, skipping agents b has already seen.
inline int interview_compare(QueryOracle& oracle, int b, int x, int y) {
  if (!oracle.interviewed(b, x)) oracle.interview(b, x);
  if (!oracle.interviewed(b, y)) oracle.interview(b, y);
  return oracle.knowledge().entails(b, x, y) ? x : y;
}

// Rotation search from the A-optimal matching. `compare(b, x, y)` returns
// the agent b prefers; `queries()` reports the oracle's running total.
template <class Compare, class Count>
Matching rotation_search(const PreferenceProfile& profile, Matching m,
                         Compare&& compare, Count&& queries,
                         RotationSearchStats& stats) {
  const int n = profile.size();
  const int last = n - 1;
  std::vector<bool> none(n, false);  // N: known to have no r-edge
  std::vector<int> probe(n, 0);      // p(a), as a position in a's list
  std::vector<int> found(n, -1);     // r(a), -1 while unknown
  std::set<std::pair<int, int>> seen;
  const std::size_t start = queries();

  auto restart_below_partner = [&](int a) {
    const int pos = profile.rank(a, m.partner_of_a(a));
    if (pos == last) {
      none[a] = true;
    } else {
      probe[a] = pos + 1;
      found[a] = -1;
    }
  };
  for (int a = 0; a < n; ++a) restart_below_partner(a);

  while (true) {
    for (int a = 0; a < n; ++a) {
      while (!none[a] && found[a] < 0) {
        const int b = profile.at(a, probe[a]);
        const int mb = m.partner_of_b(b);
        ++stats.comparisons;
        if (seen.emplace(a, b).second)
          ++stats.good_queries;
        else
          ++stats.bad_queries;
        if (compare(b, a, mb) == mb) {
          if (probe[a] == last)
            none[a] = true;
          else
            ++probe[a];
        } else {
          found[a] = b;
        }
      }
    }
    std::vector<int> edge(n, -1);
    for (int a = 0; a < n; ++a)
      if (!none[a]) edge[a] = found[a];
    const auto rotations = rotations_from_edges(m, edge);
    if (rotations.empty()) break;

    // The rotation through the lowest A index.
    const Rotation& r = rotations.front();
    m = apply_rotation_unchecked(m, r);
    ++stats.rotations_applied;
    std::vector<bool> on_cycle(n, false);
    for (auto [a, b] : r.pairs) on_cycle[a] = true;
    for (int a = 0; a < n; ++a) {
      if (on_cycle[a]) {
        restart_below_partner(a);
      } else if (!none[a]) {
        probe[a] = profile.rank(a, found[a]);
        found[a] = -1;
      }
    }
  }
  stats.step2_queries = queries() - start;
  return m;
}

}  // namespace detail

// Deferred acceptance with A proposing; one comparison per contested
// proposal.
inline SolveResult find_a_optimal_comparison(const PreferenceProfile& profile,
                                             AnswerSource& source) {
  QueryOracle oracle(source);
  auto run = run_deferred_acceptance(profile, [&](int b, int x, int y) {
    return oracle.prefer(b, x, y);
  });
  auto r = detail::finish(oracle, QueryModel::Comparison, Matching(run.partner));
  r.proposals_received = std::move(run.proposals_received);
  r.stats.step1_queries = r.queries();
  return r;
}

// Σ_b (proposals received − 1).
inline std::size_t sum_extra_proposals(const std::vector<int>& received) {
  std::size_t total = 0;
  for (int k : received)
    if (k > 0) total += static_cast<std::size_t>(k - 1);
  return total;
}

// Identical A lists: B agents choose in the common order, each taking its
// favourite among the A agents still free.
inline SolveResult find_stable_equal_prefs(const PreferenceProfile& profile,
                                           AnswerSource& source) {
  const int n = profile.size();
  for (int a = 1; a < n; ++a)
    if (profile.rows()[a] != profile.rows()[0])
      throw PreconditionError("find_stable_equal_prefs: A-side lists differ (row " +
                              std::to_string(a) + ")");
  QueryOracle oracle(source);
  std::vector<int> free_a(n);
  for (int a = 0; a < n; ++a) free_a[a] = a;
  std::vector<int> partner(n, -1);
  for (int b : profile.list(0)) {
    int best = free_a.front();
    for (std::size_t k = 1; k < free_a.size(); ++k)
      best = oracle.prefer(b, best, free_a[k]);
    partner[best] = b;
    std::erase(free_a, best);
  }
  return detail::finish(oracle, QueryModel::Comparison, Matching(std::move(partner)));
}

// A-optimal first, then repeated rotation search until no rotation remains.
inline SolveResult find_b_optimal_comparison(const PreferenceProfile& profile,
                                             AnswerSource& source) {
  QueryOracle oracle(source);
  auto run = run_deferred_acceptance(profile, [&](int b, int x, int y) {
    return oracle.prefer(b, x, y);
  });
  RotationSearchStats stats;
  stats.step1_queries = oracle.total();
  stats.comparisons = run.comparisons;
  Matching m = detail::rotation_search(
      profile, Matching(run.partner),
      [&](int b, int x, int y) { return oracle.prefer(b, x, y); },
      [&] { return oracle.total(); }, stats);
  auto r = detail::finish(oracle, QueryModel::Comparison, std::move(m));
  r.proposals_received = std::move(run.proposals_received);
  r.stats = stats;
  return r;
}

inline SolveResult find_a_optimal_interview(const PreferenceProfile& profile,
                                            AnswerSource& source) {
  QueryOracle oracle(source);
  auto run = run_deferred_acceptance(profile, [&](int b, int x, int y) {
    return detail::interview_compare(oracle, b, x, y);
  });
  auto r = detail::finish(oracle, QueryModel::Interview, Matching(run.partner));
  r.proposals_received = std::move(run.proposals_received);
  r.stats.step1_queries = r.queries();
  return r;
}

// Q_b(M) = 1 + |Z(b)| when b has potential blockers, else 0.
inline std::size_t interview_cost(const PreferenceProfile& profile,
                                  const Matching& m) {
  std::size_t total = 0;
  for (int b = 0; b < profile.size(); ++b) {
    const auto z = potential_blockers(profile, m, b);
    if (!z.empty()) total += 1 + z.size();
  }
  return total;
}

// The comparison algorithm with every comparison emulated by at most two
// interviews; one interview cache is shared by both phases.
inline SolveResult find_b_optimal_interview(const PreferenceProfile& profile,
                                            AnswerSource& source) {
  QueryOracle oracle(source);
  auto compare = [&](int b, int x, int y) {
    return detail::interview_compare(oracle, b, x, y);
  };
  auto run = run_deferred_acceptance(profile, compare);
  RotationSearchStats stats;
  stats.step1_queries = oracle.total();
  stats.comparisons = run.comparisons;
  Matching m = detail::rotation_search(profile, Matching(run.partner), compare,
                                       [&] { return oracle.total(); }, stats);
  auto r = detail::finish(oracle, QueryModel::Interview, std::move(m));
  r.proposals_received = std::move(run.proposals_received);
  r.stats = stats;
  return r;
}

// Selection sort of every B list with n set queries each, then the
// full-information B-optimal matching.
inline SolveResult find_b_optimal_set(const PreferenceProfile& profile,
                                      AnswerSource& source) {
  const int n = profile.size();
  QueryOracle oracle(source);
  std::vector<std::vector<int>> rows(n);
  for (int b = 0; b < n; ++b) {
    std::vector<int> remaining(n);
    for (int a = 0; a < n; ++a) remaining[a] = a;
    while (!remaining.empty()) {
      const int t = oracle.top(b, remaining);
      rows[b].push_back(t);
      std::erase(remaining, t);
    }
  }
  Matching m = b_optimal_matching(profile, Realization(std::move(rows), "b_prefs"));
  return detail::finish(oracle, QueryModel::Set, std::move(m));
}

}  // namespace matchprobe

#endif  // MATCHPROBE_SOLVE_HPP_
