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

// Full-information stable matching: blocking pairs, deferred acceptance and
// exhaustive enumeration for small instances.

#ifndef MATCHPROBE_STABILITY_HPP_
#define MATCHPROBE_STABILITY_HPP_

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "matchprobe/core.hpp"

namespace matchprobe {

inline bool is_blocking_pair(const PreferenceProfile& profile,
                             const Realization& realization, const Matching& m,
                             int a, int b) {
  if (m.contains(a, b)) return false;
  return profile.prefers(a, b, m.partner_of_a(a)) &&
         realization.prefers(b, a, m.partner_of_b(b));
}

inline bool is_blocking_pair(const Instance& inst, const Matching& m, AgentId a,
                             AgentId b) {
  if (a.side != Side::A || b.side != Side::B)
    throw PreconditionError("is_blocking_pair expects (A agent, B agent)");
  return is_blocking_pair(inst.profile, inst.hidden(), m, a.index, b.index);
}

inline std::optional<std::pair<int, int>> find_blocking_pair(
    const PreferenceProfile& profile, const Realization& realization,
    const Matching& m) {
  const int n = profile.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (is_blocking_pair(profile, realization, m, a, b))
        return std::pair{a, b};
  return std::nullopt;
}

inline bool is_stable(const PreferenceProfile& profile,
                      const Realization& realization, const Matching& m) {
  return !find_blocking_pair(profile, realization, m).has_value();
}

inline bool is_stable(const Instance& inst, const Matching& m) {
  return is_stable(inst.profile, inst.hidden(), m);
}

// Outcome of a deferred-acceptance run with `proposers` proposing.
struct ProposalRun {
  // partner[p] = receiver matched to proposer p.
  std::vector<int> partner;
  // proposals_received[r] = number of proposals receiver r got.
  std::vector<int> proposals_received;
  std::size_t comparisons = 0;
};

// Deferred acceptance. The lowest-index free proposer moves first. `prefer(r,
// x, y)` returns whichever of proposers x, y receiver r prefers; it is called
// once per proposal to an already-held receiver.
template <class Prefer>
ProposalRun run_deferred_acceptance(const PreferenceTable& proposers,
                                    Prefer&& prefer) {
  const int n = proposers.size();
  ProposalRun run;
  run.partner.assign(n, -1);
  run.proposals_received.assign(n, 0);
  std::vector<int> holder(n, -1);
  std::vector<int> next(n, 0);
  std::set<int> free;
  for (int p = 0; p < n; ++p) free.insert(p);

  while (!free.empty()) {
    const int p = *free.begin();
    if (next[p] >= n)
      throw PreconditionError("deferred acceptance: proposer exhausted list");
    const int r = proposers.at(p, next[p]++);
    ++run.proposals_received[r];
    if (holder[r] < 0) {
      holder[r] = p;
      free.erase(p);
      continue;
    }
    ++run.comparisons;
    const int current = holder[r];
    if (prefer(r, p, current) == p) {
      holder[r] = p;
      free.erase(p);
      free.insert(current);
    }
  }
  for (int r = 0; r < n; ++r) run.partner[holder[r]] = r;
  return run;
}

inline Matching a_optimal_matching(const PreferenceProfile& profile,
                                   const Realization& realization) {
  auto run = run_deferred_acceptance(profile, [&](int b, int x, int y) {
    return realization.prefers(b, x, y) ? x : y;
  });
  return Matching(std::move(run.partner));
}

inline Matching b_optimal_matching(const PreferenceProfile& profile,
                                   const Realization& realization) {
  auto run = run_deferred_acceptance(realization, [&](int a, int x, int y) {
    return profile.prefers(a, x, y) ? x : y;
  });
  // run.partner maps B -> A here.
  std::vector<int> a_to_b(run.partner.size());
  for (std::size_t b = 0; b < run.partner.size(); ++b)
    a_to_b[run.partner[b]] = static_cast<int>(b);
  return Matching(std::move(a_to_b));
}

inline Matching a_optimal_matching(const Instance& inst) {
  return a_optimal_matching(inst.profile, inst.hidden());
}

inline Matching b_optimal_matching(const Instance& inst) {
  return b_optimal_matching(inst.profile, inst.hidden());
}

// Every stable matching, by checking all n! bijections. Small n only.
inline std::vector<Matching> enumerate_stable_matchings(
    const PreferenceProfile& profile, const Realization& realization) {
  const int n = profile.size();
  if (n > 9) throw OracleLimitError("enumerate_stable_matchings: n > 9");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Matching> out;
  do {
    Matching m(perm);
    if (is_stable(profile, realization, m)) out.push_back(std::move(m));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Sum over a of |{b : b is above M(a) in a's list}|: the number of pairs whose
// non-blocking status must be shown from the B side.
inline int count_potential_blocking_pairs(const PreferenceProfile& profile,
                                          const Matching& m) {
  int total = 0;
  for (int a = 0; a < profile.size(); ++a)
    total += profile.rank(a, m.partner_of_a(a));
  return total;
}

// Z(b) = {a : b is above M(a) in a's list}.
inline std::vector<int> potential_blockers(const PreferenceProfile& profile,
                                           const Matching& m, int b) {
  std::vector<int> out;
  for (int a = 0; a < profile.size(); ++a)
    if (profile.prefers(a, b, m.partner_of_a(a))) out.push_back(a);
  return out;
}

}  // namespace matchprobe

#endif  // MATCHPROBE_STABILITY_HPP_
