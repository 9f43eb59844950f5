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

// Certificate predicates. The fast ones read the knowledge state directly;
// certifies_semantic enumerates every completion of the hidden lists and is
// exponential, so it is guarded by a size limit.

#ifndef MATCHPROBE_CERTIFY_HPP_
#define MATCHPROBE_CERTIFY_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "matchprobe/core.hpp"
#include "matchprobe/knowledge.hpp"
#include "matchprobe/rotations.hpp"
#include "matchprobe/stability.hpp"

namespace matchprobe {

enum class CertTarget { Stable, StableAOptimal, StableBOptimal };

inline const char* target_name(CertTarget t) {
  switch (t) {
    case CertTarget::Stable: return "stable";
    case CertTarget::StableAOptimal: return "a-optimal";
    case CertTarget::StableBOptimal: return "stable-b-optimal";
  }
  return "?";
}

// Every potential blocking pair (a, b), b above M(a) in a's list, has
// M(b) ≺_b a entailed.
template <EntailmentSource K>
bool certifies_stable(const K& knowledge, const PreferenceProfile& profile,
                      const Matching& m) {
  for (int a = 0; a < profile.size(); ++a) {
    const auto list = profile.list(a);
    for (int pos = 0; pos < profile.rank(a, m.partner_of_a(a)); ++pos) {
      const int b = list[pos];
      if (!knowledge.entails(b, m.partner_of_b(b), a)) return false;
    }
  }
  return true;
}

template <EntailmentSource K>
bool certifies_b_optimal(const K& knowledge, const PreferenceProfile& profile,
                         const Matching& m) {
  return certifies_stable(knowledge, profile, m) &&
         candidate_graph(profile, m, knowledge).is_acyclic();
}

// Σ_b |{a ≠ M(b) : K relates a and M(b) in b's order}|.
inline std::size_t count_relationship_pairs(const KnowledgeState& k,
                                            const Matching& m) {
  std::size_t total = 0;
  for (int b = 0; b < k.size(); ++b) {
    const int mb = m.partner_of_b(b);
    for (int a = 0; a < k.size(); ++a)
      if (a != mb && k.order(b).related(a, mb)) ++total;
  }
  return total;
}

inline constexpr int kDefaultSemanticLimit = 6;

namespace detail {

// All total orders of [0, n) extending `order`, in lexicographic order.
inline std::vector<std::vector<int>> linear_extensions(const PartialOrder& order) {
  const int n = order.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < i && ok; ++j)
        if (order.entails(perm[i], perm[j])) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Extensions of b's order that can differ in the verdict for `target`: the
// set of agents above M(b) decides stability and r-edges; for A-optimality
// the first potential blocker below M(b) matters as well.
inline std::vector<std::vector<int>> distinct_completions(
    const PartialOrder& order, const PreferenceProfile& profile,
    const Matching& m, int b, CertTarget target) {
  const int mb = m.partner_of_b(b);
  const auto z = potential_blockers(profile, m, b);
  std::map<std::vector<int>, std::vector<int>> seen;
  for (auto& ext : linear_extensions(order)) {
    std::vector<int> key;
    int pos = 0;
    for (; ext[pos] != mb; ++pos) key.push_back(ext[pos]);
    std::sort(key.begin(), key.end());
    if (target == CertTarget::StableAOptimal) {
      int first_below = -1;
      for (int q = pos + 1; q < static_cast<int>(ext.size()); ++q)
        if (std::find(z.begin(), z.end(), ext[q]) != z.end()) {
          first_below = ext[q];
          break;
        }
      key.push_back(-1);
      key.push_back(first_below);
    }
    seen.emplace(std::move(key), std::move(ext));
  }
  std::vector<std::vector<int>> out;
  for (auto& [key, ext] : seen) out.push_back(std::move(ext));
  return out;
}

}  // namespace detail

// A completion of K under which M fails `target`, if any.
inline std::optional<Realization> semantic_counterexample(
    const KnowledgeState& k, const PreferenceProfile& profile, const Matching& m,
    CertTarget target, int limit = kDefaultSemanticLimit) {
  const int n = profile.size();
  if (n > limit)
    throw OracleLimitError("oracle size limit: semantic certifier supports n <= " +
                           std::to_string(limit) + ", got n = " +
                           std::to_string(n));
  std::vector<std::vector<std::vector<int>>> options(n);
  for (int b = 0; b < n; ++b)
    options[b] = detail::distinct_completions(k.order(b), profile, m, b, target);

  std::vector<std::vector<int>> rows(n);
  for (int b = 0; b < n; ++b) rows[b] = options[b].front();

  if (target == CertTarget::Stable) {
    // Stability is a per-b property of the set above M(b).
    for (int b = 0; b < n; ++b)
      for (const auto& ext : options[b]) {
        rows[b] = ext;
        Realization r(rows, "b_prefs");
        for (int a = 0; a < n; ++a)
          if (is_blocking_pair(profile, r, m, a, b)) return r;
        rows[b] = options[b].front();
      }
    return std::nullopt;
  }

  // Odometer over the product, b = 0 most significant.
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    for (int b = 0; b < n; ++b) rows[b] = options[b][idx[b]];
    Realization r(rows, "b_prefs");
    const Matching best = target == CertTarget::StableBOptimal
                              ? b_optimal_matching(profile, r)
                              : a_optimal_matching(profile, r);
    if (!(best == m)) return r;
    int b = n - 1;
    while (b >= 0 && ++idx[b] == options[b].size()) idx[b--] = 0;
    if (b < 0) break;
  }
  return std::nullopt;
}

inline bool certifies_semantic(const KnowledgeState& k,
                               const PreferenceProfile& profile,
                               const Matching& m, CertTarget target,
                               int limit = kDefaultSemanticLimit) {
  return !semantic_counterexample(k, profile, m, target, limit).has_value();
}

// Fast predicate where one exists; A-optimality of an arbitrary matching has
// no closed form, so it goes to the semantic certifier.
inline bool certifies(const KnowledgeState& k, const PreferenceProfile& profile,
                      const Matching& m, CertTarget target,
                      int limit = kDefaultSemanticLimit) {
  switch (target) {
    case CertTarget::Stable: return certifies_stable(k, profile, m);
    case CertTarget::StableBOptimal: return certifies_b_optimal(k, profile, m);
    case CertTarget::StableAOptimal:
      return certifies_semantic(k, profile, m, target, limit);
  }
  return false;
}

}  // namespace matchprobe

#endif  // MATCHPROBE_CERTIFY_HPP_
