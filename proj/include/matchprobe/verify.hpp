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

// Online verification: decide whether a given matching is stable (or stable
// and B-optimal) by querying the hidden lists.

#ifndef MATCHPROBE_VERIFY_HPP_
#define MATCHPROBE_VERIFY_HPP_

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "matchprobe/core.hpp"
#include "matchprobe/knowledge.hpp"
#include "matchprobe/oracles.hpp"
#include "matchprobe/rotations.hpp"
#include "matchprobe/stability.hpp"

namespace matchprobe {

enum class Verdict { Stable, BOptimal, BlockingPair, RotationExposed };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::BOptimal: return "b-optimal";
    case Verdict::BlockingPair: return "blocking-pair";
    case Verdict::RotationExposed: return "rotation-exposed";
  }
  return "?";
}

inline bool is_positive(Verdict v) {
  return v == Verdict::Stable || v == Verdict::BOptimal;
}

struct VerifyResult {
  Verdict verdict = Verdict::Stable;
  QueryModel model = QueryModel::Comparison;
  std::optional<std::pair<int, int>> blocking_pair;  // (a, b)
  std::optional<Rotation> rotation;
  QueryTranscript transcript;
  KnowledgeState knowledge;

  std::size_t queries() const { return transcript.size(); }
  bool positive() const { return is_positive(verdict); }

  nlohmann::json witness_json() const {
    if (blocking_pair)
      return nlohmann::json::array({"a_" + std::to_string(blocking_pair->first),
                                    "b_" + std::to_string(blocking_pair->second)});
    if (rotation) {
      nlohmann::json pairs = nlohmann::json::array();
      for (auto [a, b] : rotation->pairs)
        pairs.push_back({"a_" + std::to_string(a), "b_" + std::to_string(b)});
      return pairs;
    }
    return nullptr;
  }

  nlohmann::json to_json() const {
    return {{"verdict", verdict_name(verdict)},
            {"witness", witness_json()},
            {"queries", queries()},
            {"model", model_name(model)}};
  }
};

namespace detail {

inline VerifyResult finish(QueryOracle& oracle, QueryModel model, Verdict v) {
  VerifyResult r;
  r.verdict = v;
  r.model = model;
  r.transcript = oracle.transcript();
  r.knowledge = oracle.knowledge();
  return r;
}

}  // namespace detail

// One comparison prefer(b, M(b), a) per potential blocking pair.
inline VerifyResult verify_stable_comparison(const PreferenceProfile& profile,
                                             const Matching& m,
                                             AnswerSource& source) {
  QueryOracle oracle(source);
  for (int a = 0; a < profile.size(); ++a) {
    const auto list = profile.list(a);
    for (int pos = 0; pos < profile.rank(a, m.partner_of_a(a)); ++pos) {
      const int b = list[pos];
      if (oracle.prefer(b, m.partner_of_b(b), a) == a) {
        auto r = detail::finish(oracle, QueryModel::Comparison, Verdict::BlockingPair);
        r.blocking_pair = {a, b};
        return r;
      }
    }
  }
  return detail::finish(oracle, QueryModel::Comparison, Verdict::Stable);
}

// Both sides hidden: every non-matching pair is a candidate. Ask b first;
// only if b would defect, ask a.
inline VerifyResult verify_stable_twosided(AnswerSource& a_side,
                                           AnswerSource& b_side,
                                           const Matching& m) {
  QueryOracle a_oracle(a_side, Side::A);
  QueryOracle b_oracle(b_side, Side::B);
  QueryTranscript combined;
  auto take_last = [&](const QueryOracle& o) {
    combined.append(o.transcript().entries().back());
  };
  auto result = [&](Verdict v) {
    VerifyResult r;
    r.verdict = v;
    r.model = QueryModel::Comparison;
    r.transcript = combined;
    r.knowledge = b_oracle.knowledge();
    return r;
  };
  const int n = m.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (m.contains(a, b)) continue;
      const bool b_defects = b_oracle.prefer(b, a, m.partner_of_b(b)) == a;
      take_last(b_oracle);
      if (!b_defects) continue;
      const bool a_defects = a_oracle.prefer(a, b, m.partner_of_a(a)) == b;
      take_last(a_oracle);
      if (a_defects) {
        auto r = result(Verdict::BlockingPair);
        r.blocking_pair = {a, b};
        return r;
      }
    }
  return result(Verdict::Stable);
}

// Interview M(b) first, then every potential blocker of b.
inline VerifyResult verify_stable_interview(const PreferenceProfile& profile,
                                            const Matching& m,
                                            AnswerSource& source) {
  QueryOracle oracle(source);
  for (int b = 0; b < profile.size(); ++b) {
    const auto z = potential_blockers(profile, m, b);
    if (z.empty()) continue;
    const int mb = m.partner_of_b(b);
    oracle.interview(b, mb);
    for (int a : z) {
      const auto& order = oracle.interview(b, a);
      if (std::find(order.begin(), order.end(), a) <
          std::find(order.begin(), order.end(), mb)) {
        auto r = detail::finish(oracle, QueryModel::Interview, Verdict::BlockingPair);
        r.blocking_pair = {a, b};
        return r;
      }
    }
  }
  return detail::finish(oracle, QueryModel::Interview, Verdict::Stable);
}

namespace detail {

// top(b, Z(b) ∪ {M(b)}) for every b with potential blockers. Returns the
// blocking pair found, if any.
inline std::optional<std::pair<int, int>> set_stability_pass(
    const PreferenceProfile& profile, const Matching& m, QueryOracle& oracle) {
  for (int b = 0; b < profile.size(); ++b) {
    auto s = potential_blockers(profile, m, b);
    if (s.empty()) continue;
    s.push_back(m.partner_of_b(b));
    const int t = oracle.top(b, s);
    if (t != m.partner_of_b(b)) return std::pair{t, b};
  }
  return std::nullopt;
}

}  // namespace detail

inline VerifyResult verify_stable_set(const PreferenceProfile& profile,
                                      const Matching& m, AnswerSource& source) {
  QueryOracle oracle(source);
  if (auto bp = detail::set_stability_pass(profile, m, oracle)) {
    auto r = detail::finish(oracle, QueryModel::Set, Verdict::BlockingPair);
    r.blocking_pair = bp;
    return r;
  }
  return detail::finish(oracle, QueryModel::Set, Verdict::Stable);
}

struct SetVerifyResult : VerifyResult {
  // candidate_sizes[i][a] = |R_i(a)| at the start of iteration i; the last
  // row is the state on termination.
  std::vector<std::vector<int>> candidate_sizes;
  std::size_t stability_queries = 0;
};

// Stability plus B-optimality with set queries. Each round halves every
// undecided agent's set of possible rotation-edge partners.
inline SetVerifyResult verify_b_optimal_set(const PreferenceProfile& profile,
                                            const Matching& m,
                                            AnswerSource& source) {
  const int n = profile.size();
  QueryOracle oracle(source);
  SetVerifyResult out;
  auto finish = [&](Verdict v) {
    static_cast<VerifyResult&>(out) = detail::finish(oracle, QueryModel::Set, v);
  };

  if (auto bp = detail::set_stability_pass(profile, m, oracle)) {
    finish(Verdict::BlockingPair);
    out.blocking_pair = bp;
    out.stability_queries = oracle.total();
    return out;
  }
  out.stability_queries = oracle.total();

  // R(a) in a's preference order.
  std::vector<std::vector<int>> cand(n);
  for (int a = 0; a < n; ++a) {
    const auto list = profile.list(a);
    cand[a].assign(list.begin() + profile.rank(a, m.partner_of_a(a)) + 1,
                   list.end());
  }
  const auto& k = oracle.knowledge();
  auto confirmed = [&](int a, int b) { return k.entails(b, a, m.partner_of_b(b)); };
  auto decided = [&](int a) {
    return cand[a].empty() || confirmed(a, cand[a].front());
  };
  auto snapshot = [&] {
    std::vector<int> sizes(n);
    for (int a = 0; a < n; ++a) sizes[a] = static_cast<int>(cand[a].size());
    out.candidate_sizes.push_back(std::move(sizes));
  };

  int rounds = 0;
  while (true) {
    std::vector<int> undecided;
    for (int a = 0; a < n; ++a)
      if (!decided(a)) undecided.push_back(a);
    snapshot();
    if (undecided.empty()) break;
    if (++rounds > 4 * n + 8)
      throw std::logic_error("set verification: no progress in candidate sets");

    // R̄(a) is fixed for the whole round.
    std::vector<std::vector<int>> half(n);
    std::vector<bool> in_u(n, false);
    for (int a : undecided) {
      const std::size_t h = (cand[a].size() + 1) / 2;
      half[a].assign(cand[a].begin(), cand[a].begin() + static_cast<std::ptrdiff_t>(h));
      in_u[a] = !half[a].empty();
    }
    for (int b = 0; b < n; ++b) {
      std::vector<int> ub;
      for (int a = 0; a < n; ++a)
        if (in_u[a] && std::find(half[a].begin(), half[a].end(), b) != half[a].end())
          ub.push_back(a);
      while (!ub.empty()) {
        std::vector<int> s = ub;
        s.push_back(m.partner_of_b(b));
        const int t = oracle.top(b, s);
        if (t == m.partner_of_b(b)) {
          for (int a : ub) std::erase(cand[a], b);
          ub.clear();
        } else {
          in_u[t] = false;
          std::erase(ub, t);
          auto it = std::find(cand[t].begin(), cand[t].end(), b);
          cand[t].erase(it + 1, cand[t].end());
        }
      }
    }
  }

  std::vector<int> edge(n, -1);
  for (int a = 0; a < n; ++a)
    if (!cand[a].empty()) edge[a] = cand[a].front();
  auto rotations = rotations_from_edges(m, edge);
  if (!rotations.empty()) {
    finish(Verdict::RotationExposed);
    out.rotation = rotations.front();
  } else {
    finish(Verdict::BOptimal);
  }
  return out;
}

}  // namespace matchprobe

#endif  // MATCHPROBE_VERIFY_HPP_
