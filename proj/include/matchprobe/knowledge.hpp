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

// What has been learned about the hidden B-side lists. Every query model
// reduces to pairwise assertions "x before y in b's list"; entailment is
// reachability over those assertions and is kept transitively closed.

#ifndef MATCHPROBE_KNOWLEDGE_HPP_
#define MATCHPROBE_KNOWLEDGE_HPP_

#include <concepts>
#include <cstdint>
#include <iterator>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "matchprobe/core.hpp"

namespace matchprobe {

// Anything that can answer "is x ≺_b y known?".
template <class K>
concept EntailmentSource = requires(const K& k, int b, int x, int y) {
  { k.entails(b, x, y) } -> std::convertible_to<bool>;
};

// A strict partial order over A-indices for a single B agent, stored as its
// transitive closure.
class PartialOrder {
 public:
  PartialOrder() = default;
  explicit PartialOrder(int n)
      : succ_(n, boost::dynamic_bitset<>(static_cast<std::size_t>(n))) {}

  int size() const { return static_cast<int>(succ_.size()); }

  // x strictly before y.
  bool entails(int x, int y) const { return succ_[x].test(y); }

  bool related(int x, int y) const { return entails(x, y) || entails(y, x); }

  // Records x ≺ y. Returns false when it was already entailed.
  bool add(int x, int y) {
    if (x == y) throw PreconditionError("relation needs two distinct agents");
    if (entails(x, y)) return false;
    if (entails(y, x))
      throw InconsistentAnswersError(
          "inconsistent answers: a_" + std::to_string(x) + " before a_" +
          std::to_string(y) + " contradicts an earlier answer");
    boost::dynamic_bitset<> gain = succ_[y];
    gain.set(y);
    for (int u = 0; u < size(); ++u)
      if (u == x || succ_[u].test(x)) succ_[u] |= gain;
    asserted_.emplace_back(x, y);
    return true;
  }

  // Pairs added through add() that were not already entailed.
  const std::vector<std::pair<int, int>>& asserted() const { return asserted_; }

  const boost::dynamic_bitset<>& successors(int x) const { return succ_[x]; }

  std::size_t relation_count() const {
    std::size_t c = 0;
    for (const auto& row : succ_) c += row.count();
    return c;
  }

  // Everything entailed here is entailed by `other`.
  bool is_subset_of(const PartialOrder& other) const {
    for (int x = 0; x < size(); ++x)
      if (!succ_[x].is_subset_of(other.succ_[x])) return false;
    return true;
  }

  // Closure bits, usable as a hash key.
  std::vector<std::uint64_t> signature() const {
    std::vector<std::uint64_t> out;
    for (const auto& row : succ_) {
      std::vector<boost::dynamic_bitset<>::block_type> blocks;
      boost::to_block_range(row, std::back_inserter(blocks));
      for (auto blk : blocks) out.push_back(static_cast<std::uint64_t>(blk));
    }
    return out;
  }

  friend bool operator==(const PartialOrder& l, const PartialOrder& r) {
    return l.succ_ == r.succ_;
  }

 private:
  std::vector<boost::dynamic_bitset<>> succ_;
  std::vector<std::pair<int, int>> asserted_;
};

// Per-B-agent partial orders. A value type; copies are independent.
class KnowledgeState {
 public:
  KnowledgeState() = default;
  explicit KnowledgeState(int n) : orders_(n, PartialOrder(n)) {}

  int size() const { return static_cast<int>(orders_.size()); }

  bool entails(int b, int x, int y) const { return orders_.at(b).entails(x, y); }

  bool add(int b, int x, int y) { return orders_.at(b).add(x, y); }

  const PartialOrder& order(int b) const { return orders_.at(b); }
  PartialOrder& order(int b) { return orders_.at(b); }

  std::size_t relation_count() const {
    std::size_t c = 0;
    for (const auto& o : orders_) c += o.relation_count();
    return c;
  }

  bool is_subset_of(const KnowledgeState& other) const {
    for (int b = 0; b < size(); ++b)
      if (!orders_[b].is_subset_of(other.orders_[b])) return false;
    return true;
  }

  friend bool operator==(const KnowledgeState& l, const KnowledgeState& r) {
    return l.orders_ == r.orders_;
  }

 private:
  std::vector<PartialOrder> orders_;
};

static_assert(EntailmentSource<KnowledgeState>);

// Copy of `k` with x ≺_b y added.
inline KnowledgeState assert_relation(KnowledgeState k, AgentId b, AgentId x,
                                      AgentId y) {
  if (b.side != Side::B || x.side != Side::A || y.side != Side::A)
    throw PreconditionError("assert_relation expects a B agent and two A agents");
  k.add(b.index, x.index, y.index);
  return k;
}

}  // namespace matchprobe

#endif  // MATCHPROBE_KNOWLEDGE_HPP_
