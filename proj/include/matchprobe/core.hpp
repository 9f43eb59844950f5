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

#ifndef MATCHPROBE_CORE_HPP_
#define MATCHPROBE_CORE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace matchprobe {

// Errors. Everything derives from std::runtime_error so the CLI can map the
// whole family to exit code 2.
class MatchprobeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Online code touched a B-side list that is not available.
class HiddenPreferenceError : public MatchprobeError {
 public:
  using MatchprobeError::MatchprobeError;
};

// Answers to queries contradict each other (cycle in a partial order).
class InconsistentAnswersError : public MatchprobeError {
 public:
  using MatchprobeError::MatchprobeError;
};

// Brute-force oracle asked to work on an instance that is too large.
class OracleLimitError : public MatchprobeError {
 public:
  using MatchprobeError::MatchprobeError;
};

class PreconditionError : public MatchprobeError {
 public:
  using MatchprobeError::MatchprobeError;
};

class InstanceFormatError : public MatchprobeError {
 public:
  using MatchprobeError::MatchprobeError;
};

enum class Side { A, B };

inline const char* side_name(Side s) { return s == Side::A ? "a" : "b"; }

struct AgentId {
  Side side = Side::A;
  int index = 0;

  static constexpr AgentId a(int i) { return {Side::A, i}; }
  static constexpr AgentId b(int i) { return {Side::B, i}; }

  friend bool operator==(const AgentId&, const AgentId&) = default;
};

inline std::string to_string(AgentId id) {
  return std::string(side_name(id.side)) + "_" + std::to_string(id.index);
}

namespace detail {

// Throws InstanceFormatError when `row` is not a permutation of [0, n).
inline void check_permutation(std::span<const int> row, int n,
                              const std::string& where) {
  if (static_cast<int>(row.size()) != n) {
    std::ostringstream msg;
    msg << where << ": expected " << n << " entries, got " << row.size();
    throw InstanceFormatError(msg.str());
  }
  std::vector<int> seen_at(n, -1);
  for (int pos = 0; pos < n; ++pos) {
    const int v = row[pos];
    if (v < 0 || v >= n) {
      std::ostringstream msg;
      msg << where << "[" << pos << "]: value " << v << " out of range [0,"
          << n << ")";
      throw InstanceFormatError(msg.str());
    }
    if (seen_at[v] >= 0) {
      std::ostringstream msg;
      msg << where << "[" << pos << "]: duplicate entry " << v
          << " (first seen at position " << seen_at[v] << ")";
      throw InstanceFormatError(msg.str());
    }
    seen_at[v] = pos;
  }
}

}  // namespace detail

// n complete strict preference lists over the opposite side. Row i lists the
// agent's choices from most to least preferred. Immutable after construction.
class PreferenceTable {
 public:
  PreferenceTable() = default;

  explicit PreferenceTable(std::vector<std::vector<int>> rows,
                           const std::string& name = "prefs")
      : rows_(std::move(rows)) {
    const int n = static_cast<int>(rows_.size());
    if (n == 0) throw InstanceFormatError(name + ": empty preference table");
    ranks_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
      detail::check_permutation(rows_[i], n,
                                name + "[" + std::to_string(i) + "]");
      for (int pos = 0; pos < n; ++pos) ranks_[i * n + rows_[i][pos]] = pos;
    }
  }

  int size() const { return static_cast<int>(rows_.size()); }

  std::span<const int> list(int agent) const { return rows_.at(agent); }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  int at(int agent, int position) const { return rows_.at(agent).at(position); }

  // Position of `other` in `agent`'s list; 0 is the top choice.
  int rank(int agent, int other) const { return ranks_[agent * size() + other]; }

  bool prefers(int agent, int x, int y) const {
    return rank(agent, x) < rank(agent, y);
  }

  friend bool operator==(const PreferenceTable& l, const PreferenceTable& r) {
    return l.rows_ == r.rows_;
  }

 private:
  std::vector<std::vector<int>> rows_;
  std::vector<int> ranks_;
};

// A-side lists (rows are permutations of B indices).
using PreferenceProfile = PreferenceTable;
// B-side lists (rows are permutations of A indices).
using Realization = PreferenceTable;

// Perfect matching between A and B, stored in both directions.
class Matching {
 public:
  Matching() = default;

  explicit Matching(std::vector<int> partner_of_a)
      : a_to_b_(std::move(partner_of_a)) {
    const int n = static_cast<int>(a_to_b_.size());
    detail::check_permutation(a_to_b_, n, "matching");
    b_to_a_.assign(n, 0);
    for (int a = 0; a < n; ++a) b_to_a_[a_to_b_[a]] = a;
  }

  static Matching identity(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return Matching(std::move(p));
  }

  int size() const { return static_cast<int>(a_to_b_.size()); }
  int partner_of_a(int a) const { return a_to_b_.at(a); }
  int partner_of_b(int b) const { return b_to_a_.at(b); }
  const std::vector<int>& pairs() const { return a_to_b_; }

  bool contains(int a, int b) const { return a_to_b_.at(a) == b; }

  friend bool operator==(const Matching& l, const Matching& r) {
    return l.a_to_b_ == r.a_to_b_;
  }

 private:
  std::vector<int> a_to_b_;
  std::vector<int> b_to_a_;
};

inline std::string to_string(const Matching& m) {
  std::ostringstream out;
  out << "{";
  for (int a = 0; a < m.size(); ++a) {
    if (a) out << ",";
    out << "(a_" << a << ",b_" << m.partner_of_a(a) << ")";
  }
  out << "}";
  return out.str();
}

struct Instance {
  PreferenceProfile profile;
  std::optional<Realization> realization;
  std::optional<Matching> matching;
  std::string label;

  int size() const { return profile.size(); }

  const Realization& hidden() const {
    if (!realization)
      throw HiddenPreferenceError("hidden-preference access: instance '" +
                                  label + "' has no B-side realization");
    return *realization;
  }

  void validate() const {
    if (realization && realization->size() != profile.size())
      throw InstanceFormatError("b_prefs: expected " +
                                std::to_string(profile.size()) + " rows, got " +
                                std::to_string(realization->size()));
    if (matching && matching->size() != profile.size())
      throw InstanceFormatError("matching: expected " +
                                std::to_string(profile.size()) +
                                " entries, got " +
                                std::to_string(matching->size()));
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Position of `other` in `agent`'s list. B-side lists require the realization.
inline int rank(const Instance& inst, AgentId agent, AgentId other) {
  if (agent.side == other.side)
    throw PreconditionError("rank: agents must be on opposite sides");
  if (agent.side == Side::A) return inst.profile.rank(agent.index, other.index);
  return inst.hidden().rank(agent.index, other.index);
}

}  // namespace matchprobe

#endif  // MATCHPROBE_CORE_HPP_
