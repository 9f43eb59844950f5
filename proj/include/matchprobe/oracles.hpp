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

// Query models over hidden preference lists. An AnswerSource holds the truth
// (a fixed realization or an adaptive adversary); a QueryOracle issues
// queries against it, counts them and accumulates what they entail.

#ifndef MATCHPROBE_ORACLES_HPP_
#define MATCHPROBE_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "matchprobe/core.hpp"
#include "matchprobe/knowledge.hpp"

namespace matchprobe {

enum class QueryModel { Comparison, Interview, Set };

inline const char* model_name(QueryModel m) {
  switch (m) {
    case QueryModel::Comparison: return "comparison";
    case QueryModel::Interview: return "interview";
    case QueryModel::Set: return "set";
  }
  return "?";
}

inline QueryModel parse_model(const std::string& s) {
  if (s == "comparison") return QueryModel::Comparison;
  if (s == "interview") return QueryModel::Interview;
  if (s == "set") return QueryModel::Set;
  throw PreconditionError("unknown query model '" + s + "'");
}

struct Query {
  QueryModel model = QueryModel::Comparison;
  // The side whose list is probed; B except in the two-sided setting.
  Side side = Side::B;
  int agent = 0;
  // Comparison: (x, y). Interview: (a). Set: the subset.
  std::vector<int> payload;
};

struct TranscriptEntry {
  Query query;
  // Comparison and set: the winner. Interview: the revealed prefix order.
  std::vector<int> answer;
};

class QueryTranscript {
 public:
  void append(TranscriptEntry e) {
    ++counts_[static_cast<int>(e.query.model)];
    entries_.push_back(std::move(e));
  }

  const std::vector<TranscriptEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t count(QueryModel m) const { return counts_[static_cast<int>(m)]; }

  // One JSON object per line.
  std::string to_json_lines() const {
    std::string out;
    for (const auto& e : entries_) {
      const char* side = side_name(e.query.side);
      const char* other = e.query.side == Side::B ? "a" : "b";
      nlohmann::json j;
      j["model"] = model_name(e.query.model);
      j["b"] = std::string(side) + "_" + std::to_string(e.query.agent);
      std::vector<std::string> payload, answer;
      for (int v : e.query.payload) payload.push_back(other + ("_" + std::to_string(v)));
      for (int v : e.answer) answer.push_back(other + ("_" + std::to_string(v)));
      j["payload"] = payload;
      if (e.query.model == QueryModel::Interview)
        j["answer"] = answer;
      else
        j["answer"] = answer.front();
      out += j.dump();
      out += "\n";
    }
    return out;
  }

 private:
  std::vector<TranscriptEntry> entries_;
  std::array<std::size_t, 3> counts_{};
};

// Ground truth behind the oracle.
class AnswerSource {
 public:
  virtual ~AnswerSource() = default;

  virtual int n() const = 0;

  // True iff `agent` ranks x before y.
  virtual bool prefers(int agent, int x, int y) = 0;

  // Called before an interview of `a` by `agent` is answered.
  virtual void on_interview(int /*agent*/, int /*a*/) {}

  virtual int top(int agent, std::span<const int> set) {
    int best = set.front();
    for (int v : set.subspan(1))
      if (prefers(agent, v, best)) best = v;
    return best;
  }
};

// Answers straight from a full table; also serves the A side in the
// two-sided setting.
class RealizationSource : public AnswerSource {
 public:
  explicit RealizationSource(PreferenceTable table) : table_(std::move(table)) {}

  int n() const override { return table_.size(); }
  bool prefers(int agent, int x, int y) override {
    return table_.prefers(agent, x, y);
  }
  int top(int agent, std::span<const int> set) override {
    return *std::min_element(set.begin(), set.end(), [&](int x, int y) {
      return table_.rank(agent, x) < table_.rank(agent, y);
    });
  }

  const PreferenceTable& table() const { return table_; }

 private:
  PreferenceTable table_;
};

// Issues counted queries and tracks the entailed knowledge.
class QueryOracle {
 public:
  explicit QueryOracle(AnswerSource& source, Side side = Side::B)
      : source_(&source),
        side_(side),
        knowledge_(source.n()),
        prefix_(source.n()) {}

  int n() const { return source_->n(); }

  // prefer(b, x, y): whichever of x, y b ranks first.
  int prefer(int b, int x, int y) {
    check_agent(b);
    check_agent(x);
    check_agent(y);
    if (x == y) throw PreconditionError("prefer: the two agents must differ");
    const int winner = source_->prefers(b, x, y) ? x : y;
    knowledge_.add(b, winner, winner == x ? y : x);
    transcript_.append({{QueryModel::Comparison, side_, b, {x, y}}, {winner}});
    return winner;
  }

  // top(b, S): b's favourite element of S.
  int top(int b, std::span<const int> set) {
    check_agent(b);
    if (set.empty()) throw PreconditionError("top: the set must be non-empty");
    for (int v : set) check_agent(v);
    std::vector<int> s(set.begin(), set.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw PreconditionError("top: the set has a repeated agent");
    const int winner = source_->top(b, set);
    for (int v : set)
      if (v != winner) knowledge_.add(b, winner, v);
    transcript_.append(
        {{QueryModel::Set, side_, b, std::vector<int>(set.begin(), set.end())},
         {winner}});
    return winner;
  }

  int top(int b, std::initializer_list<int> set) {
    return top(b, std::span<const int>(set.begin(), set.size()));
  }

  // intq(b, a): b's order over everyone interviewed so far, a included.
  const std::vector<int>& interview(int b, int a) {
    check_agent(b);
    check_agent(a);
    auto& order = prefix_[b];
    if (std::find(order.begin(), order.end(), a) == order.end()) {
      source_->on_interview(b, a);
      std::size_t pos = 0;
      while (pos < order.size() && source_->prefers(b, order[pos], a)) ++pos;
      for (std::size_t k = 0; k < order.size(); ++k) {
        if (k < pos)
          knowledge_.add(b, order[k], a);
        else
          knowledge_.add(b, a, order[k]);
      }
      order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos), a);
    }
    transcript_.append({{QueryModel::Interview, side_, b, {a}}, order});
    return order;
  }

  bool interviewed(int b, int a) const {
    const auto& order = prefix_.at(b);
    return std::find(order.begin(), order.end(), a) != order.end();
  }

  const std::vector<int>& interview_prefix(int b) const { return prefix_.at(b); }

  const KnowledgeState& knowledge() const { return knowledge_; }
  const QueryTranscript& transcript() const { return transcript_; }
  std::size_t count(QueryModel m) const { return transcript_.count(m); }
  std::size_t total() const { return transcript_.size(); }
  Side side() const { return side_; }

 private:
  void check_agent(int v) const {
    if (v < 0 || v >= n())
      throw PreconditionError("query: agent index " + std::to_string(v) +
                              " out of range");
  }

  AnswerSource* source_;
  Side side_;
  KnowledgeState knowledge_;
  std::vector<std::vector<int>> prefix_;
  QueryTranscript transcript_;
};

}  // namespace matchprobe

#endif  // MATCHPROBE_ORACLES_HPP_
