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

// Instance files:
//   {"label": str, "n": int, "a_prefs": [[int]], "b_prefs": [[int]]?,
//    "matching": [int]?}

#ifndef MATCHPROBE_INSTANCE_IO_HPP_
#define MATCHPROBE_INSTANCE_IO_HPP_

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "matchprobe/core.hpp"

namespace matchprobe {

using json = nlohmann::json;

inline json to_json(const Instance& inst) {
  json j;
  j["label"] = inst.label;
  j["n"] = inst.size();
  j["a_prefs"] = inst.profile.rows();
  if (inst.realization) j["b_prefs"] = inst.realization->rows();
  if (inst.matching) j["matching"] = inst.matching->pairs();
  return j;
}

namespace detail {

inline std::vector<std::vector<int>> read_table(const json& j,
                                                const std::string& key, int n) {
  if (!j.is_array())
    throw InstanceFormatError(key + ": expected an array of rows");
  if (static_cast<int>(j.size()) != n)
    throw InstanceFormatError(key + ": expected " + std::to_string(n) +
                              " rows, got " + std::to_string(j.size()));
  std::vector<std::vector<int>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& row = j[i];
    const std::string where = key + "[" + std::to_string(i) + "]";
    if (!row.is_array())
      throw InstanceFormatError(where + ": expected an array of integers");
    std::vector<int> out;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_number_integer())
        throw InstanceFormatError(where + "[" + std::to_string(k) +
                                  "]: expected an integer");
      out.push_back(row[k].get<int>());
    }
    check_permutation(out, n, where);
    rows.push_back(std::move(out));
  }
  return rows;
}

}  // namespace detail

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw InstanceFormatError("instance: expected an object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw InstanceFormatError("n: missing or not an integer");
  const int n = j["n"].get<int>();
  if (n < 1) throw InstanceFormatError("n: must be positive");
  if (!j.contains("a_prefs")) throw InstanceFormatError("a_prefs: missing");

  Instance inst;
  inst.label = j.value("label", std::string{});
  inst.profile = PreferenceProfile(detail::read_table(j["a_prefs"], "a_prefs", n),
                                   "a_prefs");
  if (j.contains("b_prefs") && !j["b_prefs"].is_null())
    inst.realization =
        Realization(detail::read_table(j["b_prefs"], "b_prefs", n), "b_prefs");
  if (j.contains("matching") && !j["matching"].is_null()) {
    const auto& mj = j["matching"];
    if (!mj.is_array())
      throw InstanceFormatError("matching: expected an array of integers");
    std::vector<int> pairs;
    for (std::size_t k = 0; k < mj.size(); ++k) {
      if (!mj[k].is_number_integer())
        throw InstanceFormatError("matching[" + std::to_string(k) +
                                  "]: expected an integer");
      pairs.push_back(mj[k].get<int>());
    }
    detail::check_permutation(pairs, n, "matching");
    inst.matching = Matching(std::move(pairs));
  }
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceFormatError(std::string("instance: invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline std::string serialize_instance(const Instance& inst) {
  return to_json(inst).dump();
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceFormatError("cannot open instance file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_instance(text);
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceFormatError("cannot write instance file '" + path + "'");
  out << to_json(inst).dump(2) << "\n";
}

}  // namespace matchprobe

#endif  // MATCHPROBE_INSTANCE_IO_HPP_
