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

// Canonical named instances and random instance generation. Every "any
// order" slot is filled by increasing index.

#ifndef MATCHPROBE_FIXTURES_HPP_
#define MATCHPROBE_FIXTURES_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "matchprobe/core.hpp"
#include "matchprobe/stability.hpp"

namespace matchprobe {

namespace detail {

// `first` followed by every other index in increasing order.
inline std::vector<int> top_then_rest(int n, int first) {
  std::vector<int> row{first};
  for (int i = 0; i < n; ++i)
    if (i != first) row.push_back(i);
  return row;
}

// Appends every index in [0, n) not yet in `row`, in increasing order.
inline void fill_remaining(std::vector<int>& row, int n) {
  std::vector<bool> used(n, false);
  for (int v : row) used[v] = true;
  for (int i = 0; i < n; ++i)
    if (!used[i]) row.push_back(i);
}

}  // namespace detail

// FIX-ID(n): everybody's top choice is the same-index partner.
inline Instance fixture_identity(int n) {
  if (n < 1) throw PreconditionError("identity fixture needs n >= 1");
  std::vector<std::vector<int>> a, b;
  for (int i = 0; i < n; ++i) {
    a.push_back(detail::top_then_rest(n, i));
    b.push_back(detail::top_then_rest(n, i));
  }
  return Instance{PreferenceProfile(a, "a_prefs"), Realization(b, "b_prefs"),
                  Matching::identity(n), "identity-" + std::to_string(n)};
}

// FIX-ROT2: A-optimal is the identity, B-optimal the swap.
inline Instance fixture_rot2() {
  return Instance{PreferenceProfile({{0, 1}, {1, 0}}, "a_prefs"),
                  Realization({{1, 0}, {0, 1}}, "b_prefs"), std::nullopt,
                  "rot2"};
}

// FIX-SWAP2: both A agents want b_0, which prefers a_1.
inline Instance fixture_swap2() {
  return Instance{PreferenceProfile({{0, 1}, {0, 1}}, "a_prefs"),
                  Realization({{1, 0}, {0, 1}}, "b_prefs"), std::nullopt,
                  "swap2"};
}

// FIX-EQ(n): identical A lists (b_0, ..., b_{n-1}); each b ranks A in reverse
// index order.
inline Instance fixture_equal(int n) {
  if (n < 1) throw PreconditionError("equal-a fixture needs n >= 1");
  std::vector<int> up(n), down(n);
  std::iota(up.begin(), up.end(), 0);
  std::iota(down.rbegin(), down.rend(), 0);
  return Instance{PreferenceProfile(std::vector(n, up), "a_prefs"),
                  Realization(std::vector(n, down), "b_prefs"), std::nullopt,
                  "equal-a-" + std::to_string(n)};
}

// FIX-2SIDED: the 2x2 two-sided lower-bound instance. The A lists are hidden
// too in that setting; answers are the adversarial ones (every first probe of
// a pair is unfavourable on the B side).
inline Instance fixture_two_sided() {
  return Instance{PreferenceProfile({{0, 1}, {1, 0}}, "a_prefs"),
                  Realization({{1, 0}, {0, 1}}, "b_prefs"), Matching::identity(2),
                  "twosided"};
}

// The known A-side lists of the comparison lower-bound construction (n a
// multiple of 4). A_1 = a_0..a_{n/2-1}, A_2 = a_{n/2}..a_{n-2}, A_3 = a_{n-1};
// B_1 = b_0..b_{n/2-1}, B_2 = the rest.
inline PreferenceProfile figure1_profile(int n) {
  if (n < 4 || n % 4 != 0)
    throw PreconditionError("figure1 family needs n to be a positive multiple of 4");
  const int half = n / 2;
  std::vector<std::vector<int>> rows(n);
  for (int i = 0; i < half; ++i) {
    rows[i] = {i};
    for (int j = half; j < n; ++j) rows[i].push_back(j);
    detail::fill_remaining(rows[i], n);
  }
  for (int i = half; i < n - 1; ++i) {
    rows[i] = {i, n - 1};
    detail::fill_remaining(rows[i], n);
  }
  rows[n - 1] = {n - 1};
  detail::fill_remaining(rows[n - 1], n);
  return PreferenceProfile(std::move(rows), "a_prefs");
}

// B_1 lists of the construction: for odd i < n/2, b_i = (a_{i-1}, a_i, *) and
// b_{i-1} = (a_i, a_{i-1}, *).
inline std::vector<int> figure1_b1_list(int n, int j) {
  std::vector<int> row = (j % 2 == 1) ? std::vector<int>{j - 1, j}
                                      : std::vector<int>{j + 1, j};
  detail::fill_remaining(row, n);
  return row;
}

// Middle block of a B_2 list: the agents of A_2 and a_{n-1}. For j != n-1 the
// partner a_j comes first and the rest follow cyclically; for j == n-1 the
// block is in increasing order so a_{n-1} is last.
inline std::vector<int> figure1_middle_block(int n, int j) {
  const int half = n / 2;
  std::vector<int> block;
  if (j == n - 1) {
    for (int k = half; k < n; ++k) block.push_back(k);
    return block;
  }
  for (int k = j; k < n; ++k) block.push_back(k);
  for (int k = half; k < j; ++k) block.push_back(k);
  return block;
}

// B_2 list of b_j given which A_1 agents go in front of the middle block.
inline std::vector<int> figure1_b2_list(int n, int j,
                                        const std::vector<bool>& in_front) {
  const int half = n / 2;
  std::vector<int> row;
  for (int i = 0; i < half; ++i)
    if (in_front[i]) row.push_back(i);
  for (int k : figure1_middle_block(n, j)) row.push_back(k);
  for (int i = 0; i < half; ++i)
    if (!in_front[i]) row.push_back(i);
  return row;
}

// Realization of the construction when a_i's rotation edge goes to
// b_{target[i]} for every i in A_1.
inline Realization figure1_realization(int n, const std::vector<int>& target) {
  const int half = n / 2;
  std::vector<std::vector<int>> rows(n);
  for (int j = 0; j < half; ++j) rows[j] = figure1_b1_list(n, j);
  for (int j = half; j < n; ++j) {
    std::vector<bool> front(half, false);
    for (int i = 0; i < half; ++i) front[i] = target[i] == j;
    rows[j] = figure1_b2_list(n, j, front);
  }
  return Realization(std::move(rows), "b_prefs");
}

// FIG1-n, static variant: every A_1 agent has its rotation edge to b_{n-1}.
inline Instance fixture_figure1(int n) {
  auto profile = figure1_profile(n);
  std::vector<int> target(n / 2, n - 1);
  return Instance{std::move(profile), figure1_realization(n, target),
                  Matching::identity(n), "figure1-" + std::to_string(n)};
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Uniformly random lists on both sides.
inline Instance random_instance(int n, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("random family needs n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> a, b;
  for (int i = 0; i < n; ++i) a.push_back(random_permutation(n, rng));
  for (int i = 0; i < n; ++i) b.push_back(random_permutation(n, rng));
  return Instance{PreferenceProfile(std::move(a), "a_prefs"),
                  Realization(std::move(b), "b_prefs"), std::nullopt,
                  "random-" + std::to_string(n) + "-" + std::to_string(seed)};
}

}  // namespace matchprobe

#endif  // MATCHPROBE_FIXTURES_HPP_
