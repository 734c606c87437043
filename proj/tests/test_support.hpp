// Copyright 2026 The Gallant Authors
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

// Fixtures and exhaustive instance enumerators shared by the test suites.

#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gallant/gallant.hpp"

namespace gallant::testing {

inline const char* kFigure1Spec =
    "players 2\n"
    "morsels a b c\n"
    "enjoy 1: 1 2 0\n"
    "enjoy 2: 0 1 2\n"
    "turns 1K 2K 1K\n";

inline const char* kFigure2Spec =
    "players 3\n"
    "morsels a b c\n"
    "enjoy 1: 0 1 2\n"
    "enjoy 2: 1 2 0\n"
    "enjoy 3: 2 1 0\n"
    "speakers 1 2 3\n";

inline Game figure1() { return parse_game_spec(kFigure1Spec); }
inline GroupGame figure2() { return parse_group_spec(kFigure2Spec); }

// "1K 2L" -> turns (players 1-indexed in the text).
inline TurnSequence turns(const std::string& text) {
  TurnSequence out;
  std::istringstream in(text);
  std::string w;
  while (in >> w)
    out.push_back({std::stoi(w.substr(0, w.size() - 1)) - 1, w.back() == 'K' ? Nature::Knight : Nature::Lout});
  return out;
}

// Play from morsel names, e.g. "a c b".
inline PlaySequence play(const Game& g, const std::string& names) {
  std::vector<int> types;
  std::istringstream in(names);
  std::string w;
  while (in >> w) types.push_back(*g.table.find(w));
  return play_from_types(types, g.table);
}

inline Plate plate(const MorselTable& table, const std::string& names) {
  Plate p(table.type_count());
  std::istringstream in(names);
  std::string w;
  while (in >> w) p.add(*table.find(w));
  return p;
}

inline std::vector<std::string> names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(morsel_name(i));
  return out;
}

// Every strict ranking of n types.
inline std::vector<Ranking> all_rankings(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Ranking> out;
  do out.push_back(Ranking::from_ascending(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Every ranking profile of k players over n types.
inline void for_each_profile(int n, int k, const std::function<void(const PreferenceProfile&)>& fn) {
  const auto rankings = all_rankings(n);
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    PreferenceProfile p;
    for (auto i : idx) p.push_back(rankings[i]);
    fn(p);
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == rankings.size()) idx[pos++] = 0;
    if (pos == idx.size()) return;
  }
}

// Every turn sequence of length m over k players, with every nature pattern
// (or knights only).
inline void for_each_turns(int m, int k, bool knights_only, const std::function<void(const TurnSequence&)>& fn) {
  long players = 1;
  for (int i = 0; i < m; ++i) players *= k;
  const long natures = knights_only ? 1 : (1L << m);
  for (long code = 0; code < players; ++code) {
    for (long nat = 0; nat < natures; ++nat) {
      TurnSequence turns;
      long c = code;
      for (int t = 0; t < m; ++t, c /= k)
        turns.push_back({static_cast<int>(c % k), ((nat >> t) & 1) ? Nature::Lout : Nature::Knight});
      fn(turns);
    }
  }
}

// Every single-copy game with n <= max_n, k <= max_k, m <= n, every ranking
// profile and every turn sequence.
inline void for_each_small_game(int max_n, int max_k, bool knights_only, const std::function<void(const Game&)>& fn) {
  for (int n = 1; n <= max_n; ++n) {
    const auto table = MorselTable::of_names(names(n));
    for (int k = 1; k <= max_k; ++k)
      for_each_profile(n, k, [&](const PreferenceProfile& profile) {
        for (int m = 1; m <= n; ++m)
          for_each_turns(m, k, knights_only, [&](const TurnSequence& turns) { fn(Game{table, profile, turns}); });
      });
  }
}

}  // namespace gallant::testing
