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

// Division of the table under optimal play, without searching the game tree.
//
// Louts are greedy, so an all-lout game has exactly one play. Knight turns
// are moved behind every lout turn in reverse order and then played
// greedily; the resulting plates are the plates of every optimal play of
// the original game.

#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gallant/core.hpp"

namespace gallant {

// source[s] is the original turn index that transformed turn s came from.
struct TurnBijection {
  std::vector<int> source;
  bool operator==(const TurnBijection&) const = default;
};

struct TransformedTurns {
  TurnSequence turns;
  TurnBijection bijection;
};

// Greedy playout ignoring turn natures. Each mover takes the lowest free
// copy of their favourite remaining type. O(kT + m) after ranking setup.
inline PlaySequence greedy_playout(const MorselTable& table, const PreferenceProfile& profile,
                                   const TurnSequence& turns) {
  if (static_cast<int>(turns.size()) > table.total()) throw std::invalid_argument("m exceeds n");
  std::vector<int> remaining = table.multiplicities();
  std::vector<int> cursor(profile.size(), table.type_count() - 1);
  PlaySequence play;
  play.reserve(turns.size());
  for (const auto& turn : turns) {
    const auto& r = profile[turn.player];
    int& c = cursor[turn.player];
    while (remaining[r.type_at(c)] == 0) --c;
    const int type = r.type_at(c);
    play.push_back({type, table.type(type).multiplicity - remaining[type]});
    --remaining[type];
  }
  return play;
}

inline PlaySequence lout_playout(const Game& game) {
  for (const auto& t : game.turns)
    if (t.nature != Nature::Lout) throw std::invalid_argument("lout_playout needs an all-lout game");
  return greedy_playout(game.table, game.profile, game.turns);
}

enum class KnightOrder {
  Reversed,  // the correct transformation
  Kept,      // knights moved to the end without reversal; only for negative controls
};

inline TransformedTurns reverse_knights_transform(const TurnSequence& turns,
                                                  KnightOrder order = KnightOrder::Reversed) {
  TransformedTurns out;
  out.turns.reserve(turns.size());
  out.bijection.source.reserve(turns.size());
  std::vector<int> knights;
  knights.reserve(turns.size());
  for (std::size_t t = 0; t < turns.size(); ++t) {
    if (turns[t].nature == Nature::Lout) {
      out.turns.push_back(turns[t]);
      out.bijection.source.push_back(static_cast<int>(t));
    } else {
      knights.push_back(static_cast<int>(t));
    }
  }
  if (order == KnightOrder::Reversed) std::reverse(knights.begin(), knights.end());
  for (int t : knights) {
    out.turns.push_back({turns[t].player, Nature::Lout});
    out.bijection.source.push_back(t);
  }
  return out;
}

// The optimal play of the original game that corresponds, turn by turn, to
// the greedy play of the transformed game.
inline PlaySequence witness_play(const Game& game, KnightOrder order = KnightOrder::Reversed) {
  game.validate();
  const auto tr = reverse_knights_transform(game.turns, order);
  const auto lout = greedy_playout(game.table, game.profile, tr.turns);
  PlaySequence play(lout.size());
  for (std::size_t s = 0; s < lout.size(); ++s) play[tr.bijection.source[s]] = lout[s];
  return canonical_copies(play, game.table);
}

inline Division solve_division(const Game& game, KnightOrder order = KnightOrder::Reversed) {
  game.validate();
  const auto tr = reverse_knights_transform(game.turns, order);
  const auto lout = greedy_playout(game.table, game.profile, tr.turns);
  Division d;
  d.plates.assign(static_cast<std::size_t>(game.players()), Plate(game.table.type_count()));
  d.leftover.counts = game.table.multiplicities();
  for (std::size_t s = 0; s < lout.size(); ++s) {
    d.plates[tr.turns[s].player].add(lout[s].type);
    --d.leftover.counts[lout[s].type];
  }
  return d;
}

// Two players who each maximize their own total enjoyment, every morsel
// eaten. Solved as the knight game where player 1 ranks by reversed r2 and
// player 2 by reversed r1; turn natures in `order` are ignored.
inline Division kc_two_player(const MorselTable& table, const TurnSequence& order, const Ranking& r1,
                              const Ranking& r2) {
  for (const auto& t : order)
    if (t.player < 0 || t.player > 1) throw std::invalid_argument("two-player selfish game needs k = 2");
  if (static_cast<int>(order.size()) != table.total())
    throw std::invalid_argument("two-player selfish game needs every morsel consumed (m = n)");
  Game knights{table, {r2.reversed(), r1.reversed()}, {}};
  for (const auto& t : order) knights.turns.push_back({t.player, Nature::Knight});
  return solve_division(knights);
}

}  // namespace gallant
