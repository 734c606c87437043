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

// Partial orders on plates and on play sequences.
//
// Plates of equal size are compared by pairwise comparison: A <= B when some
// bijection maps every morsel of A to a morsel of B that is at least as
// enjoyable. Play sequences are compared per player by the knight order
// (other players' plates first, own plate only when the others are
// unchanged), by the lout order (first differing pick), or, for a group of
// players, by Pareto dominance of the members' plates.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "gallant/core.hpp"

namespace gallant {

enum class Order : std::uint8_t { Less, Equal, Greater, Incomparable };

inline std::string_view to_string(Order o) {
  switch (o) {
    case Order::Less: return "Less";
    case Order::Equal: return "Equal";
    case Order::Greater: return "Greater";
    case Order::Incomparable: return "Incomparable";
  }
  return "?";
}

inline Order flip(Order o) {
  if (o == Order::Less) return Order::Greater;
  if (o == Order::Greater) return Order::Less;
  return o;
}

// Ranks of the plate's morsels, ascending.
inline std::vector<int> sorted_ranks(const Plate& p, const Ranking& r) {
  std::vector<int> out;
  for (int rank = 0; rank < r.size(); ++rank)
    out.insert(out.end(), static_cast<std::size_t>(p.counts[r.type_at(rank)]), rank);
  return out;
}

// Sorted-rank form of pairwise comparison: A <= B iff the i-th least
// enjoyable morsel of A is no better than the i-th least enjoyable of B,
// for every i. Both sorted sequences are walked in lockstep.
inline Order plate_compare(const Plate& a, const Plate& b, const Ranking& r) {
  const int size = a.size();
  if (size != b.size()) throw std::invalid_argument("plate sizes differ");
  struct Cursor {
    const Plate& plate;
    const Ranking& ranking;
    int rank = -1;
    int left = 0;
    int next() {
      while (left == 0) left = plate.counts[ranking.type_at(++rank)];
      --left;
      return rank;
    }
  };
  Cursor ca{a, r}, cb{b, r};
  bool le = true;
  bool ge = true;
  for (int i = 0; i < size && (le || ge); ++i) {
    const int x = ca.next();
    const int y = cb.next();
    le = le && x <= y;
    ge = ge && x >= y;
  }
  if (le && ge) return Order::Equal;
  if (le) return Order::Less;
  if (ge) return Order::Greater;
  return Order::Incomparable;
}

// The bijection definition, searched literally over all permutations.
inline Order plate_compare_bijection_oracle(const Plate& a, const Plate& b, const Ranking& r) {
  const auto ra = sorted_ranks(a, r);
  auto rb = sorted_ranks(b, r);
  if (ra.size() != rb.size()) throw std::invalid_argument("plate sizes differ");
  if (ra.size() + rb.size() > 8) throw std::invalid_argument("bijection oracle limited to 8 morsels in total");
  if (a.counts == b.counts) return Order::Equal;

  std::vector<std::size_t> perm(rb.size());
  std::iota(perm.begin(), perm.end(), 0);
  bool a_below = false;
  bool b_below = false;
  do {
    bool up = true;
    bool down = true;
    for (std::size_t i = 0; i < ra.size(); ++i) {
      up = up && ra[i] <= rb[perm[i]];
      down = down && rb[perm[i]] <= ra[i];
    }
    a_below = a_below || up;
    b_below = b_below || down;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (a_below) return Order::Less;
  if (b_below) return Order::Greater;
  return Order::Incomparable;
}

// Knight order for player `self`, given both plays' per-player plates.
// `identical` says whether the two plays are the same pick sequence.
inline Order knight_compare_plates(std::span<const Plate> x, std::span<const Plate> y, bool identical, int self,
                                   const PreferenceProfile& profile) {
  if (identical) return Order::Equal;
  bool all_le = true, all_ge = true, any_less = false, any_greater = false;
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (static_cast<int>(j) == self) continue;
    const Order c = plate_compare(x[j], y[j], profile[j]);
    all_le = all_le && (c == Order::Less || c == Order::Equal);
    all_ge = all_ge && (c == Order::Greater || c == Order::Equal);
    any_less = any_less || c == Order::Less;
    any_greater = any_greater || c == Order::Greater;
  }
  if (all_le && any_less) return Order::Less;
  if (all_ge && any_greater) return Order::Greater;
  if (all_le && all_ge) {
    const Order own = plate_compare(x[self], y[self], profile[self]);
    if (own == Order::Less || own == Order::Greater) return own;
  }
  // Same plates all round but a different pick order stays incomparable.
  return Order::Incomparable;
}

namespace detail {

inline void require_same_game(const PlaySequence& x, const PlaySequence& y, const Game& game) {
  if (x.size() != game.turns.size() || y.size() != game.turns.size())
    throw std::invalid_argument("plays do not belong to this game");
}

inline bool same_types(const PlaySequence& x, const PlaySequence& y) {
  return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                    [](const Item& a, const Item& b) { return a.type == b.type; });
}

}  // namespace detail

inline Order knight_compare(const PlaySequence& x, const PlaySequence& y, int player, const Game& game) {
  detail::require_same_game(x, y, game);
  const auto px = plates_by_types(types_of(x), game);
  const auto py = plates_by_types(types_of(y), game);
  return knight_compare_plates(px, py, detail::same_types(x, y), player, game.profile);
}

inline Order lout_compare(const PlaySequence& x, const PlaySequence& y, int player, const Game& game) {
  detail::require_same_game(x, y, game);
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x[t].type == y[t].type) continue;
    if (game.turns[t].player != player) return Order::Incomparable;
    return game.profile[player].prefers(y[t].type, x[t].type) ? Order::Less : Order::Greater;
  }
  return Order::Equal;
}

// Lexicographic key realizing alpha * own + sum(others) for small alpha > 0.
struct KnightKey {
  std::int64_t others_total = 0;
  std::int64_t own_total = 0;
  auto operator<=>(const KnightKey&) const = default;
};

inline KnightKey knight_key(const PlaySequence& x, int player, const Game& game) {
  if (x.size() != game.turns.size()) throw std::invalid_argument("play does not belong to this game");
  KnightKey key;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const int mover = game.turns[t].player;
    const auto e = game.profile[mover].enjoyment(x[t].type);
    (mover == player ? key.own_total : key.others_total) += e;
  }
  return key;
}

// Pareto dominance over the coalition's plates.
inline Order pareto_compare(std::span<const Plate> x, std::span<const Plate> y, std::span<const int> coalition,
                            const PreferenceProfile& profile) {
  if (coalition.empty()) throw std::invalid_argument("empty coalition");
  bool all_le = true, all_ge = true, any_less = false, any_greater = false;
  for (int j : coalition) {
    const Order c = plate_compare(x[j], y[j], profile[j]);
    all_le = all_le && (c == Order::Less || c == Order::Equal);
    all_ge = all_ge && (c == Order::Greater || c == Order::Equal);
    any_less = any_less || c == Order::Less;
    any_greater = any_greater || c == Order::Greater;
  }
  if (all_le && all_ge) return Order::Equal;
  if (all_le) return Order::Less;
  if (all_ge) return Order::Greater;
  return Order::Incomparable;
}

// Everyone except the speaker of turn `t`.
inline std::vector<int> coalition_of(const GroupGame& g, std::size_t t) {
  std::vector<int> out;
  for (int p = 0; p < g.players(); ++p)
    if (p != g.speakers[t]) out.push_back(p);
  return out;
}

// Per player: the morsels shared on turns where that player did not speak.
inline std::vector<Plate> partake_plates(const std::vector<int>& types, const GroupGame& g) {
  std::vector<Plate> out(static_cast<std::size_t>(g.players()), Plate(g.table.type_count()));
  for (std::size_t t = 0; t < types.size(); ++t)
    for (int p = 0; p < g.players(); ++p)
      if (p != g.speakers[t]) out[p].add(types[t]);
  return out;
}

inline Order group_pareto_compare(const PlaySequence& x, const PlaySequence& y, std::span<const int> coalition,
                                  const GroupGame& g) {
  if (x.size() != y.size() || x.size() > g.speakers.size())
    throw std::invalid_argument("plays do not belong to this group game");
  return pareto_compare(partake_plates(types_of(x), g), partake_plates(types_of(y), g), coalition, g.profile);
}

}  // namespace gallant
