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

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gallant {

// A kind of morsel on the table. Copies of one type are interchangeable.
struct MorselType {
  int id = 0;
  std::string name;
  int multiplicity = 1;
  bool operator==(const MorselType&) const = default;
};

class MorselTable {
 public:
  MorselTable() = default;

  explicit MorselTable(std::vector<MorselType> types) : types_(std::move(types)) {
    if (types_.empty()) throw std::invalid_argument("table has no morsels");
    std::unordered_map<std::string, int> seen;
    for (std::size_t i = 0; i < types_.size(); ++i) {
      auto& t = types_[i];
      if (t.id != static_cast<int>(i)) throw std::invalid_argument("morsel ids must be dense");
      if (t.name.empty()) throw std::invalid_argument("empty morsel name");
      if (std::any_of(t.name.begin(), t.name.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n'; }))
        throw std::invalid_argument("morsel name contains whitespace: " + t.name);
      if (t.multiplicity < 1) throw std::invalid_argument("multiplicity must be positive: " + t.name);
      if (!seen.emplace(t.name, t.id).second) throw std::invalid_argument("duplicate morsel name: " + t.name);
      total_ += t.multiplicity;
    }
  }

  // Single-copy table with the given names.
  static MorselTable of_names(const std::vector<std::string>& names) {
    std::vector<MorselType> types;
    for (std::size_t i = 0; i < names.size(); ++i) types.push_back({static_cast<int>(i), names[i], 1});
    return MorselTable(std::move(types));
  }

  const std::vector<MorselType>& types() const { return types_; }
  const MorselType& type(int id) const { return types_.at(static_cast<std::size_t>(id)); }
  int type_count() const { return static_cast<int>(types_.size()); }
  int total() const { return total_; }

  std::optional<int> find(std::string_view name) const {
    for (const auto& t : types_)
      if (t.name == name) return t.id;
    return std::nullopt;
  }

  std::vector<int> multiplicities() const {
    std::vector<int> m;
    m.reserve(types_.size());
    for (const auto& t : types_) m.push_back(t.multiplicity);
    return m;
  }

  bool operator==(const MorselTable&) const = default;

 private:
  std::vector<MorselType> types_;
  int total_ = 0;
};

// A strict ranking of morsel types for one player. Higher rank is more
// enjoyable. Every ranking carries integer enjoyments consistent with it;
// when only an order is given the enjoyments are the rank values.
class Ranking {
 public:
  Ranking() = default;

  static Ranking from_enjoyments(std::vector<std::int64_t> enjoyment) {
    const auto n = enjoyment.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return enjoyment[a] < enjoyment[b]; });
    for (std::size_t r = 1; r < n; ++r)
      if (enjoyment[order[r]] == enjoyment[order[r - 1]]) throw std::invalid_argument("duplicate enjoyment value");
    Ranking out;
    out.enjoyment_ = std::move(enjoyment);
    out.type_at_ = std::move(order);
    out.rank_.resize(n);
    for (std::size_t r = 0; r < n; ++r) out.rank_[out.type_at_[r]] = static_cast<int>(r);
    return out;
  }

  // `ascending` lists every type id once, least enjoyable first.
  static Ranking from_ascending(const std::vector<int>& ascending) {
    const auto n = ascending.size();
    std::vector<std::int64_t> e(n, -1);
    for (std::size_t r = 0; r < n; ++r) {
      const int t = ascending[r];
      if (t < 0 || static_cast<std::size_t>(t) >= n || e[t] != -1)
        throw std::invalid_argument("ranking is not a bijection");
      e[t] = static_cast<std::int64_t>(r);
    }
    return from_enjoyments(std::move(e));
  }

  int size() const { return static_cast<int>(rank_.size()); }
  int rank(int type) const { return rank_[type]; }
  int type_at(int rank) const { return type_at_[rank]; }
  std::int64_t enjoyment(int type) const { return enjoyment_[type]; }
  const std::vector<std::int64_t>& enjoyments() const { return enjoyment_; }
  bool prefers(int a, int b) const { return rank_[a] > rank_[b]; }

  // Least enjoyable becomes most enjoyable; enjoyments are negated.
  Ranking reversed() const {
    std::vector<std::int64_t> e(enjoyment_.size());
    std::transform(enjoyment_.begin(), enjoyment_.end(), e.begin(), [](std::int64_t v) { return -v; });
    return from_enjoyments(std::move(e));
  }

  bool operator==(const Ranking& o) const { return enjoyment_ == o.enjoyment_; }

 private:
  std::vector<int> rank_;
  std::vector<int> type_at_;
  std::vector<std::int64_t> enjoyment_;
};

using PreferenceProfile = std::vector<Ranking>;

enum class Nature : std::uint8_t { Knight, Lout };

// Players are 0-indexed here; all text I/O is 1-indexed.
struct Turn {
  int player = 0;
  Nature nature = Nature::Knight;
  bool operator==(const Turn&) const = default;
};

using TurnSequence = std::vector<Turn>;

struct Game {
  MorselTable table;
  PreferenceProfile profile;
  TurnSequence turns;

  int players() const { return static_cast<int>(profile.size()); }
  int items() const { return table.total(); }
  int length() const { return static_cast<int>(turns.size()); }

  void validate() const {
    if (profile.empty()) throw std::invalid_argument("game needs at least one player");
    for (const auto& r : profile)
      if (r.size() != table.type_count()) throw std::invalid_argument("ranking does not cover every morsel type");
    if (turns.empty()) throw std::invalid_argument("game needs at least one turn");
    if (length() > items()) throw std::invalid_argument("m exceeds n");
    for (const auto& t : turns)
      if (t.player < 0 || t.player >= players()) throw std::invalid_argument("unknown player index in turns");
  }
};

// Group dinner: on each turn the speaker abstains and everyone else jointly
// picks one morsel to share. Every morsel is eaten.
struct GroupGame {
  MorselTable table;
  PreferenceProfile profile;
  std::vector<int> speakers;

  int players() const { return static_cast<int>(profile.size()); }

  void validate() const {
    if (players() < 2) throw std::invalid_argument("group game needs at least two players");
    for (const auto& r : profile)
      if (r.size() != table.type_count()) throw std::invalid_argument("ranking does not cover every morsel type");
    if (static_cast<int>(speakers.size()) != table.total())
      throw std::invalid_argument("group game needs exactly one speaker per morsel (m = n)");
    for (int s : speakers)
      if (s < 0 || s >= players()) throw std::invalid_argument("unknown player index in speakers");
  }
};

// One physical morsel: its type and which copy of that type.
struct Item {
  int type = 0;
  int copy = 0;
  auto operator<=>(const Item&) const = default;
};

using PlaySequence = std::vector<Item>;

inline std::vector<int> types_of(const PlaySequence& play) {
  std::vector<int> out;
  out.reserve(play.size());
  for (const auto& it : play) out.push_back(it.type);
  return out;
}

// Play with the given types where each pick takes the lowest unused copy.
inline PlaySequence play_from_types(const std::vector<int>& types, const MorselTable& table) {
  std::vector<int> next(static_cast<std::size_t>(table.type_count()), 0);
  PlaySequence play;
  play.reserve(types.size());
  for (int t : types) {
    if (t < 0 || t >= table.type_count() || next[t] >= table.type(t).multiplicity)
      throw std::invalid_argument("type sequence does not fit the table");
    play.push_back({t, next[t]++});
  }
  return play;
}

inline PlaySequence canonical_copies(const PlaySequence& play, const MorselTable& table) {
  return play_from_types(types_of(play), table);
}

// Multiset of morsel types, stored as a count per type.
struct Plate {
  std::vector<int> counts;

  Plate() = default;
  explicit Plate(int type_count) : counts(static_cast<std::size_t>(type_count), 0) {}

  int size() const { return std::accumulate(counts.begin(), counts.end(), 0); }
  bool empty() const { return size() == 0; }
  void add(int type, int count = 1) { counts[type] += count; }
  auto operator<=>(const Plate&) const = default;
};

struct Division {
  std::vector<Plate> plates;  // indexed by player
  Plate leftover;
  auto operator<=>(const Division&) const = default;
};

// Player i's plate is every type picked on i's turns; the leftover is what
// remains on the table.
inline Division plates_of(const PlaySequence& play, const Game& game) {
  const int types = game.table.type_count();
  if (play.size() != game.turns.size()) throw std::invalid_argument("play length does not match turn count");
  Division d;
  d.plates.assign(static_cast<std::size_t>(game.players()), Plate(types));
  d.leftover.counts = game.table.multiplicities();
  std::vector<std::vector<bool>> used(static_cast<std::size_t>(types));
  for (int t = 0; t < types; ++t) used[t].assign(static_cast<std::size_t>(game.table.type(t).multiplicity), false);
  for (std::size_t s = 0; s < play.size(); ++s) {
    const auto& it = play[s];
    if (it.type < 0 || it.type >= types || it.copy < 0 || it.copy >= game.table.type(it.type).multiplicity)
      throw std::invalid_argument("play references unknown morsel instance");
    if (used[it.type][it.copy]) throw std::invalid_argument("play repeats a morsel instance");
    used[it.type][it.copy] = true;
    d.plates[game.turns[s].player].add(it.type);
    d.leftover.counts[it.type] -= 1;
  }
  return d;
}

// Per-type plate counts of a type sequence; no instance bookkeeping.
inline std::vector<Plate> plates_by_types(const std::vector<int>& types, const Game& game) {
  std::vector<Plate> plates(static_cast<std::size_t>(game.players()), Plate(game.table.type_count()));
  for (std::size_t s = 0; s < types.size(); ++s) plates[game.turns[s].player].add(types[s]);
  return plates;
}

inline std::string plate_text(const Plate& p, const MorselTable& table) {
  std::string out;
  for (int t = 0; t < table.type_count(); ++t) {
    if (p.counts[t] == 0) continue;
    out += ' ';
    out += table.type(t).name;
    if (p.counts[t] > 1) out += " x" + std::to_string(p.counts[t]);
  }
  return out;
}

// "1: a b\n2: c\nleftover:" -- players ascending, types by id.
inline std::string canonical_text(const Division& d, const MorselTable& table) {
  std::string out;
  for (std::size_t i = 0; i < d.plates.size(); ++i)
    out += std::to_string(i + 1) + ":" + plate_text(d.plates[i], table) + "\n";
  out += "leftover:" + plate_text(d.leftover, table);
  return out;
}

// Inverse of canonical_text for a known table and player count.
inline Division parse_division(std::string_view text, const MorselTable& table, int players) {
  Division d;
  d.plates.assign(static_cast<std::size_t>(players), Plate(table.type_count()));
  d.leftover = Plate(table.type_count());
  std::vector<bool> seen(static_cast<std::size_t>(players) + 1, false);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("division line without ':'");
    const std::string head = line.substr(0, colon);
    Plate* plate = nullptr;
    std::size_t slot = 0;
    if (head == "leftover") {
      plate = &d.leftover;
    } else {
      int p = 0;
      try {
        p = std::stoi(head);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad division owner: " + head);
      }
      if (p < 1 || p > players) throw std::invalid_argument("unknown player index in division");
      plate = &d.plates[p - 1];
      slot = static_cast<std::size_t>(p);
    }
    if (seen[slot]) throw std::invalid_argument("division line repeated: " + head);
    seen[slot] = true;
    std::istringstream tok(line.substr(colon + 1));
    std::string word;
    int last = -1;
    while (tok >> word) {
      if (word.size() > 1 && word[0] == 'x' && last >= 0 &&
          std::all_of(word.begin() + 1, word.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        plate->counts[last] += std::stoi(word.substr(1)) - 1;
        last = -1;
        continue;
      }
      const auto id = table.find(word);
      if (!id) throw std::invalid_argument("unknown morsel in division: " + word);
      plate->add(*id);
      last = *id;
    }
  }
  return d;
}

}  // namespace gallant
