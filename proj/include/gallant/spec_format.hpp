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

// Line-oriented game-spec format:
//
//   players 2
//   morsels a b c            # or "morsels a*2 b c" for two copies of a
//   enjoy 1: 1 2 0           # integer enjoyments in morsel order
//   rank 2: a b c            # alternative: ascending, least enjoyable first
//   turns 1K 2K 1K           # K = knight turn, L = lout turn
//   speakers 1 2 3           # group games only
//
// `#` starts a comment. Players are 1-indexed.

#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gallant/core.hpp"

namespace gallant {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct SpecDocument {
  MorselTable table;
  PreferenceProfile profile;
  std::optional<TurnSequence> turns;
  std::optional<std::vector<int>> speakers;
};

namespace detail {

inline std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

template <typename Int>
std::optional<Int> to_int(std::string_view s) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// "enjoy 2: ..." -> player index (1-based) and the rest of the line.
inline std::pair<int, std::string> player_prefix(const std::string& rest, int line) {
  const auto colon = rest.find(':');
  if (colon == std::string::npos) throw ParseError(line, "expected '<player>:'");
  auto words = split_words(rest.substr(0, colon));
  if (words.size() != 1) throw ParseError(line, "expected a single player index before ':'");
  auto p = to_int<int>(words[0]);
  if (!p) throw ParseError(line, "bad player index: " + words[0]);
  return {*p, rest.substr(colon + 1)};
}

}  // namespace detail

inline SpecDocument parse_spec_document(std::string_view text) {
  using detail::split_words;
  using detail::to_int;

  std::optional<int> players;
  std::optional<MorselTable> table;
  std::vector<std::optional<Ranking>> rankings;
  SpecDocument doc;
  int turns_line = 0;
  int line_no = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto words = split_words(raw);
    if (words.empty()) continue;
    const std::string key = words[0];
    const std::string rest = raw.substr(raw.find(key) + key.size());

    if (key == "players") {
      if (players) throw ParseError(line_no, "duplicate players line");
      if (words.size() != 2) throw ParseError(line_no, "players expects one count");
      auto k = to_int<int>(words[1]);
      if (!k || *k < 1) throw ParseError(line_no, "player count must be a positive integer");
      players = *k;
      rankings.assign(static_cast<std::size_t>(*k), std::nullopt);
    } else if (key == "morsels") {
      if (table) throw ParseError(line_no, "duplicate morsels line");
      if (words.size() < 2) throw ParseError(line_no, "morsels line is empty");
      std::vector<MorselType> types;
      for (std::size_t w = 1; w < words.size(); ++w) {
        std::string name = words[w];
        int mult = 1;
        if (auto star = name.find('*'); star != std::string::npos) {
          auto m = to_int<int>(std::string_view(name).substr(star + 1));
          if (!m || *m < 1) throw ParseError(line_no, "bad multiplicity in " + name);
          mult = *m;
          name.erase(star);
        }
        if (name.empty()) throw ParseError(line_no, "empty morsel name");
        for (const auto& t : types)
          if (t.name == name) throw ParseError(line_no, "duplicate morsel name: " + name);
        types.push_back({static_cast<int>(types.size()), name, mult});
      }
      table = MorselTable(std::move(types));
    } else if (key == "enjoy" || key == "rank") {
      if (!players) throw ParseError(line_no, key + " before players line");
      if (!table) throw ParseError(line_no, key + " before morsels line");
      auto [p, values] = detail::player_prefix(rest, line_no);
      if (p < 1 || p > *players) throw ParseError(line_no, "unknown player index " + std::to_string(p));
      if (rankings[p - 1]) throw ParseError(line_no, "preferences for player " + std::to_string(p) + " given twice");
      auto vals = split_words(values);
      if (static_cast<int>(vals.size()) != table->type_count())
        throw ParseError(line_no, "expected " + std::to_string(table->type_count()) + " entries, got " +
                                      std::to_string(vals.size()));
      try {
        if (key == "enjoy") {
          std::vector<std::int64_t> e;
          for (const auto& v : vals) {
            auto x = to_int<std::int64_t>(v);
            if (!x) throw ParseError(line_no, "bad enjoyment value: " + v);
            e.push_back(*x);
          }
          rankings[p - 1] = Ranking::from_enjoyments(std::move(e));
        } else {
          std::vector<int> asc;
          for (const auto& v : vals) {
            auto id = table->find(v);
            if (!id) throw ParseError(line_no, "unknown morsel in ranking: " + v);
            asc.push_back(*id);
          }
          rankings[p - 1] = Ranking::from_ascending(asc);
        }
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (key == "turns") {
      if (doc.turns) throw ParseError(line_no, "duplicate turns line");
      if (!players) throw ParseError(line_no, "turns before players line");
      TurnSequence turns;
      for (std::size_t w = 1; w < words.size(); ++w) {
        const auto& tok = words[w];
        const char nat = tok.empty() ? '?' : tok.back();
        if (tok.size() < 2 || (nat != 'K' && nat != 'L'))
          throw ParseError(line_no, "turn must look like 1K or 2L: " + tok);
        auto p = to_int<int>(std::string_view(tok).substr(0, tok.size() - 1));
        if (!p) throw ParseError(line_no, "bad turn: " + tok);
        if (*p < 1 || *p > *players) throw ParseError(line_no, "unknown player index in turns: " + tok);
        turns.push_back({*p - 1, nat == 'K' ? Nature::Knight : Nature::Lout});
      }
      if (turns.empty()) throw ParseError(line_no, "turns line is empty");
      doc.turns = std::move(turns);
      turns_line = line_no;
    } else if (key == "speakers") {
      if (doc.speakers) throw ParseError(line_no, "duplicate speakers line");
      if (!players) throw ParseError(line_no, "speakers before players line");
      std::vector<int> sp;
      for (std::size_t w = 1; w < words.size(); ++w) {
        auto p = to_int<int>(words[w]);
        if (!p || *p < 1 || *p > *players) throw ParseError(line_no, "unknown player index in speakers: " + words[w]);
        sp.push_back(*p - 1);
      }
      if (sp.empty()) throw ParseError(line_no, "speakers line is empty");
      doc.speakers = std::move(sp);
    } else {
      throw ParseError(line_no, "unknown directive: " + key);
    }
  }

  if (!players) throw ParseError(line_no, "missing players line");
  if (!table) throw ParseError(line_no, "missing morsels line");
  for (int p = 0; p < *players; ++p)
    if (!rankings[p]) throw ParseError(line_no, "missing preferences for player " + std::to_string(p + 1));
  if (doc.turns && static_cast<int>(doc.turns->size()) > table->total())
    throw ParseError(turns_line, "m exceeds n (" + std::to_string(doc.turns->size()) + " turns, " +
                                     std::to_string(table->total()) + " morsels)");
  doc.table = std::move(*table);
  for (auto& r : rankings) doc.profile.push_back(std::move(*r));
  return doc;
}

inline Game parse_game_spec(std::string_view text) {
  auto doc = parse_spec_document(text);
  if (!doc.turns) throw ParseError(0, "missing turns line");
  Game g{std::move(doc.table), std::move(doc.profile), std::move(*doc.turns)};
  g.validate();
  return g;
}

inline GroupGame parse_group_spec(std::string_view text) {
  auto doc = parse_spec_document(text);
  if (!doc.speakers) throw ParseError(0, "missing speakers line");
  if (static_cast<int>(doc.speakers->size()) != doc.table.total())
    throw ParseError(0, "group game needs one speaker per morsel (m = n)");
  GroupGame g{std::move(doc.table), std::move(doc.profile), std::move(*doc.speakers)};
  if (g.players() < 2) throw ParseError(0, "group game needs at least two players");
  g.validate();
  return g;
}

namespace detail {

inline std::string header_text(const MorselTable& table, const PreferenceProfile& profile) {
  std::string out = "players " + std::to_string(profile.size()) + "\nmorsels";
  for (const auto& t : table.types()) {
    out += ' ' + t.name;
    if (t.multiplicity > 1) out += '*' + std::to_string(t.multiplicity);
  }
  out += '\n';
  for (std::size_t p = 0; p < profile.size(); ++p) {
    out += "enjoy " + std::to_string(p + 1) + ":";
    for (auto e : profile[p].enjoyments()) out += ' ' + std::to_string(e);
    out += '\n';
  }
  return out;
}

}  // namespace detail

inline std::string turn_text(const Turn& t) {
  return std::to_string(t.player + 1) + (t.nature == Nature::Knight ? "K" : "L");
}

inline std::string turns_text(const TurnSequence& turns) {
  std::string out;
  for (const auto& t : turns) out += (out.empty() ? "" : " ") + turn_text(t);
  return out;
}

// Canonical spec text: no comments, single spaces, enjoyments always explicit.
inline std::string to_spec_text(const Game& g) {
  return detail::header_text(g.table, g.profile) + "turns " + turns_text(g.turns) + "\n";
}

inline std::string to_spec_text(const GroupGame& g) {
  std::string out = detail::header_text(g.table, g.profile) + "speakers";
  for (int s : g.speakers) out += ' ' + std::to_string(s + 1);
  return out + "\n";
}

// FNV-1a 64 over the canonical spec text, as 16 hex digits.
inline std::string spec_digest(std::string_view canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
  return out;
}

}  // namespace gallant
