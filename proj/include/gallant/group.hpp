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

// Group dinners: each turn the non-speakers jointly pick a morsel and share
// it. With every ranking reversed this is the all-knight game in speaking
// order, since a player's shared morsels are the complement of what she
// would eat as the speaking knight.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gallant/core.hpp"
#include "gallant/equilibrium.hpp"
#include "gallant/fast_solver.hpp"
#include "gallant/orders.hpp"

namespace gallant {

inline Game group_to_knight(const GroupGame& g) {
  g.validate();
  Game out{g.table, {}, {}};
  for (const auto& r : g.profile) out.profile.push_back(r.reversed());
  for (int s : g.speakers) out.turns.push_back({s, Nature::Knight});
  return out;
}

struct GroupOutcome {
  PlaySequence picks;
  std::vector<std::vector<int>> sharers;  // per turn
  std::vector<Plate> partake;             // per player
};

inline GroupOutcome solve_group(const GroupGame& g) {
  GroupOutcome out;
  out.picks = witness_play(group_to_knight(g));
  for (std::size_t t = 0; t < g.speakers.size(); ++t) out.sharers.push_back(coalition_of(g, t));
  out.partake = partake_plates(types_of(out.picks), g);
  return out;
}

// The group tree as a game: speakers hold the turns, every move is open.
inline Game group_tree_game(const GroupGame& g) {
  g.validate();
  Game out{g.table, g.profile, {}};
  for (int s : g.speakers) out.turns.push_back({s, Nature::Knight});
  return out;
}

// Each turn's coalition prefers Pareto improvements of its members' shared
// plates, judged with `judged` rankings.
inline Preference group_preference(const GroupGame& g, const PreferenceProfile& judged) {
  return {[&g](const std::vector<int>& types) { return partake_plates(types, g); },
          [&g, &judged](const Outcome& x, const Outcome& y, std::size_t t) {
            return pareto_compare(x.plates, y.plates, coalition_of(g, t), judged);
          }};
}

// Partake divisions over every optimal play of the group tree.
inline std::set<std::vector<Plate>> group_partake_divisions(const GroupGame& g, EngineOptions opts = {}) {
  const Game tree = group_tree_game(g);
  EquilibriumEngine engine(tree, group_preference(g, g.profile), {}, opts);
  std::set<std::vector<Plate>> out;
  for (const auto& p : engine.optimal_plays()) out.insert(partake_plates(types_of(p), g));
  return out;
}

struct ConflictFreeReport {
  bool conflict_free = true;
  std::map<std::vector<int>, int> witness;     // node history -> a choice optimal for every member
  std::optional<std::vector<int>> violation;  // first node where some equilibrium is not conflict-free
};

// Builds the group tree under Pareto preferences (optionally judged with a
// different profile) and checks, at every node and for every equilibrium
// outcome o with every admissible sibling outcome o', that no coalition
// member would rather have o'.
inline ConflictFreeReport conflict_free_check(const GroupGame& g,
                                              const std::optional<PreferenceProfile>& equilibrium_profile = std::nullopt,
                                              EngineOptions opts = {}) {
  const Game tree = group_tree_game(g);
  const PreferenceProfile& judged = equilibrium_profile ? *equilibrium_profile : g.profile;
  EquilibriumEngine engine(tree, group_preference(g, judged), {}, opts);
  const auto& pref = engine.preference();

  ConflictFreeReport report;
  std::set<std::vector<int>> seen;
  std::function<void(const GameState&)> visit = [&](const GameState& s) {
    if (s.finished(tree) || !seen.insert(engine.memo_key(s)).second) return;
    const auto prefix = types_of(s.history);
    const auto coalition = coalition_of(g, s.turn);
    const auto moves = legal_moves(s, tree);

    std::vector<std::vector<Outcome>> child;
    for (const auto& m : moves) {
      auto& outs = child.emplace_back();
      auto head = prefix;
      head.push_back(m.type);
      for (const auto& suffix : engine.continuations(s.after(m))) {
        auto full = head;
        full.insert(full.end(), suffix.begin(), suffix.end());
        outs.push_back(engine.outcome(std::move(full)));
      }
    }
    const auto& achievable = engine.continuations(s);
    if (!achievable.empty()) report.witness[prefix] = achievable.front().front();

    for (std::size_t c = 0; c < moves.size(); ++c) {
      for (const auto& o : child[c]) {
        std::vector<int> suffix(o.types.begin() + static_cast<std::ptrdiff_t>(prefix.size()), o.types.end());
        if (!std::binary_search(achievable.begin(), achievable.end(), suffix)) continue;
        for (std::size_t d = 0; d < moves.size(); ++d) {
          if (d == c) continue;
          for (const auto& alt : child[d]) {
            if (pref.compare(o, alt, s.turn) == Order::Less) continue;  // never paired with o
            for (int j : coalition) {
              if (plate_compare(o.plates[j], alt.plates[j], g.profile[j]) == Order::Less && report.conflict_free) {
                report.conflict_free = false;
                report.violation = prefix;
              }
            }
          }
        }
      }
    }
    for (const auto& m : moves) visit(s.after(m));
  };
  visit(GameState::root(tree));
  return report;
}

}  // namespace gallant
