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

// Brute-force subgame-perfect equilibria over the full game tree.
//
// Preferences may be partial orders, so a node can have several equilibrium
// outcomes. An outcome o reached through child c is achievable at a node iff
// o is achievable at c and every sibling c' has some achievable outcome o'
// that the mover does not strictly prefer to o. Sibling subtrees are
// disjoint, so their equilibrium selections are independent and this rule
// yields exactly the set of contingent outcomes over all equilibria.
//
// Outcome sets hold whole pick sequences, never divisions, so whether all
// optimal plays share a division is something the engine measures.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gallant/core.hpp"
#include "gallant/fast_solver.hpp"
#include "gallant/orders.hpp"

namespace gallant {

inline constexpr int kDefaultOracleCap = 7;

// Item cap for tree search; GALLANT_ORACLE_CAP overrides the default.
inline int oracle_cap() {
  if (const char* env = std::getenv("GALLANT_ORACLE_CAP")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultOracleCap;
}

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(int items, int cap)
      : std::runtime_error("instance has " + std::to_string(items) + " morsels; oracle cap is " +
                           std::to_string(cap)) {}
};

struct GameState {
  std::vector<int> remaining;  // copies left per type
  std::size_t turn = 0;
  PlaySequence history;

  static GameState root(const Game& g) { return {g.table.multiplicities(), 0, {}}; }

  GameState after(const Item& move) const {
    GameState s = *this;
    --s.remaining[move.type];
    ++s.turn;
    s.history.push_back(move);
    return s;
  }

  bool finished(const Game& g) const { return turn >= g.turns.size(); }
};

// Knight turns may take any remaining type; lout turns only the mover's
// favourite. Copies are interchangeable, so one canonical copy per type.
inline std::vector<Item> legal_moves(const GameState& s, const Game& g) {
  if (s.finished(g)) throw std::logic_error("no moves: game is over");
  const auto& turn = g.turns[s.turn];
  const auto canonical = [&](int type) { return Item{type, g.table.type(type).multiplicity - s.remaining[type]}; };
  if (turn.nature == Nature::Lout) {
    const auto& r = g.profile[turn.player];
    for (int rank = r.size() - 1; rank >= 0; --rank)
      if (s.remaining[r.type_at(rank)] > 0) return {canonical(r.type_at(rank))};
  }
  std::vector<Item> out;
  for (int t = 0; t < g.table.type_count(); ++t)
    if (s.remaining[t] > 0) out.push_back(canonical(t));
  return out;
}

struct MoveGenerator {
  std::function<std::vector<Item>(const GameState&, const Game&)> generate = legal_moves;
  // When false, moves depend only on (remaining, turn) and states may share memo entries.
  bool history_dependent = false;
};

// Returns true for edges to drop.
using EdgePredicate = std::function<bool(const GameState&, const Item&)>;

inline MoveGenerator remove_edges(MoveGenerator base, EdgePredicate drop, bool history_dependent = false) {
  MoveGenerator out;
  out.history_dependent = history_dependent || base.history_dependent;
  out.generate = [base = std::move(base), drop = std::move(drop)](const GameState& s, const Game& g) {
    auto moves = base.generate(s, g);
    std::erase_if(moves, [&](const Item& m) { return drop(s, m); });
    if (moves.empty()) throw std::logic_error("edge removal left a decision node without moves");
    return moves;
  };
  return out;
}

// An outcome as the engine sees it: the pick types and whatever plates the
// preference needs (own plates for the dinner, shared plates for groups).
struct Outcome {
  std::vector<int> types;
  std::vector<Plate> plates;
};

struct Preference {
  std::function<std::vector<Plate>(const std::vector<int>&)> plates;
  // Mover's view at `turn`: Less means the mover strictly prefers y.
  std::function<Order(const Outcome& x, const Outcome& y, std::size_t turn)> compare;
};

inline Preference knight_preference(const Game& g) {
  return {[&g](const std::vector<int>& types) { return plates_by_types(types, g); },
          [&g](const Outcome& x, const Outcome& y, std::size_t t) {
            return knight_compare_plates(x.plates, y.plates, x.types == y.types, g.turns[t].player, g.profile);
          }};
}

inline Preference lout_preference(const Game& g) {
  return {[&g](const std::vector<int>& types) { return plates_by_types(types, g); },
          [&g](const Outcome& x, const Outcome& y, std::size_t t) {
            const int me = g.turns[t].player;
            for (std::size_t s = 0; s < x.types.size(); ++s) {
              if (x.types[s] == y.types[s]) continue;
              if (g.turns[s].player != me) return Order::Incomparable;
              return g.profile[me].prefers(y.types[s], x.types[s]) ? Order::Less : Order::Greater;
            }
            return Order::Equal;
          }};
}

// Each player maximizes her own total enjoyment.
inline Preference selfish_preference(const Game& g) {
  return {[&g](const std::vector<int>& types) { return plates_by_types(types, g); },
          [&g](const Outcome& x, const Outcome& y, std::size_t t) {
            if (x.types == y.types) return Order::Equal;
            const int me = g.turns[t].player;
            std::int64_t ex = 0, ey = 0;
            for (std::size_t s = 0; s < x.types.size(); ++s) {
              if (g.turns[s].player != me) continue;
              ex += g.profile[me].enjoyment(x.types[s]);
              ey += g.profile[me].enjoyment(y.types[s]);
            }
            if (ex < ey) return Order::Less;
            if (ex > ey) return Order::Greater;
            return Order::Incomparable;
          }};
}

struct EngineOptions {
  int cap = oracle_cap();
  bool memoize = true;
};

using OutcomeSet = std::vector<PlaySequence>;

// Choice per decision node, keyed by the history's type sequence.
struct StrategyProfile {
  std::map<std::vector<int>, int> choice;
};

class EquilibriumEngine {
 public:
  EquilibriumEngine(const Game& game, std::optional<Preference> pref = std::nullopt, MoveGenerator moves = {},
                    EngineOptions opts = {})
      : game_(std::make_shared<const Game>(game)),
        pref_(pref ? std::move(*pref) : knight_preference(*game_)),
        moves_(std::move(moves)),
        opts_(opts) {
    game_->validate();
    if (game_->items() > opts_.cap) throw CapExceeded(game_->items(), opts_.cap);
  }

  EquilibriumEngine(const EquilibriumEngine&) = delete;
  EquilibriumEngine& operator=(const EquilibriumEngine&) = delete;

  const Game& game() const { return *game_; }
  const Preference& preference() const { return pref_; }
  const MoveGenerator& moves() const { return moves_; }

  // Achievable continuations from `s`, as type sequences for turns s.turn..m-1.
  const std::vector<std::vector<int>>& continuations(const GameState& s) {
    auto key = memo_key(s);
    if (opts_.memoize) {
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    auto result = compute(s);
    if (!opts_.memoize) {
      scratch_.push_back(std::move(result));
      return scratch_.back();
    }
    return memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  OutcomeSet optimal_outcome_set(const GameState& s) {
    OutcomeSet out;
    const auto prefix = types_of(s.history);
    for (const auto& suffix : continuations(s)) out.push_back(play_from_types(join(prefix, suffix), game_->table));
    return out;
  }

  OutcomeSet optimal_plays() { return optimal_outcome_set(GameState::root(*game_)); }

  std::set<Division> divisions() {
    std::set<Division> out;
    for (const auto& p : optimal_plays()) out.insert(plates_of(p, *game_));
    return out;
  }

  Outcome outcome(std::vector<int> types) const {
    Outcome o{std::move(types), {}};
    o.plates = pref_.plates(o.types);
    return o;
  }

  // A profile whose root outcome is `target`; `target` must be optimal.
  StrategyProfile realize(const PlaySequence& target) {
    StrategyProfile profile;
    const auto full = types_of(target);
    realize_from(GameState::root(*game_), full, profile);
    return profile;
  }

  // Edges that start no optimal play of the subgame at their node.
  std::set<std::pair<std::vector<int>, int>> unused_edges() {
    std::set<std::pair<std::vector<int>, int>> unused;
    std::set<std::vector<int>> seen;
    collect_unused(GameState::root(*game_), seen, unused);
    return unused;
  }

  std::vector<int> memo_key(const GameState& s) const {
    std::vector<int> key = s.remaining;
    key.push_back(static_cast<int>(s.turn));
    if (moves_.history_dependent)
      for (const auto& it : s.history) key.push_back(it.type);
    return key;
  }

 private:
  static std::vector<int> join(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }

  std::vector<std::vector<int>> compute(const GameState& s) {
    if (s.finished(*game_)) return {{}};
    const auto moves = moves_.generate(s, *game_);
    if (moves.empty()) throw std::logic_error("decision node without moves");
    const auto prefix = types_of(s.history);

    // Full outcomes per child, for comparison.
    std::vector<std::vector<Outcome>> child;
    child.reserve(moves.size());
    for (const auto& m : moves) {
      auto& outs = child.emplace_back();
      auto head = prefix;
      head.push_back(m.type);
      for (const auto& suffix : continuations(s.after(m))) outs.push_back(outcome(join(head, suffix)));
    }

    std::vector<std::vector<int>> result;
    for (std::size_t c = 0; c < moves.size(); ++c) {
      for (const auto& o : child[c]) {
        bool ok = true;
        for (std::size_t d = 0; d < moves.size() && ok; ++d) {
          if (d == c) continue;
          bool found = false;
          for (const auto& alt : child[d]) {
            if (pref_.compare(o, alt, s.turn) != Order::Less) {
              found = true;
              break;
            }
          }
          ok = found;
        }
        if (ok) result.emplace_back(o.types.begin() + static_cast<std::ptrdiff_t>(prefix.size()), o.types.end());
      }
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
  }

  void realize_from(const GameState& s, const std::vector<int>& target, StrategyProfile& profile) {
    if (s.finished(*game_)) return;
    const auto prefix = types_of(s.history);
    const int pick = target[s.turn];
    profile.choice[prefix] = pick;
    const auto goal = outcome(target);
    for (const auto& m : game_moves(s)) {
      const auto next = s.after(m);
      if (m.type == pick) {
        realize_from(next, target, profile);
        continue;
      }
      auto head = prefix;
      head.push_back(m.type);
      bool done = false;
      for (const auto& suffix : continuations(next)) {
        auto alt = outcome(join(head, suffix));
        if (pref_.compare(goal, alt, s.turn) != Order::Less) {
          realize_from(next, alt.types, profile);
          done = true;
          break;
        }
      }
      if (!done) throw std::logic_error("target is not an optimal outcome");
    }
  }

  void collect_unused(const GameState& s, std::set<std::vector<int>>& seen,
                      std::set<std::pair<std::vector<int>, int>>& unused) {
    if (s.finished(*game_)) return;
    auto key = memo_key(s);
    if (!seen.insert(key).second) return;
    std::set<int> used;
    for (const auto& suffix : continuations(s)) used.insert(suffix.front());
    for (const auto& m : game_moves(s)) {
      if (!used.count(m.type)) unused.emplace(key, m.type);
      collect_unused(s.after(m), seen, unused);
    }
  }

  std::vector<Item> game_moves(const GameState& s) const { return moves_.generate(s, *game_); }

  std::shared_ptr<const Game> game_;
  Preference pref_;
  MoveGenerator moves_;
  EngineOptions opts_;
  std::map<std::vector<int>, std::vector<std::vector<int>>> memo_;
  std::deque<std::vector<std::vector<int>>> scratch_;
};

inline OutcomeSet optimal_outcome_set(const GameState& s, const Game& game) {
  EquilibriumEngine engine(game);
  return engine.optimal_outcome_set(s);
}

inline OutcomeSet enumerate_optimal_plays(const Game& game, MoveGenerator moves = {}, EngineOptions opts = {}) {
  EquilibriumEngine engine(game, std::nullopt, std::move(moves), opts);
  return engine.optimal_plays();
}

inline std::set<Division> optimal_divisions(const Game& game) {
  EquilibriumEngine engine(game);
  return engine.divisions();
}

// Drops exactly the edges that no optimal play of their subgame uses.
inline MoveGenerator without_unused_edges(EquilibriumEngine& engine) {
  auto unused = engine.unused_edges();
  const bool by_history = engine.moves().history_dependent;
  return remove_edges(
      engine.moves(),
      [unused = std::move(unused), by_history](const GameState& s, const Item& m) {
        std::vector<int> key = s.remaining;
        key.push_back(static_cast<int>(s.turn));
        if (by_history)
          for (const auto& it : s.history) key.push_back(it.type);
        return unused.count({key, m.type}) > 0;
      },
      by_history);
}

struct EquilibriumCheck {
  bool ok = true;
  std::optional<std::vector<int>> counterexample;  // history of the first failing node
};

namespace detail {

inline std::vector<int> follow_profile(const GameState& s, const Game& g, const StrategyProfile& profile,
                                       const Preference& pref, const MoveGenerator& moves, EquilibriumCheck& check) {
  if (s.finished(g)) return types_of(s.history);
  const auto history = types_of(s.history);
  const auto it = profile.choice.find(history);
  if (it == profile.choice.end()) throw std::invalid_argument("strategy profile has no choice at a decision node");
  std::vector<std::vector<int>> outcomes;
  std::optional<std::size_t> chosen;
  for (const auto& m : moves.generate(s, g)) {
    if (m.type == it->second) chosen = outcomes.size();
    outcomes.push_back(follow_profile(s.after(m), g, profile, pref, moves, check));
  }
  if (!chosen) throw std::invalid_argument("strategy profile chooses an illegal move");
  Outcome best{outcomes[*chosen], pref.plates(outcomes[*chosen])};
  for (std::size_t c = 0; c < outcomes.size(); ++c) {
    if (c == *chosen) continue;
    Outcome alt{outcomes[c], pref.plates(outcomes[c])};
    if (pref.compare(best, alt, s.turn) == Order::Less && check.ok) {
      check.ok = false;
      check.counterexample = history;
    }
  }
  return outcomes[*chosen];
}

}  // namespace detail

// Every decision node must pick a child whose contingent outcome is maximal
// for the mover among the children's contingent outcomes.
inline EquilibriumCheck is_equilibrium(const StrategyProfile& profile, const Game& game,
                                       std::optional<Preference> pref = std::nullopt, const MoveGenerator& moves = {}) {
  game.validate();
  const Preference p = pref ? std::move(*pref) : knight_preference(game);
  EquilibriumCheck check;
  detail::follow_profile(GameState::root(game), game, profile, p, moves, check);
  return check;
}

// Backward induction under a strict total order on outcomes:
// better(a, b, turn) says the mover at `turn` ranks a above b.
inline StrategyProfile backward_induction_profile(
    const Game& game, const std::function<bool(const std::vector<int>&, const std::vector<int>&, std::size_t)>& better,
    const MoveGenerator& moves = {}) {
  StrategyProfile profile;
  std::function<std::vector<int>(const GameState&)> solve = [&](const GameState& s) {
    if (s.finished(game)) return types_of(s.history);
    std::optional<std::vector<int>> best;
    int best_move = -1;
    for (const auto& m : moves.generate(s, game)) {
      auto o = solve(s.after(m));
      if (!best || better(o, *best, s.turn)) {
        best = std::move(o);
        best_move = m.type;
      }
    }
    profile.choice[types_of(s.history)] = best_move;
    return *best;
  };
  solve(GameState::root(game));
  return profile;
}

// knight_key order, ties broken towards the lexicographically smaller play.
inline StrategyProfile knight_key_profile(const Game& game) {
  return backward_induction_profile(game, [&game](const std::vector<int>& a, const std::vector<int>& b, std::size_t t) {
    const int me = game.turns[t].player;
    const auto ka = knight_key(play_from_types(a, game.table), me, game);
    const auto kb = knight_key(play_from_types(b, game.table), me, game);
    if (ka != kb) return ka > kb;
    return a < b;
  });
}

// An equilibrium for a total refinement of the knight order is also an
// equilibrium for the knight order itself.
inline bool extension_equilibrium_check(const Game& game) {
  game.validate();
  if (game.items() > oracle_cap()) throw CapExceeded(game.items(), oracle_cap());
  return is_equilibrium(knight_key_profile(game), game).ok;
}

// Independent two-player oracle: plain backward induction where each mover
// maximizes her own total; ties go to the first maximal move.
inline Division selfish_backward_induction(const Game& game) {
  game.validate();
  if (game.items() > oracle_cap()) throw CapExceeded(game.items(), oracle_cap());
  std::map<std::vector<int>, std::vector<int>> memo;
  std::function<std::vector<int>(const GameState&)> solve = [&](const GameState& s) -> std::vector<int> {
    if (s.finished(game)) return {};
    auto key = s.remaining;
    key.push_back(static_cast<int>(s.turn));
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int me = game.turns[s.turn].player;
    std::vector<int> best;
    std::int64_t best_total = 0;
    bool have = false;
    for (int t = 0; t < game.table.type_count(); ++t) {
      if (s.remaining[t] == 0) continue;
      auto rest = solve(s.after({t, 0}));
      std::int64_t total = game.profile[me].enjoyment(t);
      for (std::size_t i = 0; i < rest.size(); ++i)
        if (game.turns[s.turn + 1 + i].player == me) total += game.profile[me].enjoyment(rest[i]);
      if (!have || total > best_total) {
        have = true;
        best_total = total;
        best.assign(1, t);
        best.insert(best.end(), rest.begin(), rest.end());
      }
    }
    return memo[key] = best;
  };
  return plates_of(play_from_types(solve(GameState::root(game)), game.table), game);
}

// Checks that every optimal play yields one division, equal to the fast
// solver's, and that the witness play is itself optimal.
struct TheoremCheck {
  std::size_t optimal_plays = 0;
  std::set<Division> divisions;
  Division solved;
  bool witness_optimal = false;
  bool pass() const { return divisions.size() == 1 && *divisions.begin() == solved && witness_optimal; }
};

inline TheoremCheck check_division_theorem(const Game& game, KnightOrder order = KnightOrder::Reversed,
                                           EngineOptions opts = {}) {
  EquilibriumEngine engine(game, std::nullopt, {}, opts);
  const auto plays = engine.optimal_plays();
  TheoremCheck out;
  out.optimal_plays = plays.size();
  for (const auto& p : plays) out.divisions.insert(plates_of(p, game));
  out.solved = solve_division(game, order);
  const auto w = witness_play(game, order);
  out.witness_optimal = std::find(plays.begin(), plays.end(), w) != plays.end();
  return out;
}

}  // namespace gallant
