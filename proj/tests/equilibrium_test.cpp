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

#include <gtest/gtest.h>

#include <cstdlib>
#include <set>
#include <vector>

#include "gallant/gallant.hpp"
#include "test_support.hpp"

namespace gallant {
namespace {

using testing::figure1;
using testing::play;

std::set<PlaySequence> as_set(const OutcomeSet& plays) { return {plays.begin(), plays.end()}; }

TEST(Oracle, Figure1) {
  const Game g = figure1();
  EquilibriumEngine engine(g);
  EXPECT_EQ(as_set(engine.optimal_plays()), (std::set<PlaySequence>{play(g, "a c b"), play(g, "b c a")}));
  const auto divisions = engine.divisions();
  ASSERT_EQ(divisions.size(), 1u);
  EXPECT_EQ(canonical_text(*divisions.begin(), g.table), "1: a b\n2: c\nleftover:");
}

TEST(Oracle, SubgameSets) {
  const Game g = figure1();
  // After player 1 takes c, player 2 gives player 1 the better of a and b.
  const auto after_c = GameState::root(g).after({2, 0});
  EXPECT_EQ(as_set(optimal_outcome_set(after_c, g)), (std::set<PlaySequence>{play(g, "c a b")}));
  const auto done = after_c.after({0, 0}).after({1, 0});
  EXPECT_EQ(optimal_outcome_set(done, g), (OutcomeSet{play(g, "c a b")}));
}

TEST(Oracle, LegalMoves) {
  const Game g = parse_game_spec("players 1\nmorsels a*2 b\nrank 1: a b\nturns 1K 1L\n");
  const auto root = GameState::root(g);
  EXPECT_EQ(legal_moves(root, g), (std::vector<Item>{{0, 0}, {1, 0}}));
  EXPECT_EQ(legal_moves(root.after({1, 0}), g), (std::vector<Item>{{0, 0}}));
  EXPECT_EQ(legal_moves(root.after({0, 0}), g), (std::vector<Item>{{1, 0}}));
  EXPECT_THROW(legal_moves(root.after({0, 0}).after({1, 0}), g), std::logic_error);
}

TEST(Oracle, CapIsEnforced) {
  GenParams p;
  p.n = 8;
  const Game eight = generate_game(p);
  EXPECT_THROW(EquilibriumEngine{eight}, CapExceeded);
  EXPECT_NO_THROW((EquilibriumEngine{eight, std::nullopt, {}, EngineOptions{8, true}}));
}

TEST(Oracle, CapFromEnvironment) {
  ::setenv("GALLANT_ORACLE_CAP", "9", 1);
  EXPECT_EQ(oracle_cap(), 9);
  EXPECT_EQ(EngineOptions{}.cap, 9);
  ::setenv("GALLANT_ORACLE_CAP", "junk", 1);
  EXPECT_EQ(oracle_cap(), kDefaultOracleCap);
  ::unsetenv("GALLANT_ORACLE_CAP");
  EXPECT_EQ(oracle_cap(), kDefaultOracleCap);
}

TEST(Oracle, MemoizationDoesNotChangeResults) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Game g = random_instance(seed, 11, 6, 3);
    EXPECT_EQ(enumerate_optimal_plays(g), enumerate_optimal_plays(g, {}, EngineOptions{7, false})) << to_spec_text(g);
  }
}

// Every optimal play of small games gives the fast solver's division.
TEST(Oracle, DivisionTheoremSmallExhaustive) {
  long games = 0;
  testing::for_each_small_game(3, 2, false, [&](const Game& g) {
    const auto check = check_division_theorem(g);
    ASSERT_TRUE(check.pass()) << to_spec_text(g);
    ++games;
  });
  EXPECT_GT(games, 1000);
}

TEST(Oracle, DivisionTheoremRandom) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Game g = random_instance(seed, 12, 6, 3, 0.5, 2);
    EXPECT_TRUE(check_division_theorem(g).pass()) << to_spec_text(g);
  }
}

// The unreversed transform must be caught by the oracle on some instance.
TEST(Oracle, DetectsTheKeptOrderMutant) {
  int caught = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Game g = random_instance(seed, 12, 6, 3, 0.5, 2);
    if (!check_division_theorem(g, KnightOrder::Kept).pass()) ++caught;
  }
  EXPECT_GT(caught, 0);
}

TEST(IsEquilibrium, Figure1Profiles) {
  const Game g = figure1();
  EquilibriumEngine engine(g);
  for (const auto& p : engine.optimal_plays()) {
    const auto profile = engine.realize(p);
    EXPECT_EQ(profile.choice.at({}), p.front().type);
    EXPECT_TRUE(is_equilibrium(profile, g).ok);
  }
  auto bad = engine.realize(play(g, "b c a"));
  bad.choice[{}] = 2;  // player 1 opens with c
  const auto check = is_equilibrium(bad, g);
  EXPECT_FALSE(check.ok);
  ASSERT_TRUE(check.counterexample.has_value());
  EXPECT_TRUE(check.counterexample->empty());
}

TEST(IsEquilibrium, RejectsIncompleteProfiles) {
  const Game g = figure1();
  StrategyProfile partial;
  partial.choice[{}] = 0;
  EXPECT_THROW(is_equilibrium(partial, g), std::invalid_argument);
}

TEST(IsEquilibrium, RealizedProfilesRandom) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Game g = random_instance(seed, 13, 5, 3);
    EquilibriumEngine engine(g);
    for (const auto& p : engine.optimal_plays()) EXPECT_TRUE(is_equilibrium(engine.realize(p), g).ok) << to_spec_text(g);
  }
}

TEST(IsEquilibrium, KnightKeyProfileSmallExhaustive) {
  testing::for_each_small_game(3, 3, true, [&](const Game& g) {
    ASSERT_TRUE(extension_equilibrium_check(g)) << to_spec_text(g);
  });
}

TEST(RemoveEdges, IdentityKeepsEverything) {
  const Game g = figure1();
  const auto keep_all = remove_edges({}, [](const GameState&, const Item&) { return false; });
  EXPECT_EQ(enumerate_optimal_plays(g, keep_all), enumerate_optimal_plays(g));
}

TEST(RemoveEdges, UnusedEdgesAreIrrelevant) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Game g = random_instance(seed, 14, 6, 3);
    EquilibriumEngine engine(g);
    const auto before = engine.optimal_plays();
    EXPECT_EQ(enumerate_optimal_plays(g, without_unused_edges(engine)), before) << to_spec_text(g);
  }
}

TEST(RemoveEdges, DroppingAUsedEdgeCanMatter) {
  const Game g = figure1();
  // Player 1 may no longer open with a.
  const auto no_a = remove_edges({}, [](const GameState& s, const Item& m) { return s.turn == 0 && m.type == 0; });
  EXPECT_EQ(as_set(enumerate_optimal_plays(g, no_a)), (std::set<PlaySequence>{play(g, "b c a")}));
  // Removing every move at a node is an error.
  const auto none = remove_edges({}, [](const GameState&, const Item&) { return true; });
  EXPECT_THROW(enumerate_optimal_plays(g, none), std::logic_error);
}

TEST(RemoveEdges, HistoryDependentGenerators) {
  const Game g = parse_game_spec("players 2\nmorsels a b c d\nrank 1: a b c d\nrank 2: d c b a\nturns 1K 2K 1K 2K\n");
  // Forbid d on the third turn only when the game opened with a.
  const auto odd = remove_edges(
      {}, [](const GameState& s, const Item& m) { return s.turn == 2 && m.type == 3 && s.history[0].type == 0; }, true);
  EquilibriumEngine engine(g, std::nullopt, odd);
  for (const auto& p : engine.optimal_plays())
    if (p[0].type == 0) {
      EXPECT_NE(p[2].type, 3);
    }
  EXPECT_EQ(enumerate_optimal_plays(g, without_unused_edges(engine)), engine.optimal_plays());
}

// With a lout order everyone grabs their favourite: one optimal play.
TEST(LoutPreference, CollapsesToGreedy) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Game g = random_instance(seed, 15, 6, 3);
    EquilibriumEngine engine(g, lout_preference(g));
    EXPECT_EQ(engine.optimal_plays(), (OutcomeSet{greedy_playout(g.table, g.profile, g.turns)})) << to_spec_text(g);
  }
}

// Lemma: a knight turn directly followed by a lout turn (and no later
// knight turn) can be swapped with it without changing the divisions.
TEST(SwapLemma, LastKnightBeforeLout) {
  int used = 0;
  for (std::uint64_t seed = 0; used < 100; ++seed) {
    const Game g = random_instance(seed, 16, 6, 3);
    int last = -1;
    for (int t = 0; t < g.length(); ++t)
      if (g.turns[t].nature == Nature::Knight) last = t;
    if (last < 0 || last + 1 >= g.length()) continue;
    Game swapped = g;
    std::swap(swapped.turns[last], swapped.turns[last + 1]);
    EXPECT_EQ(optimal_divisions(g), optimal_divisions(swapped)) << to_spec_text(g);
    ++used;
  }
}

// The selfish preference's optimal set contains the backward-induction outcome.
TEST(SelfishPreference, ContainsBackwardInduction) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenParams p;
    p.seed = seed;
    p.n = 1 + static_cast<int>(seed % 5);
    p.k = 2;
    p.knight_probability = 1.0;  // the selfish oracle ignores natures
    const Game g = generate_game(p);
    EquilibriumEngine engine(g, selfish_preference(g));
    EXPECT_TRUE(engine.divisions().count(selfish_backward_induction(g))) << to_spec_text(g);
  }
}

}  // namespace
}  // namespace gallant
