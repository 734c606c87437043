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

// `gallant solve|verify|group|kc|gen|bench`. Results go to `out`,
// diagnostics to `err`; the return value is the process exit code.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gallant/gallant.hpp"
#include "json.hpp"

namespace gallant::cli {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,  // also spec parse errors
  kIo = 3,
  kCap = 4,
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return ss.str();
}

inline json names_json(const Plate& p, const MorselTable& table) {
  json out = json::array();
  for (int t = 0; t < table.type_count(); ++t)
    for (int c = 0; c < p.counts[t]; ++c) out.push_back(table.type(t).name);
  return out;
}

inline json division_json(const Division& d, const MorselTable& table) {
  json plates = json::array();
  for (const auto& p : d.plates) plates.push_back(names_json(p, table));
  return {{"plates", plates}, {"leftover", names_json(d.leftover, table)}, {"text", canonical_text(d, table)}};
}

inline json play_json(const PlaySequence& play, const MorselTable& table) {
  json out = json::array();
  for (const auto& it : play) out.push_back(table.type(it.type).name);
  return out;
}

inline std::string play_text(const PlaySequence& play, const MorselTable& table) {
  std::string out;
  for (const auto& it : play) out += (out.empty() ? "" : " ") + table.type(it.type).name;
  return out;
}

// Division text without the leftover line.
inline std::string plates_text(const Division& d, const MorselTable& table) {
  std::string out;
  for (std::size_t i = 0; i < d.plates.size(); ++i)
    out += std::to_string(i + 1) + ":" + plate_text(d.plates[i], table) + (i + 1 < d.plates.size() ? "\n" : "");
  return out;
}

struct Report {
  std::string command;
  std::string digest;
  json result;
  double elapsed_ms = 0;

  json to_json() const {
    return {{"schema", 1}, {"command", command}, {"digest", digest}, {"result", result}, {"elapsed_ms", elapsed_ms}};
  }
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Bounds like "n=5,k=3".
struct RandomBounds {
  int max_n = 5;
  int max_k = 3;
};

inline RandomBounds parse_bounds(const std::string& text) {
  RandomBounds b;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bound must look like n=5: " + part);
    const auto key = part.substr(0, eq);
    const int value = std::stoi(part.substr(eq + 1));
    if (value < 1) throw std::invalid_argument("bound must be positive: " + part);
    if (key == "n")
      b.max_n = value;
    else if (key == "k")
      b.max_k = value;
    else
      throw std::invalid_argument("unknown bound: " + key);
  }
  return b;
}

struct InstanceResult {
  std::size_t index = 0;
  bool pass = false;
  std::size_t optimal_plays = 0;
  std::size_t divisions = 0;
  std::string detail;
  std::string spec;
};

inline InstanceResult verify_instance(std::size_t index, const Game& game, KnightOrder order) {
  const auto check = check_division_theorem(game, order);
  InstanceResult r;
  r.index = index;
  r.pass = check.pass();
  r.optimal_plays = check.optimal_plays;
  r.divisions = check.divisions.size();
  if (!r.pass) {
    std::ostringstream d;
    d << r.divisions << " division(s) across " << r.optimal_plays << " optimal plays";
    if (r.divisions >= 1 && *check.divisions.begin() != check.solved) d << "; solver division differs";
    if (!check.witness_optimal) d << "; witness play is not optimal";
    d << "\nsolver:\n" << canonical_text(check.solved, game.table);
    for (const auto& div : check.divisions) d << "\noracle:\n" << canonical_text(div, game.table);
    r.detail = d.str();
    r.spec = to_spec_text(game);
  }
  return r;
}

// Runs `count` jobs on a small thread pool; results come back in index order.
template <typename Result>
std::vector<Result> parallel_map(std::size_t count, unsigned jobs, const std::function<Result(std::size_t)>& fn) {
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<Result> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

struct BenchResult {
  int n = 0;
  int k = 0;
  int repetitions = 0;
  double best_ms = 0;
};

struct Scaling {
  BenchResult base;
  BenchResult doubled;
  double ratio() const { return base.best_ms > 0 ? doubled.best_ms / base.best_ms : 0.0; }
};

// Best-of-`repetitions` wall times of solve_division on mixed-nature
// instances with n and 2n single-copy morsels, k players and m = n turns.
// The two sizes alternate so background noise hits both alike.
inline Scaling bench_scaling(int n, int k, int repetitions, std::uint64_t seed = 1) {
  std::vector<Game> games;
  for (int size : {n, 2 * n}) {
    GenParams p;
    p.seed = seed;
    p.n = size;
    p.k = k;
    games.push_back(generate_game(p));
  }
  Scaling s{{n, k, repetitions, 0}, {2 * n, k, repetitions, 0}};
  for (int i = 0; i <= repetitions; ++i) {
    for (int which = 0; which < 2; ++which) {
      Stopwatch sw;
      const auto d = solve_division(games[which]);
      const double ms = sw.ms();
      volatile int keep = d.leftover.size();
      (void)keep;
      if (i == 0) continue;  // warm-up
      auto& r = which == 0 ? s.base : s.doubled;
      r.best_ms = i == 1 ? ms : std::min(r.best_ms, ms);
    }
  }
  return s;
}

// Every (turn order, ranking pair) for n single-copy morsels and k = 2.
inline void for_each_kc_instance(int n, const std::function<void(const Game&)>& fn) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(morsel_name(i));
  const auto table = MorselTable::of_names(names);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::vector<Ranking> rankings;
  std::iota(perm.begin(), perm.end(), 0);
  do rankings.push_back(Ranking::from_ascending(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  for (int mask = 0; mask < (1 << n); ++mask) {
    TurnSequence turns;
    for (int t = 0; t < n; ++t) turns.push_back({(mask >> t) & 1, Nature::Knight});
    for (const auto& r1 : rankings)
      for (const auto& r2 : rankings) fn(Game{table, {r1, r2}, turns});
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential allocation among gallant knights and boorish louts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gallant 1.0.0");

  std::string spec_path;
  bool json_out = false;

  auto* solve = app.add_subcommand("solve", "Division of the table under optimal play");
  bool witness = false;
  solve->add_option("spec", spec_path, "Game spec file")->required();
  solve->add_flag("--witness", witness, "Also print an optimal play");
  solve->add_flag("--json", json_out, "Machine-readable report");

  auto* verify = app.add_subcommand("verify", "Check the fast solver against the equilibrium oracle");
  std::vector<std::string> random_args;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool no_reversal = false;
  verify->add_option("spec", spec_path, "Game spec file");
  verify->add_option("--random", random_args, "SEED COUNT BOUNDS, e.g. 42 500 n=5,k=3")->expected(3);
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--json", json_out, "Machine-readable report");
  verify->add_flag("--no-reversal", no_reversal, "Negative control: skip the knight reversal")->group("");

  auto* group = app.add_subcommand("group", "Group-decision dinner");
  bool check_conflict = false;
  group->add_option("spec", spec_path, "Group spec file (with a speakers line)")->required();
  group->add_flag("--check-conflict-free", check_conflict, "Verify every equilibrium is conflict-free");
  group->add_flag("--json", json_out, "Machine-readable report");

  auto* kc = app.add_subcommand("kc", "Two selfish players maximizing their own totals");
  bool kc_oracle = false;
  int kc_exhaustive = 0;
  kc->add_option("spec", spec_path, "Game spec file (k = 2, m = n; natures ignored)");
  kc->add_flag("--oracle", kc_oracle, "Cross-check against backward induction on totals");
  kc->add_option("--exhaustive", kc_exhaustive, "Sweep every instance with this many morsels")
      ->check(CLI::Range(1, 6));
  kc->add_flag("--json", json_out, "Machine-readable report");

  auto* gen = app.add_subcommand("gen", "Generate a random game spec");
  GenParams gp;
  int gen_m = 0;
  bool gen_group = false;
  gen->add_option("--seed", gp.seed, "Seed");
  gen->add_option("--n", gp.n, "Morsels")->check(CLI::PositiveNumber);
  gen->add_option("--k", gp.k, "Players")->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_m, "Turns (default n)");
  gen->add_option("--knight-prob", gp.knight_probability, "Probability a turn is a knight turn")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--max-mult", gp.max_multiplicity, "Largest multiplicity of a morsel type")
      ->check(CLI::PositiveNumber);
  gen->add_flag("--group", gen_group, "Emit a group spec (speakers instead of turns)");

  auto* bench = app.add_subcommand("bench", "Time the fast solver at n and 2n");
  int bench_n = 100000, bench_k = 10, bench_reps = 5;
  bench->add_option("--n", bench_n, "Morsels")->check(CLI::PositiveNumber);
  bench->add_option("--k", bench_k, "Players")->check(CLI::PositiveNumber);
  bench->add_option("--reps", bench_reps, "Repetitions (best time is kept)")->check(CLI::PositiveNumber);
  bench->add_flag("--json", json_out, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  Stopwatch clock;
  Report report;
  std::ostringstream text;
  int code = kOk;

  try {
    if (*solve) {
      report.command = "solve";
      const Game g = parse_game_spec(read_file(spec_path));
      report.digest = spec_digest(to_spec_text(g));
      const auto d = solve_division(g);
      report.result["division"] = division_json(d, g.table);
      text << canonical_text(d, g.table) << "\n";
      if (witness) {
        const auto w = witness_play(g);
        report.result["witness"] = play_json(w, g.table);
        text << "witness: " << play_text(w, g.table) << "\n";
      }
    } else if (*verify) {
      report.command = "verify";
      const auto order = no_reversal ? KnightOrder::Kept : KnightOrder::Reversed;
      std::vector<InstanceResult> results;
      std::vector<Game> games;
      if (!random_args.empty()) {
        const auto seed = std::stoull(random_args[0]);
        const auto count = std::stoull(random_args[1]);
        const auto bounds = parse_bounds(random_args[2]);
        for (std::uint64_t i = 0; i < count; ++i) {
          games.push_back(random_instance(seed, i, bounds.max_n, bounds.max_k));
          if (games.back().items() > oracle_cap()) throw CapExceeded(games.back().items(), oracle_cap());
        }
      } else if (!spec_path.empty()) {
        games.push_back(parse_game_spec(read_file(spec_path)));
      } else {
        err << "verify needs a spec file or --random SEED COUNT BOUNDS\n";
        return kUsage;
      }
      std::string all_specs;
      for (const auto& g : games) all_specs += to_spec_text(g);
      report.digest = spec_digest(all_specs);
      results = parallel_map<InstanceResult>(games.size(), jobs,
                                             [&](std::size_t i) { return verify_instance(i, games[i], order); });
      std::size_t passed = 0;
      json list = json::array();
      for (const auto& r : results) {
        passed += r.pass ? 1 : 0;
        list.push_back({{"index", r.index},
                        {"pass", r.pass},
                        {"optimal_plays", r.optimal_plays},
                        {"divisions", r.divisions}});
        if (!r.pass) {
          list.back()["detail"] = r.detail;
          list.back()["spec"] = r.spec;
          text << "FAIL instance " << r.index << ": " << r.detail << "\n--- counterexample spec ---\n" << r.spec;
        }
      }
      if (results.size() == 1 && results[0].pass)
        text << "pass: " << results[0].optimal_plays << " optimal plays, " << results[0].divisions << " division\n";
      else
        text << (passed == results.size() ? "pass" : "fail") << ": " << passed << "/" << results.size()
             << " instances\n";
      report.result = {{"instances", list}, {"passed", passed}, {"failed", results.size() - passed}};
      if (passed != results.size()) code = kVerifyFailed;
    } else if (*group) {
      report.command = "group";
      const GroupGame g = parse_group_spec(read_file(spec_path));
      report.digest = spec_digest(to_spec_text(g));
      const auto o = solve_group(g);
      text << "picks: " << play_text(o.picks, g.table) << "\n";
      json turns = json::array();
      for (std::size_t t = 0; t < o.picks.size(); ++t) {
        std::string sharers;
        json sh = json::array();
        for (int p : o.sharers[t]) {
          sharers += (sharers.empty() ? "" : " ") + std::to_string(p + 1);
          sh.push_back(p + 1);
        }
        text << "turn " << t + 1 << ": speaker " << g.speakers[t] + 1 << ", sharers " << sharers << ", pick "
             << g.table.type(o.picks[t].type).name << "\n";
        turns.push_back({{"speaker", g.speakers[t] + 1}, {"sharers", sh}, {"pick", g.table.type(o.picks[t].type).name}});
      }
      text << "partake:\n";
      json partake = json::array();
      for (std::size_t p = 0; p < o.partake.size(); ++p) {
        text << p + 1 << ":" << plate_text(o.partake[p], g.table) << "\n";
        partake.push_back(names_json(o.partake[p], g.table));
      }
      report.result = {{"picks", play_json(o.picks, g.table)}, {"turns", turns}, {"partake", partake}};
      if (check_conflict) {
        const auto r = conflict_free_check(g);
        text << "conflict-free: " << (r.conflict_free ? "true" : "false") << "\n";
        report.result["conflict_free"] = r.conflict_free;
      }
    } else if (*kc) {
      report.command = "kc";
      if (kc_exhaustive > 0) {
        std::size_t total = 0, agree = 0;
        for_each_kc_instance(kc_exhaustive, [&](const Game& g) {
          ++total;
          const auto fast = kc_two_player(g.table, g.turns, g.profile[0], g.profile[1]);
          if (!kc_oracle || fast == selfish_backward_induction(g)) ++agree;
        });
        report.digest = spec_digest("kc-exhaustive:" + std::to_string(kc_exhaustive));
        text << "instances: " << total << "\n";
        if (kc_oracle) text << "agree: " << (agree == total ? "true" : "false") << "\n";
        report.result = {{"instances", total}};
        if (kc_oracle) report.result["oracle_agree"] = agree == total;
        if (kc_oracle && agree != total) code = kVerifyFailed;
      } else {
        if (spec_path.empty()) {
          err << "kc needs a spec file or --exhaustive N\n";
          return kUsage;
        }
        const Game g = parse_game_spec(read_file(spec_path));
        report.digest = spec_digest(to_spec_text(g));
        if (g.players() != 2) {
          err << "kc needs exactly 2 players\n";
          return kUsage;
        }
        if (g.length() != g.items()) {
          err << "kc needs every morsel consumed (m = n)\n";
          return kUsage;
        }
        const auto d = kc_two_player(g.table, g.turns, g.profile[0], g.profile[1]);
        text << plates_text(d, g.table) << "\n";
        report.result["division"] = division_json(d, g.table);
        if (kc_oracle) {
          const bool agree = d == selfish_backward_induction(g);
          text << "agree: " << (agree ? "true" : "false") << "\n";
          report.result["oracle_agree"] = agree;
          if (!agree) code = kVerifyFailed;
        }
      }
    } else if (*gen) {
      if (gen_m > 0) gp.m = gen_m;
      if (gen_group) {
        if (gen_m > 0 && gen_m != gp.n) throw std::invalid_argument("group specs need m = n");
        out << to_spec_text(generate_group_game(gp.seed, gp.n, gp.k, gp.max_multiplicity));
      } else {
        out << to_spec_text(generate_game(gp));
      }
      return kOk;
    } else if (*bench) {
      report.command = "bench";
      report.digest = spec_digest("bench:" + std::to_string(bench_n) + ":" + std::to_string(bench_k));
      const auto scaling = bench_scaling(bench_n, bench_k, bench_reps);
      const auto& small = scaling.base;
      const auto& large = scaling.doubled;
      const double ratio = scaling.ratio();
      text << std::fixed << std::setprecision(3) << "n=" << small.n << " k=" << small.k << ": " << small.best_ms
           << " ms\n"
           << "n=" << large.n << " k=" << large.k << ": " << large.best_ms << " ms\n"
           << "ratio: " << ratio << "\n";
      report.result = {{"n", small.n},       {"k", small.k},       {"repetitions", bench_reps},
                       {"ms", small.best_ms}, {"ms_double", large.best_ms}, {"ratio", ratio}};
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (set GALLANT_ORACLE_CAP to raise it)\n";
    return kCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  report.elapsed_ms = clock.ms();
  if (json_out)
    out << report.to_json().dump(2) << "\n";
  else
    out << text.str();
  return code;
}

}  // namespace gallant::cli
