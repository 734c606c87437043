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

// Seeded instance generation. Only the raw std::mt19937_64 stream is used
// (its output is fixed by the standard); bounded draws and shuffles are done
// here so the same seed gives the same instance on every platform.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gallant/core.hpp"

namespace gallant {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline std::string morsel_name(int index) {
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "m" + std::to_string(index);
}

struct GenParams {
  std::uint64_t seed = 0;
  int n = 5;
  int k = 2;
  std::optional<int> m;  // defaults to n
  double knight_probability = 0.5;
  int max_multiplicity = 1;
};

namespace detail {

inline MorselTable random_table(Rng& rng, int n, int max_multiplicity) {
  std::vector<MorselType> types;
  for (int left = n; left > 0;) {
    const int mult = rng.between(1, std::min(max_multiplicity, left));
    types.push_back({static_cast<int>(types.size()), morsel_name(static_cast<int>(types.size())), mult});
    left -= mult;
  }
  return MorselTable(std::move(types));
}

inline PreferenceProfile random_profile(Rng& rng, int k, int types) {
  PreferenceProfile out;
  for (int p = 0; p < k; ++p) {
    std::vector<std::int64_t> e(static_cast<std::size_t>(types));
    for (int i = 0; i < types; ++i) e[i] = i;
    rng.shuffle(e);
    out.push_back(Ranking::from_enjoyments(std::move(e)));
  }
  return out;
}

}  // namespace detail

inline Game generate_game(const GenParams& p) {
  const int m = p.m.value_or(p.n);
  if (p.n < 1) throw std::invalid_argument("n must be at least 1");
  if (p.k < 1) throw std::invalid_argument("k must be at least 1");
  if (m < 1 || m > p.n) throw std::invalid_argument("m must be in 1..n");
  if (!(p.knight_probability >= 0.0 && p.knight_probability <= 1.0))
    throw std::invalid_argument("knight probability must be in [0, 1]");
  if (p.max_multiplicity < 1) throw std::invalid_argument("multiplicity bound must be at least 1");

  Rng rng(p.seed);
  Game g;
  g.table = detail::random_table(rng, p.n, p.max_multiplicity);
  g.profile = detail::random_profile(rng, p.k, g.table.type_count());
  for (int t = 0; t < m; ++t) {
    const int player = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.k)));
    const bool knight = rng.unit() < p.knight_probability;
    g.turns.push_back({player, knight ? Nature::Knight : Nature::Lout});
  }
  g.validate();
  return g;
}

inline GroupGame generate_group_game(std::uint64_t seed, int n, int k, int max_multiplicity = 1) {
  if (n < 1 || k < 2 || max_multiplicity < 1) throw std::invalid_argument("bad group game bounds");
  Rng rng(seed);
  GroupGame g;
  g.table = detail::random_table(rng, n, max_multiplicity);
  g.profile = detail::random_profile(rng, k, g.table.type_count());
  for (int t = 0; t < n; ++t) g.speakers.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(k))));
  g.validate();
  return g;
}

// Instance `index` of a random corpus: sizes drawn up to the bounds, then a
// game generated from a seed derived from (seed, index).
inline Game random_instance(std::uint64_t seed, std::uint64_t index, int max_n, int max_k,
                            double knight_probability = 0.5, int max_multiplicity = 2) {
  Rng sizes(seed * 0x9E3779B97F4A7C15ULL + index);
  GenParams p;
  p.n = sizes.between(1, max_n);
  p.k = sizes.between(1, max_k);
  p.m = sizes.between(1, p.n);
  p.knight_probability = knight_probability;
  p.max_multiplicity = max_multiplicity;
  p.seed = sizes.next();
  return generate_game(p);
}

}  // namespace gallant
