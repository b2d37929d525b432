#pragma once

// Reference implementations used to cross-check the library. Everything here
// is written directly from the definitions with plain recursion and O(n^2*m)
// scans, deliberately sharing no code with the library internals beyond the
// Instance/Allocation value types.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/prng.hpp"

namespace oracle {

using fairdiv::Allocation;
using fairdiv::Instance;
using fairdiv::Rational;

inline std::vector<std::vector<int>> all_allocations(const Instance& inst) {
  std::vector<std::vector<int>> out;
  std::vector<int> owner(inst.m, 0);
  const auto recurse = [&](auto&& self, int g) -> void {
    if (g == inst.m) {
      out.push_back(owner);
      return;
    }
    for (int a = 0; a < inst.n; ++a) {
      owner[g] = a;
      self(self, g + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

inline Rational bundle_value(const Instance& inst, const std::vector<int>& owner, int viewer,
                             int holder) {
  Rational total = 0;
  for (int g = 0; g < inst.m; ++g)
    if (owner[g] == holder) total += inst.value(viewer, g);
  return total;
}

inline std::vector<Rational> utils_of(const Instance& inst, const std::vector<int>& owner) {
  std::vector<Rational> utils(inst.n, Rational(0));
  for (int g = 0; g < inst.m; ++g) utils[owner[g]] += inst.value(owner[g], g);
  return utils;
}

inline Rational welfare_of(const Instance& inst, const std::vector<int>& owner) {
  Rational total = 0;
  for (const Rational& u : utils_of(inst, owner)) total += u;
  return total;
}

// Literal definition: i accepts j's bundle if some single removal kills the
// envy (an empty bundle cannot be envied).
inline bool ef1(const Instance& inst, const std::vector<int>& owner) {
  for (int i = 0; i < inst.n; ++i) {
    const Rational own = bundle_value(inst, owner, i, i);
    for (int j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      const Rational other = bundle_value(inst, owner, i, j);
      if (own >= other) continue;
      bool fixed = false;
      for (int g = 0; g < inst.m && !fixed; ++g)
        if (owner[g] == j && own >= other - inst.value(i, g)) fixed = true;
      if (!fixed) return false;
    }
  }
  return true;
}

// Literal definition: every single removal must kill the envy.
inline bool efx(const Instance& inst, const std::vector<int>& owner) {
  for (int i = 0; i < inst.n; ++i) {
    const Rational own = bundle_value(inst, owner, i, i);
    for (int j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      const Rational other = bundle_value(inst, owner, i, j);
      for (int g = 0; g < inst.m; ++g)
        if (owner[g] == j && own < other - inst.value(i, g)) return false;
    }
  }
  return true;
}

inline bool balanced(const std::vector<int>& owner, int n) {
  std::vector<int> sizes(n, 0);
  for (int a : owner) ++sizes[a];
  return *std::max_element(sizes.begin(), sizes.end()) -
             *std::min_element(sizes.begin(), sizes.end()) <=
         1;
}

inline bool dominates(const Instance& inst, const std::vector<int>& a,
                      const std::vector<int>& b) {
  const std::vector<Rational> ua = utils_of(inst, a);
  const std::vector<Rational> ub = utils_of(inst, b);
  bool strict = false;
  for (int i = 0; i < inst.n; ++i) {
    if (ua[i] < ub[i]) return false;
    if (ua[i] > ub[i]) strict = true;
  }
  return strict;
}

inline bool pareto_optimal(const Instance& inst, const std::vector<int>& owner,
                           const std::vector<std::vector<int>>& universe) {
  for (const std::vector<int>& other : universe)
    if (dominates(inst, other, owner)) return false;
  return true;
}

// --- maximizer sets over explicit keys -----------------------------------

inline std::pair<int, Rational> nash_key(const std::vector<Rational>& utils) {
  int positives = 0;
  Rational product = 1;
  for (const Rational& u : utils)
    if (u > 0) {
      ++positives;
      product *= u;
    }
  return {positives, product};
}

inline bool nash_less(const std::pair<int, Rational>& a, const std::pair<int, Rational>& b) {
  if (a.first != b.first) return a.first < b.first;
  return a.second < b.second;
}

template <typename Key, typename Less>
std::vector<std::vector<int>> argmax_by(const std::vector<std::vector<int>>& universe, Key key,
                                        Less less) {
  std::vector<std::vector<int>> best;
  std::optional<decltype(key(universe.front()))> top;
  for (const std::vector<int>& owner : universe) {
    auto k = key(owner);
    if (!top || less(*top, k)) {
      top = k;
      best.assign(1, owner);
    } else if (!less(k, *top)) {
      best.push_back(owner);
    }
  }
  return best;
}

inline std::vector<std::vector<int>> welfare_max_set(
    const Instance& inst, const std::vector<std::vector<int>>& universe) {
  return argmax_by(
      universe, [&](const std::vector<int>& o) { return welfare_of(inst, o); },
      [](const Rational& a, const Rational& b) { return a < b; });
}

inline std::vector<std::vector<int>> mnw_set(const Instance& inst,
                                             const std::vector<std::vector<int>>& universe) {
  return argmax_by(
      universe, [&](const std::vector<int>& o) { return nash_key(utils_of(inst, o)); },
      [](const std::pair<int, Rational>& a, const std::pair<int, Rational>& b) {
        return nash_less(a, b);
      });
}

inline std::vector<std::vector<int>> mew_set(const Instance& inst,
                                             const std::vector<std::vector<int>>& universe) {
  return argmax_by(
      universe,
      [&](const std::vector<int>& o) {
        const std::vector<Rational> utils = utils_of(inst, o);
        return *std::min_element(utils.begin(), utils.end());
      },
      [](const Rational& a, const Rational& b) { return a < b; });
}

inline std::vector<std::vector<int>> leximin_set(
    const Instance& inst, const std::vector<std::vector<int>>& universe) {
  return argmax_by(
      universe,
      [&](const std::vector<int>& o) {
        std::vector<Rational> utils = utils_of(inst, o);
        std::sort(utils.begin(), utils.end());
        return utils;
      },
      [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
      });
}

// Plain turn-taking simulation: each agent in `order` repeatedly takes the
// remaining good it values most, lowest index on ties.
inline std::vector<int> rr_sim(const Instance& inst, const std::vector<int>& order) {
  std::vector<int> owner(inst.m, -1);
  for (int t = 0; t < inst.m; ++t) {
    const int a = order[static_cast<std::size_t>(t) % order.size()];
    int pick = -1;
    for (int g = 0; g < inst.m; ++g)
      if (owner[g] == -1 && (pick == -1 || inst.value(a, g) > inst.value(a, pick))) pick = g;
    owner[pick] = a;
  }
  return owner;
}

// --- corpus helpers --------------------------------------------------------

inline Instance from_ints(std::vector<std::vector<long long>> rows) {
  std::vector<std::vector<Rational>> raw;
  raw.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Rational> parsed;
    parsed.reserve(row.size());
    for (long long v : row) parsed.emplace_back(v);
    raw.push_back(std::move(parsed));
  }
  return fairdiv::make_instance(static_cast<int>(rows.size()), std::move(raw));
}

inline Instance seeded_instance(std::uint64_t seed, int n, int m) {
  fairdiv::SplitMix64 rng(fairdiv::mix_seed(seed, 0x9e3779b97f4a7c15ULL));
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
  for (int a = 0; a < n; ++a) {
    bool any = false;
    for (int g = 0; g < m; ++g) {
      const std::uint64_t w = rng.below(11);
      rows[a][g] = Rational(w);
      any = any || w > 0;
    }
    if (!any) rows[a][static_cast<int>(rng.below(static_cast<std::uint64_t>(m)))] = 1;
  }
  return fairdiv::make_instance(n, std::move(rows));
}

}  // namespace oracle
