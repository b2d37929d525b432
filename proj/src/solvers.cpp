#include "fairdiv/solvers.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "fairdiv/checkers.hpp"
#include "fairdiv/enumerate.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

struct TagEntry {
  PropertyId id;
  const char* tag;
};

constexpr TagEntry kTags[] = {
    {PropertyId::Ef1, "ef1"}, {PropertyId::Efx, "efx"}, {PropertyId::Bal, "bal"},
    {PropertyId::Po, "po"},   {PropertyId::Rr, "rr"},   {PropertyId::Mnw, "mnw"},
    {PropertyId::Mew, "mew"}, {PropertyId::Lex, "lex"},
};

std::uint64_t saturated_mul(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  if (a != 0 && b > cap / a) return cap;
  return a * b;
}

std::uint64_t ordering_work(int n, int m) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f = saturated_mul(f, static_cast<std::uint64_t>(k));
  return saturated_mul(f, static_cast<std::uint64_t>(m));
}

/// All allocations maximizing key_of(utility vector); keys are totally ordered
/// by operator< / operator==. Owners come out in lexicographic order because
/// enumeration chunks are merged in index order.
template <typename KeyFn>
std::vector<Allocation> argmax_set(const Instance& inst, std::uint64_t budget, unsigned workers,
                                   KeyFn key_of) {
  using Key = decltype(key_of(std::declval<const UtilityVector&>()));
  struct State {
    std::optional<Key> key;
    std::vector<std::vector<int>> owners;
  };
  auto result = reduce_allocations<State>(
      inst, budget, workers, [] { return State{}; },
      [&](State& s, const std::vector<int>& owner, const UtilityVector& util, const Rational&) {
        Key k = key_of(util);
        if (!s.key || *s.key < k) {
          s.key = std::move(k);
          s.owners.clear();
          s.owners.push_back(owner);
        } else if (*s.key == k) {
          s.owners.push_back(owner);
        }
      },
      [](State& acc, State&& other) {
        if (!other.key) return;
        if (!acc.key || *acc.key < *other.key) {
          acc = std::move(other);
        } else if (*acc.key == *other.key) {
          for (auto& o : other.owners) acc.owners.push_back(std::move(o));
        }
      });
  std::vector<Allocation> out;
  out.reserve(result.owners.size());
  for (auto& o : result.owners) out.push_back(Allocation{std::move(o)});
  if (out.empty()) throw std::logic_error("maximizer search over a nonempty set came back empty");
  return out;
}

UtilityVector sorted_ascending(const UtilityVector& utils) {
  UtilityVector key = utils;
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

std::string property_tag(PropertyId property) {
  for (const TagEntry& e : kTags)
    if (e.id == property) return e.tag;
  throw std::logic_error("unknown property id");
}

PropertyId parse_property(const std::string& tag) {
  for (const TagEntry& e : kTags)
    if (tag == e.tag) return e.id;
  throw ParseError("unknown property '" + tag + "' (expected ef1, efx, bal, po, rr, mnw, mew, or lex)");
}

NashValue nash_value(const UtilityVector& utils) {
  NashValue v;
  for (const Rational& u : utils) {
    if (u > 0) {
      ++v.positive_count;
      v.product *= u;
    }
  }
  return v;
}

std::vector<Allocation> mnw_allocations(const Instance& inst, std::uint64_t budget,
                                        unsigned workers) {
  return argmax_set(inst, budget, workers, [](const UtilityVector& u) { return nash_value(u); });
}

std::vector<Allocation> mew_allocations(const Instance& inst, std::uint64_t budget,
                                        unsigned workers) {
  return argmax_set(inst, budget, workers,
                    [](const UtilityVector& u) { return *std::min_element(u.begin(), u.end()); });
}

std::vector<Allocation> leximin_allocations(const Instance& inst, std::uint64_t budget,
                                            unsigned workers) {
  return argmax_set(inst, budget, workers,
                    [](const UtilityVector& u) { return sorted_ascending(u); });
}

std::vector<ParetoPoint> pareto_frontier(const Instance& inst, std::uint64_t budget,
                                         unsigned workers) {
  struct MapVal {
    std::uint64_t count = 0;
    std::vector<int> first_owner;  // lexicographically smallest achiever
  };
  using VectorMap = std::map<UtilityVector, MapVal>;
  VectorMap unique = reduce_allocations<VectorMap>(
      inst, budget, workers, [] { return VectorMap{}; },
      [](VectorMap& map, const std::vector<int>& owner, const UtilityVector& util,
         const Rational&) {
        auto [it, inserted] = map.try_emplace(util);
        if (inserted) it->second.first_owner = owner;
        ++it->second.count;
      },
      [](VectorMap& acc, VectorMap&& other) {
        for (auto& [util, val] : other) {
          auto [it, inserted] = acc.try_emplace(util);
          if (inserted) it->second.first_owner = std::move(val.first_owner);
          it->second.count += val.count;
        }
      });

  struct Row {
    const UtilityVector* utils;
    const MapVal* val;
    Rational welfare;
  };
  std::vector<Row> rows;
  rows.reserve(unique.size());
  for (const auto& [util, val] : unique) {
    Rational sum = 0;
    for (const Rational& u : util) sum += u;
    rows.push_back(Row{&util, &val, std::move(sum)});
  }

  std::vector<const Row*> keep;
  if (inst.n == 2) {
    // Plane sweep: descending first coordinate; within a tie group only the
    // row with the best second coordinate can survive, and it survives iff it
    // beats every strictly richer group's best second coordinate.
    std::vector<const Row*> order;
    order.reserve(rows.size());
    for (const Row& r : rows) order.push_back(&r);
    std::sort(order.begin(), order.end(), [](const Row* a, const Row* b) {
      if ((*a->utils)[0] != (*b->utils)[0]) return (*a->utils)[0] > (*b->utils)[0];
      return (*a->utils)[1] > (*b->utils)[1];
    });
    std::optional<Rational> best_second;
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j < order.size() && (*order[j]->utils)[0] == (*order[i]->utils)[0]) ++j;
      const Row* top = order[i];
      if (!best_second || (*top->utils)[1] > *best_second) {
        keep.push_back(top);
        best_second = (*top->utils)[1];
      }
      i = j;
    }
  } else {
    // Descending welfare; any dominator has strictly larger welfare and is
    // itself undominated, so only frontier members need checking.
    std::vector<const Row*> order;
    order.reserve(rows.size());
    for (const Row& r : rows) order.push_back(&r);
    std::sort(order.begin(), order.end(), [](const Row* a, const Row* b) {
      if (a->welfare != b->welfare) return a->welfare > b->welfare;
      return *a->utils < *b->utils;
    });
    for (const Row* row : order) {
      bool dominated = false;
      for (const Row* f : keep) {
        bool ge = true;
        for (int k = 0; k < inst.n && ge; ++k)
          ge = (*f->utils)[k] >= (*row->utils)[k];
        if (ge) {
          dominated = true;
          break;
        }
      }
      if (!dominated) keep.push_back(row);
    }
  }

  std::vector<ParetoPoint> out;
  out.reserve(keep.size());
  for (const Row* row : keep)
    out.push_back(ParetoPoint{*row->utils, row->welfare, Allocation{row->val->first_owner},
                              row->val->count});
  std::sort(out.begin(), out.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.welfare != b.welfare) return a.welfare > b.welfare;
    return a.utils < b.utils;
  });
  return out;
}

std::vector<Allocation> fair_set(const Instance& inst, PropertyId property, std::uint64_t budget,
                                 const TieRule& ties) {
  std::vector<Allocation> out;
  switch (property) {
    case PropertyId::Ef1:
    case PropertyId::Efx:
    case PropertyId::Bal: {
      enumerate_allocations(inst, budget,
                            [&](const std::vector<int>& owner, const UtilityVector& util,
                                const Rational&) {
                              bool ok = property == PropertyId::Bal
                                            ? balanced_sizes(owner, inst.n)
                                            : (property == PropertyId::Ef1
                                                   ? ef1_satisfied(inst, owner, util)
                                                   : efx_satisfied(inst, owner, util));
                              if (ok) out.push_back(Allocation{owner});
                            });
      break;
    }
    case PropertyId::Po: {
      std::vector<ParetoPoint> frontier = pareto_frontier(inst, budget);
      std::set<UtilityVector> undominated;
      for (ParetoPoint& p : frontier) undominated.insert(std::move(p.utils));
      enumerate_allocations(inst, budget,
                            [&](const std::vector<int>& owner, const UtilityVector& util,
                                const Rational&) {
                              if (undominated.count(util)) out.push_back(Allocation{owner});
                            });
      break;
    }
    case PropertyId::Rr: {
      const std::uint64_t work = ordering_work(inst.n, inst.m);
      if (work > budget)
        throw BudgetExceeded("round-robin sweep needs n! * m steps", work, budget);
      Ordering order(inst.n);
      std::iota(order.begin(), order.end(), 0);
      std::set<std::vector<int>> outcomes;
      do outcomes.insert(round_robin(inst, order, ties).owner);
      while (std::next_permutation(order.begin(), order.end()));
      for (const std::vector<int>& owner : outcomes) out.push_back(Allocation{owner});
      break;
    }
    case PropertyId::Mnw:
      out = mnw_allocations(inst, budget);
      break;
    case PropertyId::Mew:
      out = mew_allocations(inst, budget);
      break;
    case PropertyId::Lex:
      out = leximin_allocations(inst, budget);
      break;
  }
  if (out.empty()) throw std::logic_error("fair set is empty, which cannot happen");
  return out;
}

std::optional<Allocation> cycle_swap_improvement(const Instance& inst, const Allocation& alloc) {
  validate_allocation(inst, alloc);
  const int n = inst.n;
  std::vector<std::vector<Rational>> bundle_value(n, std::vector<Rational>(n, Rational(0)));
  for (int g = 0; g < inst.m; ++g)
    for (int i = 0; i < n; ++i) bundle_value[i][alloc.owner[g]] += inst.value(i, g);
  auto edge = [&](int i, int j) { return bundle_value[i][j] > bundle_value[j][j]; };

  std::vector<int> path;
  std::vector<char> on_path(n, 0);
  std::vector<int> cycle;
  // Depth-first search for the lexicographically smallest agent cycle:
  // closing the cycle beats extending it (a prefix is smaller), and
  // candidates are tried in ascending order.
  std::function<bool()> extend = [&]() -> bool {
    int cur = path.back();
    if (path.size() >= 2 && edge(cur, path.front())) return true;
    for (int next = 0; next < n; ++next) {
      if (on_path[next] || !edge(cur, next)) continue;
      path.push_back(next);
      on_path[next] = 1;
      if (extend()) return true;
      path.pop_back();
      on_path[next] = 0;
    }
    return false;
  };
  for (int start = 0; start < n && cycle.empty(); ++start) {
    path.assign(1, start);
    std::fill(on_path.begin(), on_path.end(), 0);
    on_path[start] = 1;
    if (extend()) cycle = path;
  }

  if (cycle.empty()) {
    if (social_welfare(inst, alloc) < 1)
      throw std::logic_error(
          "an allocation with social welfare below 1 must admit an improving rotation");
    return std::nullopt;
  }

  // Rotate bundles: each agent on the cycle takes the next agent's bundle,
  // gaining strictly more than that bundle contributed before.
  std::vector<int> receiver(n, -1);
  for (std::size_t t = 0; t < cycle.size(); ++t)
    receiver[cycle[(t + 1) % cycle.size()]] = cycle[t];
  std::vector<int> owner = alloc.owner;
  for (int g = 0; g < inst.m; ++g)
    if (receiver[owner[g]] != -1) owner[g] = receiver[owner[g]];
  return Allocation{std::move(owner)};
}

}  // namespace fairdiv
