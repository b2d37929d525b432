#include "fairdiv/pof.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "fairdiv/checkers.hpp"
#include "fairdiv/enumerate.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

/// Streaming welfare extremes over a fair set. `add` must see allocations in
/// lexicographic order within a chunk; `combine(acc, later)` keeps `acc` on
/// ties so the lex-smallest witness survives chunked enumeration.
struct Extremes {
  std::uint64_t count = 0;
  std::optional<Rational> best;
  std::optional<Rational> worst;
  std::vector<int> best_owner;
  std::vector<int> worst_owner;

  void add(const std::vector<int>& owner, const Rational& welfare) {
    ++count;
    if (!best || welfare > *best) {
      best = welfare;
      best_owner = owner;
    }
    if (!worst || welfare < *worst) {
      worst = welfare;
      worst_owner = owner;
    }
  }

  void combine(Extremes&& later) {
    count += later.count;
    if (later.best && (!best || *later.best > *best)) {
      best = std::move(later.best);
      best_owner = std::move(later.best_owner);
    }
    if (later.worst && (!worst || *later.worst < *worst)) {
      worst = std::move(later.worst);
      worst_owner = std::move(later.worst_owner);
    }
  }
};

Extremes checker_extremes(const Instance& inst, PropertyId property, std::uint64_t budget,
                          unsigned workers) {
  return reduce_allocations<Extremes>(
      inst, budget, workers, [] { return Extremes{}; },
      [&](Extremes& ext, const std::vector<int>& owner, const UtilityVector& util,
          const Rational& welfare) {
        bool ok = property == PropertyId::Bal ? balanced_sizes(owner, inst.n)
                  : property == PropertyId::Ef1 ? ef1_satisfied(inst, owner, util)
                                                : efx_satisfied(inst, owner, util);
        if (ok) ext.add(owner, welfare);
      },
      [](Extremes& acc, Extremes&& other) { acc.combine(std::move(other)); });
}

template <typename KeyFn>
Extremes maximizer_extremes(const Instance& inst, std::uint64_t budget, unsigned workers,
                            KeyFn key_of) {
  using Key = decltype(key_of(std::declval<const UtilityVector&>()));
  struct State {
    std::optional<Key> key;
    Extremes ext;
  };
  State result = reduce_allocations<State>(
      inst, budget, workers, [] { return State{}; },
      [&](State& s, const std::vector<int>& owner, const UtilityVector& util,
          const Rational& welfare) {
        Key k = key_of(util);
        if (!s.key || *s.key < k) {
          s.key = std::move(k);
          s.ext = Extremes{};
          s.ext.add(owner, welfare);
        } else if (*s.key == k) {
          s.ext.add(owner, welfare);
        }
      },
      [](State& acc, State&& other) {
        if (!other.key) return;
        if (!acc.key || *acc.key < *other.key)
          acc = std::move(other);
        else if (*acc.key == *other.key)
          acc.ext.combine(std::move(other.ext));
      });
  return result.ext;
}

Extremes pareto_extremes(const Instance& inst, std::uint64_t budget, unsigned workers) {
  Extremes ext;
  for (const ParetoPoint& point : pareto_frontier(inst, budget, workers)) {
    ext.count += point.count;
    if (!ext.best || point.welfare > *ext.best ||
        (point.welfare == *ext.best && point.witness.owner < ext.best_owner)) {
      ext.best = point.welfare;
      ext.best_owner = point.witness.owner;
    }
    if (!ext.worst || point.welfare < *ext.worst ||
        (point.welfare == *ext.worst && point.witness.owner < ext.worst_owner)) {
      ext.worst = point.welfare;
      ext.worst_owner = point.witness.owner;
    }
  }
  return ext;
}

Extremes round_robin_extremes(const Instance& inst, std::uint64_t budget, const TieRule& ties) {
  std::uint64_t work = 1;
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  for (int k = 2; k <= inst.n; ++k)
    work = work > cap / static_cast<std::uint64_t>(k) ? cap : work * static_cast<std::uint64_t>(k);
  work = (inst.m > 0 && work > cap / static_cast<std::uint64_t>(inst.m))
             ? cap
             : work * static_cast<std::uint64_t>(std::max(inst.m, 1));
  if (work > budget)
    throw BudgetExceeded("round-robin sweep needs n! * m steps", work, budget);

  std::vector<int> order(inst.n);
  std::iota(order.begin(), order.end(), 0);
  std::set<std::vector<int>> outcomes;
  do outcomes.insert(round_robin(inst, order, ties).owner);
  while (std::next_permutation(order.begin(), order.end()));

  Extremes ext;
  for (const std::vector<int>& owner : outcomes) {
    Rational welfare = 0;
    for (int g = 0; g < inst.m; ++g) welfare += inst.value(owner[g], g);
    ext.add(owner, welfare);
  }
  return ext;
}

PriceValue ratio(const Rational& opt, const Rational& denom) {
  if (opt == 0) return finite_price(Rational(1));
  if (denom == 0) return infinite_price();
  return finite_price(opt / denom);
}

}  // namespace

std::string price_string(const PriceValue& price) {
  return price.infinite ? "inf" : fraction_string(price.value);
}

PriceReport price_of(const Instance& inst, PropertyId property, std::uint64_t budget,
                     unsigned workers, const TieRule& ties) {
  Extremes ext;
  switch (property) {
    case PropertyId::Ef1:
    case PropertyId::Efx:
    case PropertyId::Bal:
      ext = checker_extremes(inst, property, budget, workers);
      break;
    case PropertyId::Po:
      ext = pareto_extremes(inst, budget, workers);
      break;
    case PropertyId::Rr:
      ext = round_robin_extremes(inst, budget, ties);
      break;
    case PropertyId::Mnw:
      ext = maximizer_extremes(inst, budget, workers,
                               [](const UtilityVector& u) { return nash_value(u); });
      break;
    case PropertyId::Mew:
      ext = maximizer_extremes(inst, budget, workers, [](const UtilityVector& u) {
        return *std::min_element(u.begin(), u.end());
      });
      break;
    case PropertyId::Lex:
      ext = maximizer_extremes(inst, budget, workers, [](const UtilityVector& u) {
        UtilityVector key = u;
        std::sort(key.begin(), key.end());
        return key;
      });
      break;
  }
  if (ext.count == 0 || !ext.best || !ext.worst)
    throw std::logic_error("fair set is empty, which cannot happen");

  PriceReport report;
  report.property = property;
  OptimalWelfare opt = optimal_welfare(inst);
  report.opt = std::move(opt.value);
  report.optimal = std::move(opt.allocation);
  report.best_fair = std::move(*ext.best);
  report.worst_fair = std::move(*ext.worst);
  report.price = ratio(report.opt, report.best_fair);
  report.strong_price = ratio(report.opt, report.worst_fair);
  report.best_witness = Allocation{std::move(ext.best_owner)};
  report.worst_witness = Allocation{std::move(ext.worst_owner)};
  report.fair_count = ext.count;
  return report;
}

}  // namespace fairdiv
