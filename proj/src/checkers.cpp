#include "fairdiv/checkers.hpp"

#include <algorithm>

#include "fairdiv/enumerate.hpp"

namespace fairdiv {

namespace {

// Shared EF1/EFX scan. EF1 removes the good the envier values most; EFX must
// survive removing the least valued good. The first violating pair in
// (envier, envied) order is reported, with ties on the removed good broken
// toward the lowest good index.
PropertyWitness envy_check(const Instance& inst, const Allocation& alloc, bool remove_least) {
  validate_allocation(inst, alloc);
  const UtilityVector own = utility_vector(inst, alloc);
  std::vector<std::vector<int>> bundles(inst.n);
  for (int g = 0; g < inst.m; ++g) bundles[alloc.owner[g]].push_back(g);

  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (j == i) continue;
      const std::vector<int>& bundle = bundles[j];
      if (bundle.empty()) continue;
      Rational cross(0);
      int pick = bundle.front();
      for (int g : bundle) {
        const Rational& v = inst.value(i, g);
        cross += v;
        if (remove_least ? v < inst.value(i, pick) : v > inst.value(i, pick)) pick = g;
      }
      Rational remaining = cross - inst.value(i, pick);
      if (own[i] < remaining) {
        EnvyViolation violation;
        violation.envier = i;
        violation.envied = j;
        violation.envied_bundle = bundle;
        violation.removed_good = pick;
        violation.envier_value = own[i];
        violation.remaining_value = remaining;
        return PropertyWitness{false, Violation{std::move(violation)}};
      }
    }
  }
  return PropertyWitness{};
}

}  // namespace

PropertyWitness is_ef1(const Instance& inst, const Allocation& alloc) {
  return envy_check(inst, alloc, /*remove_least=*/false);
}

PropertyWitness is_efx(const Instance& inst, const Allocation& alloc) {
  return envy_check(inst, alloc, /*remove_least=*/true);
}

PropertyWitness is_balanced(const Instance& inst, const Allocation& alloc) {
  validate_allocation(inst, alloc);
  std::vector<int> size(inst.n, 0);
  for (int owner : alloc.owner) ++size[owner];
  int largest = 0;
  int smallest = 0;
  for (int i = 1; i < inst.n; ++i) {
    if (size[i] > size[largest]) largest = i;
    if (size[i] < size[smallest]) smallest = i;
  }
  if (size[largest] - size[smallest] <= 1) return PropertyWitness{};
  BalanceViolation violation{largest, smallest, size[largest], size[smallest]};
  return PropertyWitness{false, Violation{violation}};
}

PropertyWitness is_pareto_optimal(const Instance& inst, const Allocation& alloc,
                                  std::uint64_t budget) {
  validate_allocation(inst, alloc);
  const UtilityVector target = utility_vector(inst, alloc);
  const std::uint64_t total = checked_allocation_count(inst, budget);
  AllocationCursor cursor(inst, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const UtilityVector& util = cursor.util();
    bool weakly_better = true;
    bool strictly_better = false;
    for (int i = 0; i < inst.n && weakly_better; ++i) {
      if (util[i] < target[i])
        weakly_better = false;
      else if (util[i] > target[i])
        strictly_better = true;
    }
    if (weakly_better && strictly_better) {
      ParetoViolation violation{Allocation{cursor.owner()}};
      return PropertyWitness{false, Violation{std::move(violation)}};
    }
    if (idx + 1 < total) cursor.advance();
  }
  return PropertyWitness{};
}

bool ef1_satisfied(const Instance& inst, const std::vector<int>& owner,
                   const UtilityVector& own_util) {
  for (int i = 0; i < inst.n; ++i) {
    std::vector<Rational> cross(inst.n, Rational(0));
    std::vector<Rational> top(inst.n, Rational(0));
    for (int g = 0; g < inst.m; ++g) {
      int o = owner[g];
      if (o == i) continue;
      const Rational& v = inst.value(i, g);
      cross[o] += v;
      if (v > top[o]) top[o] = v;
    }
    for (int j = 0; j < inst.n; ++j)
      if (j != i && own_util[i] < cross[j] - top[j]) return false;
  }
  return true;
}

bool efx_satisfied(const Instance& inst, const std::vector<int>& owner,
                   const UtilityVector& own_util) {
  for (int i = 0; i < inst.n; ++i) {
    std::vector<Rational> cross(inst.n, Rational(0));
    std::vector<Rational> least(inst.n, Rational(0));
    std::vector<char> seen(inst.n, 0);
    for (int g = 0; g < inst.m; ++g) {
      int o = owner[g];
      if (o == i) continue;
      const Rational& v = inst.value(i, g);
      cross[o] += v;
      if (!seen[o] || v < least[o]) {
        least[o] = v;
        seen[o] = 1;
      }
    }
    for (int j = 0; j < inst.n; ++j)
      if (j != i && seen[j] && own_util[i] < cross[j] - least[j]) return false;
  }
  return true;
}

bool balanced_sizes(const std::vector<int>& owner, int n) {
  std::vector<int> size(n, 0);
  for (int o : owner) ++size[o];
  auto [lo, hi] = std::minmax_element(size.begin(), size.end());
  return *hi - *lo <= 1;
}

}  // namespace fairdiv
