#include "fairdiv/enumerate.hpp"

#include <limits>

namespace fairdiv {

std::uint64_t allocation_count(const Instance& inst) {
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (int g = 0; g < inst.m; ++g) {
    if (total > cap / static_cast<std::uint64_t>(inst.n)) return cap;
    total *= static_cast<std::uint64_t>(inst.n);
  }
  return total;
}

std::uint64_t checked_allocation_count(const Instance& inst, std::uint64_t budget) {
  std::uint64_t total = allocation_count(inst);
  if (total > budget)
    throw BudgetExceeded("full allocation enumeration needs n^m steps", total, budget);
  return total;
}

void enumerate_allocations(
    const Instance& inst, std::uint64_t budget,
    const std::function<void(const std::vector<int>&, const UtilityVector&, const Rational&)>&
        visit) {
  const std::uint64_t total = checked_allocation_count(inst, budget);
  AllocationCursor cursor(inst, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    visit(cursor.owner(), cursor.util(), cursor.welfare());
    if (idx + 1 < total) cursor.advance();
  }
}

}  // namespace fairdiv
