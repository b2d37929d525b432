#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv {

/// n^m saturated at UINT64_MAX.
std::uint64_t allocation_count(const Instance& inst);

/// n^m, throwing BudgetExceeded when it exceeds `budget`.
std::uint64_t checked_allocation_count(const Instance& inst, std::uint64_t budget);

/// Walks owner vectors in lexicographic order (good 0 is the most significant
/// digit), maintaining the utility vector and welfare incrementally so a full
/// sweep costs O(1) amortized rational updates per allocation.
class AllocationCursor {
 public:
  AllocationCursor(const Instance& inst, std::uint64_t start_index)
      : inst_(&inst), owner_(inst.m, 0), util_(inst.n, Rational(0)), welfare_(0) {
    for (int g = inst.m - 1; g >= 0; --g) {
      owner_[g] = static_cast<int>(start_index % inst.n);
      start_index /= inst.n;
    }
    for (int g = 0; g < inst.m; ++g) {
      const Rational& v = inst.value(owner_[g], g);
      util_[owner_[g]] += v;
      welfare_ += v;
    }
  }

  const std::vector<int>& owner() const { return owner_; }
  const UtilityVector& util() const { return util_; }
  const Rational& welfare() const { return welfare_; }

  /// Step to the next owner vector. Must not be called past the last index.
  void advance() {
    for (int g = inst_->m - 1; g >= 0; --g) {
      int old = owner_[g];
      const Rational& lost = inst_->value(old, g);
      util_[old] -= lost;
      welfare_ -= lost;
      if (old + 1 < inst_->n) {
        owner_[g] = old + 1;
        const Rational& gained = inst_->value(old + 1, g);
        util_[old + 1] += gained;
        welfare_ += gained;
        return;
      }
      owner_[g] = 0;
      const Rational& wrapped = inst_->value(0, g);
      util_[0] += wrapped;
      welfare_ += wrapped;
    }
  }

 private:
  const Instance* inst_;
  std::vector<int> owner_;
  UtilityVector util_;
  Rational welfare_;
};

/// Full-enumeration reduction. `absorb(state, owner, util, welfare)` must be
/// order-insensitive up to the final `merge`, and `merge(acc, other)` must be
/// associative, so the result is identical for any worker count. Chunks are
/// merged in index order, which keeps lexicographic tie-breaking exact.
template <typename State, typename Absorb, typename Merge>
State reduce_allocations(const Instance& inst, std::uint64_t budget, unsigned workers,
                         const std::function<State()>& make_state, Absorb absorb, Merge merge) {
  const std::uint64_t total = checked_allocation_count(inst, budget);
  auto run_chunk = [&](std::uint64_t lo, std::uint64_t hi, State& state) {
    if (lo >= hi) return;
    AllocationCursor cursor(inst, lo);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      absorb(state, cursor.owner(), cursor.util(), cursor.welfare());
      if (idx + 1 < hi) cursor.advance();
    }
  };

  unsigned lanes = workers == 0 ? 1 : workers;
  if (static_cast<std::uint64_t>(lanes) > total && total > 0)
    lanes = static_cast<unsigned>(total);
  if (lanes <= 1 || total < 2048) {
    State state = make_state();
    run_chunk(0, total, state);
    return state;
  }

  std::vector<State> states;
  states.reserve(lanes);
  for (unsigned c = 0; c < lanes; ++c) states.push_back(make_state());
  {
    std::vector<std::jthread> threads;
    threads.reserve(lanes);
    for (unsigned c = 0; c < lanes; ++c) {
      std::uint64_t lo = total / lanes * c + std::min<std::uint64_t>(c, total % lanes);
      std::uint64_t len = total / lanes + (c < total % lanes ? 1 : 0);
      threads.emplace_back([&, lo, len, c] { run_chunk(lo, lo + len, states[c]); });
    }
  }
  State acc = std::move(states[0]);
  for (unsigned c = 1; c < lanes; ++c) merge(acc, std::move(states[c]));
  return acc;
}

/// Sequential visitor over every allocation, in lexicographic order.
void enumerate_allocations(
    const Instance& inst, std::uint64_t budget,
    const std::function<void(const std::vector<int>&, const UtilityVector&, const Rational&)>&
        visit);

}  // namespace fairdiv
