#pragma once

#include <cstdint>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

/// Agent pick order for round-robin: a permutation of {0, ..., n-1}.
using Ordering = std::vector<int>;

void validate_ordering(const Instance& inst, const Ordering& order);

enum class TiePolicy {
  LowestIndex,           // deterministic: ties go to the lowest good index
  AdversarialEnumerate,  // explore all tie resolutions, keep the worst welfare
};

struct TieRule {
  TiePolicy policy = TiePolicy::LowestIndex;
  /// Adversarial mode explores at most this many completed pick sequences;
  /// exploration is depth-first in ascending good order, so the result is
  /// deterministic even when the cap is hit.
  std::uint64_t branch_budget = 1 << 16;
};

/// Simulates the picking sequence: agents take turns in `order`, each choosing
/// a remaining good of maximum utility to them. Under adversarial ties the
/// returned allocation is the minimum-welfare completion (ties between equal
/// -welfare completions resolved toward the lexicographically smallest owner
/// vector). The output is always envy-free-up-to-one-good and balanced.
Allocation round_robin(const Instance& inst, const Ordering& order, const TieRule& ties = {});

struct BestOrdering {
  Ordering ordering;      // lexicographically smallest among the maximizers
  Allocation allocation;  // round-robin run under lowest-index ties
  Rational welfare;
  bool exhaustive = true;               // false when sampling was used
  std::uint64_t orderings_tried = 0;
};

/// Maximizes round-robin welfare over agent orderings (lowest-index ties).
/// All n! orderings are enumerated when n! <= budget; otherwise `samples`
/// seeded random permutations are tried and the best is reported with
/// `exhaustive` false. The exhaustive best always has welfare >= 1 because
/// the exact average over all orderings is >= 1.
BestOrdering best_rr_ordering(const Instance& inst, std::uint64_t budget = kDefaultBudget,
                              std::uint64_t seed = 0, std::uint64_t samples = 512);

/// Exact mean round-robin welfare over all n! orderings, lowest-index ties.
/// Throws BudgetExceeded when n! > budget. Always >= 1.
Rational mean_rr_welfare(const Instance& inst, std::uint64_t budget = kDefaultBudget);

/// Two-agent allocation that is envy-free up to one good with social welfare
/// within 2/sqrt(3) of optimal (verified in rationals as 4*SW^2 >= 3*OPT^2).
/// Goods are sorted by the ratio u1/u2; the agent who is poorer in the
/// utilitarian optimum takes a minimal prefix that clears the one-good envy
/// bound. Requires n = 2.
Allocation ef1_two_agents(const Instance& inst);

/// Two-agent allocation that is envy-free up to any good with social welfare
/// >= 1. Computes one agent's most-equal bipartition of the goods (exact
/// subset enumeration; requires 2^m <= budget) and assigns the bundles by the
/// other agent's preference between them. Requires n = 2.
Allocation efx_two_agents(const Instance& inst, std::uint64_t budget = kDefaultBudget);

/// Two-agent balanced allocation with 4*SW >= 3*OPT: sort goods by the
/// utility difference u1 - u2 and split in half (a zero-value dummy pads odd
/// m). Requires n = 2.
Allocation balanced_two_agents(const Instance& inst);

/// Balanced allocation with 16*n*SW^2 >= OPT^2. When OPT^2 <= 16*n, the best
/// round-robin ordering already suffices; otherwise agents keep the top slice
/// of their utilitarian-optimal bundles and the remaining goods fill the
/// least-loaded bundles.
Allocation balanced_high_welfare(const Instance& inst, std::uint64_t budget = kDefaultBudget,
                                 std::uint64_t seed = 0);

/// Ordering produced by the value-bucket analysis of a reference optimal
/// allocation: goods are classed into dyadic value levels (2^-l-1, 2^-l],
/// the level with the largest welfare contribution is chosen, and the pick
/// order is built step by step so that early pickers still have a good of
/// that level available.
struct LogBucketPlan {
  int tail_level = 0;    // r: index of the final catch-all level
  int chosen_level = 0;  // l*: the argmax level (lowest index on ties)
  std::uint64_t bucket_size = 0;  // number of goods at the chosen level
  bool arbitrary_order = false;   // true when the level is plentiful (> 2n)
  Ordering ordering;
};

LogBucketPlan log_bucket_ordering(const Instance& inst);

struct BucketedResult {
  Ordering ordering;
  Allocation allocation;
  Rational welfare;
  bool small_opt_branch = true;  // true when best_rr_ordering was used
};

/// Round-robin ordering with welfare within 65*sqrt(n)*log2(mn) of optimal,
/// checked in rationals via the squared form with floor(log2(mn)). Uses the
/// best enumerated ordering when the optimum is small enough for that to
/// suffice, and the log-bucket construction otherwise.
BucketedResult bucketed_rr_ordering(const Instance& inst, std::uint64_t budget = kDefaultBudget,
                                    std::uint64_t seed = 0);

}  // namespace fairdiv
