#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

/// Certificate for a failed envy-based check (EF1/EFX).
/// `envier` would still envy `envied` after the sanctioned removal:
///  - EF1: removing `removed_good` (the good the envier values most in the
///    envied bundle) leaves u(envier bundle) < u(rest); no single removal helps.
///  - EFX: removing `removed_good` (the good the envier values least) leaves
///    envy, so some removal fails the "for every good" requirement.
/// Indices are 0-based; `removed_good` is absent when the bundle is empty.
struct EnvyViolation {
  int envier = 0;
  int envied = 0;
  std::vector<int> envied_bundle;
  std::optional<int> removed_good;
  Rational envier_value;          // u_envier(own bundle)
  Rational remaining_value;       // u_envier(envied bundle minus removed_good)
};

struct BalanceViolation {
  int larger_agent = 0;
  int smaller_agent = 0;
  int larger_size = 0;
  int smaller_size = 0;
};

struct ParetoViolation {
  Allocation improvement;  // lexicographically smallest dominating allocation
};

using Violation = std::variant<EnvyViolation, BalanceViolation, ParetoViolation>;

struct PropertyWitness {
  bool satisfied = true;
  std::optional<Violation> violation;
};

/// Envy-free up to one good. Uses the additive shortcut: i does not EF1-envy
/// j iff u_i(M_i) >= u_i(M_j) - max_{g in M_j} u_i(g) (empty max = 0).
PropertyWitness is_ef1(const Instance& inst, const Allocation& alloc);

/// Envy-free up to any good: removing the *least* valued good must already
/// kill the envy, i.e. u_i(M_i) >= u_i(M_j) - min_{g in M_j} u_i(g).
PropertyWitness is_efx(const Instance& inst, const Allocation& alloc);

/// Bundle cardinalities differ by at most one.
PropertyWitness is_balanced(const Instance& inst, const Allocation& alloc);

/// Exhaustive Pareto-optimality check over all n^m allocations (lexicographic
/// scan, so the reported improvement is canonical). Throws BudgetExceeded
/// when n^m > budget.
PropertyWitness is_pareto_optimal(const Instance& inst, const Allocation& alloc,
                                  std::uint64_t budget);

// Verdict-only fast paths used by the enumeration reductions. `own_util`
// must equal utility_vector(inst, owner).
bool ef1_satisfied(const Instance& inst, const std::vector<int>& owner,
                   const UtilityVector& own_util);
bool efx_satisfied(const Instance& inst, const std::vector<int>& owner,
                   const UtilityVector& own_util);
bool balanced_sizes(const std::vector<int>& owner, int n);

}  // namespace fairdiv
