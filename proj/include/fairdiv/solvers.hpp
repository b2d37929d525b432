#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/constructive.hpp"
#include "fairdiv/core.hpp"

namespace fairdiv {

/// Allocation properties and welfare objectives handled uniformly: a property
/// names the set of allocations that satisfy it (for the objective-style
/// entries, the set of maximizers).
enum class PropertyId { Ef1, Efx, Bal, Po, Rr, Mnw, Mew, Lex };

inline constexpr std::array<PropertyId, 8> kAllProperties = {
    PropertyId::Ef1, PropertyId::Efx, PropertyId::Bal, PropertyId::Po,
    PropertyId::Rr,  PropertyId::Mnw, PropertyId::Mew, PropertyId::Lex};

/// Stable lowercase tag: "ef1", "efx", "bal", "po", "rr", "mnw", "mew", "lex".
std::string property_tag(PropertyId property);

/// Inverse of property_tag; throws ParseError on anything else.
PropertyId parse_property(const std::string& tag);

/// Nash welfare compared on two keys: first maximize how many agents receive
/// positive utility, then the product of the positive utilities (an empty
/// product is 1). This matches the usual convention for instances where not
/// every agent can be made happy.
struct NashValue {
  int positive_count = 0;
  Rational product = 1;

  friend bool operator==(const NashValue& a, const NashValue& b) {
    return a.positive_count == b.positive_count && a.product == b.product;
  }
  friend bool operator<(const NashValue& a, const NashValue& b) {
    if (a.positive_count != b.positive_count) return a.positive_count < b.positive_count;
    return a.product < b.product;
  }
};

NashValue nash_value(const UtilityVector& utils);

/// Every maximum-Nash-welfare allocation, in lexicographic owner order.
/// Throws BudgetExceeded when n^m > budget.
std::vector<Allocation> mnw_allocations(const Instance& inst,
                                        std::uint64_t budget = kDefaultBudget,
                                        unsigned workers = 1);

/// Every maximum-egalitarian-welfare allocation (maximizers of the minimum
/// utility), in lexicographic owner order.
std::vector<Allocation> mew_allocations(const Instance& inst,
                                        std::uint64_t budget = kDefaultBudget,
                                        unsigned workers = 1);

/// Every leximin-optimal allocation: utility vectors sorted ascending are
/// compared lexicographically and the greatest is kept.
std::vector<Allocation> leximin_allocations(const Instance& inst,
                                            std::uint64_t budget = kDefaultBudget,
                                            unsigned workers = 1);

/// One maximal point of the utility-vector partial order (componentwise >=).
struct ParetoPoint {
  UtilityVector utils;
  Rational welfare;
  Allocation witness;       // lexicographically smallest allocation achieving utils
  std::uint64_t count = 0;  // number of allocations achieving utils
};

/// Every undominated utility vector, sorted by descending welfare (ties by
/// ascending utility vector). An allocation is Pareto-optimal exactly when
/// its utility vector appears here. Throws BudgetExceeded when n^m > budget.
std::vector<ParetoPoint> pareto_frontier(const Instance& inst,
                                         std::uint64_t budget = kDefaultBudget,
                                         unsigned workers = 1);

/// All allocations satisfying `property`, in lexicographic owner order.
/// Budget model: n^m enumeration for Ef1/Efx/Bal/Po/Mnw/Mew/Lex, n!*m work
/// for Rr (one round-robin run per ordering; `ties` selects the pick rule).
/// The result is never empty for a valid instance; an empty set indicates an
/// internal inconsistency and raises logic_error.
std::vector<Allocation> fair_set(const Instance& inst, PropertyId property,
                                 std::uint64_t budget = kDefaultBudget,
                                 const TieRule& ties = {});

/// Looks for a cycle of agents in which every agent values the next agent's
/// bundle strictly more than its current owner does; rotating bundles along
/// such a cycle strictly increases social welfare. Returns the improved
/// allocation (lexicographically smallest cycle, smallest starting agent) or
/// nullopt when no such cycle exists. Any allocation with social welfare
/// below 1 admits one, so failing to find a cycle there raises logic_error.
std::optional<Allocation> cycle_swap_improvement(const Instance& inst, const Allocation& alloc);

}  // namespace fairdiv
