#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

/// Default cap on exhaustive-enumeration work (number of allocations, or
/// orderings-times-goods for ordering sweeps). Overridable everywhere.
inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// A fair-division instance: n agents, m indivisible goods, additive
/// utilities. Rows are normalized so that every agent values the whole set
/// of goods at exactly 1 (vacuously true when m == 0).
struct Instance {
  int n = 0;
  int m = 0;
  std::vector<std::vector<Rational>> utilities;  // n rows, m columns

  const Rational& value(int agent, int good) const { return utilities[agent][good]; }
};

/// A complete partition of the goods: owner[g] is the 0-based index of the
/// agent that receives good g. Serialized documents use 1-based indices.
struct Allocation {
  std::vector<int> owner;

  bool operator==(const Allocation& other) const = default;
};

using UtilityVector = std::vector<Rational>;

/// Validate raw utility rows (>= 0, no all-zero row when m > 0) and divide
/// each row by its sum so rows sum to exactly 1.
Instance make_instance(int n, std::vector<std::vector<Rational>> raw_rows);

/// Parse an instance document: {"n":2,"m":3,"utilities":[[1,"1/2",...],...]}.
/// Entries are nonnegative integers or "p/q" strings; rows are normalized.
/// Unknown keys are ignored.
Instance parse_instance(const std::string& text);

/// Serialize with normalized lowest-terms entries; integers are emitted as
/// JSON numbers, proper fractions as "p/q" strings. Round-trips bit-exactly.
std::string serialize_instance(const Instance& inst);

/// Parse {"owner":[1,2,2]} (1-based agents) and validate against `inst`.
Allocation parse_allocation(const std::string& text, const Instance& inst);

std::string serialize_allocation(const Allocation& alloc);

/// Throws ValidationError unless `alloc` is a complete partition for `inst`.
void validate_allocation(const Instance& inst, const Allocation& alloc);

/// u_i(M_i) for every agent i.
UtilityVector utility_vector(const Instance& inst, const Allocation& alloc);

/// Utilitarian social welfare: sum of u_i(M_i).
Rational social_welfare(const Instance& inst, const Allocation& alloc);

struct OptimalWelfare {
  Rational value;
  Allocation allocation;  // canonical maximizer: per-good argmax, lowest agent index on ties
};

/// Exact optimum of the social welfare. With additive utilities this is the
/// per-good argmax assignment, so no enumeration is required.
OptimalWelfare optimal_welfare(const Instance& inst);

}  // namespace fairdiv
