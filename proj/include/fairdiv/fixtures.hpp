#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/pof.hpp"
#include "fairdiv/prng.hpp"
#include "fairdiv/solvers.hpp"

namespace fairdiv {

/// Worked lower-bound instance families. Each family is an exact utility
/// matrix parameterized as the corresponding argument demands.
enum class FixtureFamily {
  Thm1Sqrt,       // "thm1-sqrt": m = n, optimum floor(sqrt(n)), EF1/BAL best below 2
  Ef1Two,         // "ef1-2": n=2, m=3, needs 0 < eps < 1/6
  EfxTwo,         // "efx-2": n=2, m=3, needs 0 < eps < 1/2
  IdentityMatch,  // "identity-match": m = n, agent i wants exactly good i
  RrPrice,        // "rr-price": m = x^n, flat dyadic-by-agent values
  RrStrong,       // "rr-strong": agent 1 flat, agent i>=2 wants good i-1
  BalTwo,         // "bal-2": m even, agent 1 concentrated, agent 2 flat
  WelfareLinear,  // "welfare-linear": m = n chain, needs 0 < eps < 1
  MewInfinite,    // "mew-infinite": m = n >= 3, contested first good
  MnwTwo,         // "mnw-2": n=2, m=3, needs 0 < eps < 1/7
  MewTwo,         // "mew-2": n=2, m=3, needs 0 < eps < 1/2
  PoQuadratic,    // "po-quadratic": m = n chain, needs 0 < eps < 1/n
};

inline constexpr std::array<FixtureFamily, 12> kAllFamilies = {
    FixtureFamily::Thm1Sqrt,      FixtureFamily::Ef1Two,      FixtureFamily::EfxTwo,
    FixtureFamily::IdentityMatch, FixtureFamily::RrPrice,     FixtureFamily::RrStrong,
    FixtureFamily::BalTwo,        FixtureFamily::WelfareLinear, FixtureFamily::MewInfinite,
    FixtureFamily::MnwTwo,        FixtureFamily::MewTwo,      FixtureFamily::PoQuadratic};

std::string family_tag(FixtureFamily family);
FixtureFamily parse_family(const std::string& tag);

struct FixtureSpec {
  FixtureFamily family = FixtureFamily::IdentityMatch;
  int n = 0;           // agent count, where the family allows choosing it
  int m = 0;           // good count, where the family allows choosing it
  int x = 0;           // scale parameter (rr-price only)
  Rational eps = 0;    // gap parameter, where the family uses one
};

/// Builds the exact utility matrix for `spec`. Throws ValidationError for
/// parameters outside the family's admissible range, and BudgetExceeded when
/// the generated instance would carry more than `budget` goods (rr-price's
/// good count x^n is exponential by design).
Instance generate_fixture(const FixtureSpec& spec, std::uint64_t budget = kDefaultBudget);

struct BoundValue {
  Rational value;
  bool strict = false;  // true: the quantity is strictly below `value`
};

/// Golden expectations for one property on one fixture. Every field is
/// optional: a field is set only when the construction pins that quantity
/// down exactly (or, for the bound fields, certifies the inequality) at the
/// given parameters.
struct ExpectedPrice {
  PropertyId property = PropertyId::Ef1;
  std::optional<Rational> opt;
  std::optional<Rational> best_fair;
  std::optional<Rational> worst_fair;
  std::optional<PriceValue> price;
  std::optional<PriceValue> strong_price;
  /// Ratio the construction certifies as a lower bound on the price. Where
  /// the underlying argument bounds the optimum from below rather than
  /// computing it, this is smaller than the exact price.
  std::optional<Rational> proof_ratio;
  /// Supremum the family's price approaches as eps -> 0 (strictly from below).
  std::optional<Rational> limit;
  std::optional<BoundValue> best_fair_upper;
};

std::vector<ExpectedPrice> fixture_expected_prices(const FixtureSpec& spec);

/// Uniform random instance: each utility entry draws an integer weight in
/// [0, 16]; an all-zero row gets one entry bumped to 1; rows are normalized
/// exactly. Deterministic given the generator state.
Instance random_instance(SplitMix64& rng, int n, int m);

struct SearchResult {
  Instance instance;
  PriceReport report;
  std::uint64_t evaluations = 0;
};

/// Seeded hill climb for high-price instances: restarts (iters / 256 of
/// them, at least one) start from random integer-weight matrices, then
/// repeatedly move one entry by +-1/64 (steepest ascent on the price, first
/// improving direction in scan order on ties) until no neighbor improves or
/// the restart's evaluation allowance is spent. Restart results merge by
/// maximum price, ties by smallest serialized instance, so the outcome is
/// deterministic for a given seed regardless of scheduling.
SearchResult adversarial_search(PropertyId property, int n, int m, std::uint64_t seed,
                                std::uint64_t iters, std::uint64_t budget = kDefaultBudget);

}  // namespace fairdiv
