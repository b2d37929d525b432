#pragma once

#include <cstdint>
#include <string>

#include "fairdiv/constructive.hpp"
#include "fairdiv/core.hpp"
#include "fairdiv/solvers.hpp"

namespace fairdiv {

/// A welfare ratio that may be infinite (positive optimum over a fair set
/// whose relevant extreme has welfare 0).
struct PriceValue {
  bool infinite = false;
  Rational value = 1;  // meaningful only when !infinite

  friend bool operator==(const PriceValue& a, const PriceValue& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.value == b.value;
  }
};

inline PriceValue finite_price(Rational value) { return PriceValue{false, std::move(value)}; }
inline PriceValue infinite_price() { return PriceValue{true, Rational(0)}; }

/// "p/q" (or "p") for finite values, "inf" otherwise.
std::string price_string(const PriceValue& price);

/// Welfare extremes of one property's fair set on one instance.
/// price = opt / best_fair and strong_price = opt / worst_fair, with the
/// conventions: opt = 0 makes both prices 1; a zero denominator with
/// opt > 0 makes the ratio infinite.
struct PriceReport {
  PropertyId property = PropertyId::Ef1;
  Rational opt;
  Rational best_fair;
  Rational worst_fair;
  PriceValue price;
  PriceValue strong_price;
  Allocation optimal;        // canonical welfare maximizer (per-good argmax)
  Allocation best_witness;   // lex-smallest fair allocation attaining best_fair
  Allocation worst_witness;  // lex-smallest fair allocation attaining worst_fair
  std::uint64_t fair_count = 0;
};

/// Exact per-instance price computation. The fair set is streamed, never
/// materialized: enumeration reductions for the checker and maximizer
/// properties, a frontier pass for Pareto optimality, and an ordering sweep
/// for round-robin (budget model n!*m; `ties` configures the pick rule).
/// Throws BudgetExceeded when the relevant work bound exceeds `budget`.
PriceReport price_of(const Instance& inst, PropertyId property,
                     std::uint64_t budget = kDefaultBudget, unsigned workers = 1,
                     const TieRule& ties = {});

}  // namespace fairdiv
