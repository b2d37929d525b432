#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

/// Malformed input document or unparsable rational/number.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input that violates a domain precondition
/// (negative utility, all-zero row, owner out of range, bad fixture params).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested computation would exceed the enumeration budget.
/// `required` is saturated at UINT64_MAX when the true count overflows.
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(const std::string& what, unsigned long long required_, unsigned long long budget_)
      : std::runtime_error(what), required(required_), budget(budget_) {}
  unsigned long long required;
  unsigned long long budget;
};

}  // namespace fairdiv
