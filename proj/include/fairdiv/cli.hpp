#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "fairdiv/core.hpp"

namespace fairdiv {

/// One fully-resolved command invocation. Every run is a pure function of
/// this struct: the semantic fields are echoed into the output document, and
/// equal configs produce byte-identical machine output regardless of the
/// worker count (parallel reductions merge in a fixed order).
struct RunConfig {
  std::string command;  // check | solve | construct | price | generate | search | reproduce

  std::optional<std::string> instance_path;    // --instance
  std::optional<std::string> allocation_path;  // --allocation
  std::optional<std::string> property;         // --property
  std::optional<std::string> objective;        // --objective opt|mnw|mew|leximin
  std::optional<std::string> algorithm;        // --alg rr|ef1-2|efx-2|bal-2|bal-n|bucketed-rr
  std::optional<std::string> order;            // --order e.g. "2,1" (1-based agents)
  std::string ties = "lowest";                 // --ties lowest|adversarial
  std::optional<std::string> family;           // --family fixture tag
  std::optional<int> n;                        // --n
  std::optional<int> m;                        // --m
  std::optional<int> x;                        // --x
  std::optional<std::string> eps;              // --eps "p/q"

  std::uint64_t seed = 0;               // --seed
  std::uint64_t iters = 4096;           // --iters (search restarts budget)
  std::uint64_t budget = kDefaultBudget;  // --budget (or FAIRDIV_BUDGET)
  unsigned workers = 1;                 // --workers (never echoed; must not affect bytes)
  std::string format = "json";          // --format json|table
  std::optional<std::string> out_path;  // --out (never echoed)
};

/// Executes the configured command. The output document goes to `out` (or to
/// config.out_path when set); structured errors go to `err` as a single JSON
/// object. Returns the process exit status: 0 on success (including a `check`
/// whose verdict is "not satisfied" and a `reproduce` whose rows all pass),
/// 2 when a work-budget cap was exceeded, and 1 for every other failure
/// (bad flags, unreadable files, malformed documents, failed reproduce rows).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fairdiv
