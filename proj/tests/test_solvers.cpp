#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "fairdiv/checkers.hpp"
#include "fairdiv/core.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fixtures.hpp"
#include "fairdiv/solvers.hpp"
#include "test_support.hpp"

using fairdiv::Allocation;
using fairdiv::BudgetExceeded;
using fairdiv::Instance;
using fairdiv::NashValue;
using fairdiv::ParseError;
using fairdiv::PropertyId;
using fairdiv::Rational;

namespace {

std::vector<std::vector<int>> owners_of(const std::vector<Allocation>& allocations) {
  std::vector<std::vector<int>> out;
  out.reserve(allocations.size());
  for (const Allocation& a : allocations) out.push_back(a.owner);
  return out;
}

}  // namespace

TEST_CASE("property tags round-trip and reject unknown names") {
  for (PropertyId property : fairdiv::kAllProperties)
    CHECK(fairdiv::parse_property(fairdiv::property_tag(property)) == property);
  CHECK_THROWS_AS(fairdiv::parse_property("nash"), ParseError);
  CHECK_THROWS_AS(fairdiv::parse_property(""), ParseError);
}

TEST_CASE("nash values rank by positive count before product") {
  const NashValue few_but_large{1, Rational(100)};
  const NashValue many_but_tiny{2, Rational(1, 1000)};
  CHECK(few_but_large < many_but_tiny);
  CHECK(NashValue{2, Rational(1, 3)} < NashValue{2, Rational(1, 2)});
  CHECK(NashValue{2, Rational(1, 2)} == NashValue{2, Rational(2, 4)});
  // Zero-utility agents are skipped by the product.
  CHECK(fairdiv::nash_value({Rational(0), Rational(1, 2)}).positive_count == 1);
  CHECK(fairdiv::nash_value({Rational(0), Rational(1, 2)}).product == Rational(1, 2));
  CHECK(fairdiv::nash_value({Rational(0), Rational(0)}).product == Rational(1));
}

TEST_CASE("welfare-objective solvers match the reference maximizer sets") {
  for (std::uint64_t seed = 500; seed < 560; ++seed) {
    const Instance inst = oracle::seeded_instance(seed, 2 + seed % 3, 2 + seed % 3);
    const auto universe = oracle::all_allocations(inst);
    CHECK(owners_of(fairdiv::mnw_allocations(inst)) == oracle::mnw_set(inst, universe));
    CHECK(owners_of(fairdiv::mew_allocations(inst)) == oracle::mew_set(inst, universe));
    CHECK(owners_of(fairdiv::leximin_allocations(inst)) == oracle::leximin_set(inst, universe));
  }
}

TEST_CASE("solver results are identical across worker counts") {
  for (std::uint64_t seed = 560; seed < 572; ++seed) {
    const Instance inst = oracle::seeded_instance(seed, 3, 4 + seed % 3);
    for (unsigned workers : {2u, 5u}) {
      CHECK(owners_of(fairdiv::mnw_allocations(inst, fairdiv::kDefaultBudget, workers)) ==
            owners_of(fairdiv::mnw_allocations(inst)));
      CHECK(owners_of(fairdiv::leximin_allocations(inst, fairdiv::kDefaultBudget, workers)) ==
            owners_of(fairdiv::leximin_allocations(inst)));
    }
  }
}

TEST_CASE("ties keep every maximizer: one good, two matched agents") {
  const Instance inst = oracle::from_ints({{1}, {1}});
  const auto set = fairdiv::mnw_allocations(inst);
  CHECK(owners_of(set) == std::vector<std::vector<int>>{{0}, {1}});
}

TEST_CASE("the pareto frontier lists undominated utility vectors exactly once") {
  for (std::uint64_t seed = 600; seed < 640; ++seed) {
    const Instance inst = oracle::seeded_instance(seed, 2 + seed % 3, 2 + seed % 3);
    const auto universe = oracle::all_allocations(inst);

    // Reference frontier: group by utility vector, keep undominated groups.
    std::map<std::vector<Rational>, std::pair<std::uint64_t, std::vector<int>>> groups;
    for (const std::vector<int>& owner : universe) {
      auto [it, inserted] = groups.try_emplace(oracle::utils_of(inst, owner), 0, owner);
      ++it->second.first;
    }
    struct Expected {
      std::vector<Rational> utils;
      Rational welfare;
      std::vector<int> witness;
      std::uint64_t count;
    };
    std::vector<Expected> expected;
    for (const auto& [utils, info] : groups) {
      bool dominated = false;
      for (const auto& [other, info2] : groups) {
        if (&other == &utils) continue;
        bool geq = true, strict = false;
        for (std::size_t i = 0; i < utils.size(); ++i) {
          if (other[i] < utils[i]) geq = false;
          if (other[i] > utils[i]) strict = true;
        }
        if (geq && strict) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      Rational welfare = 0;
      for (const Rational& u : utils) welfare += u;
      expected.push_back({utils, welfare, info.second, info.first});
    }
    std::sort(expected.begin(), expected.end(), [](const Expected& a, const Expected& b) {
      if (a.welfare != b.welfare) return a.welfare > b.welfare;
      return a.utils < b.utils;
    });

    const auto frontier = fairdiv::pareto_frontier(inst);
    REQUIRE(frontier.size() == expected.size());
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      CHECK(frontier[i].utils == expected[i].utils);
      CHECK(frontier[i].welfare == expected[i].welfare);
      CHECK(frontier[i].witness.owner == expected[i].witness);
      CHECK(frontier[i].count == expected[i].count);
    }

    const auto parallel = fairdiv::pareto_frontier(inst, fairdiv::kDefaultBudget, 4);
    REQUIRE(parallel.size() == frontier.size());
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      CHECK(parallel[i].utils == frontier[i].utils);
      CHECK(parallel[i].witness.owner == frontier[i].witness.owner);
      CHECK(parallel[i].count == frontier[i].count);
    }
  }
}

TEST_CASE("fair sets match the literal property filters") {
  for (std::uint64_t seed = 700; seed < 730; ++seed) {
    const Instance inst = oracle::seeded_instance(seed, 2 + seed % 3, 2 + seed % 3);
    const auto universe = oracle::all_allocations(inst);

    std::vector<std::vector<int>> ef1_expected, efx_expected, bal_expected, po_expected;
    for (const std::vector<int>& owner : universe) {
      if (oracle::ef1(inst, owner)) ef1_expected.push_back(owner);
      if (oracle::efx(inst, owner)) efx_expected.push_back(owner);
      if (oracle::balanced(owner, inst.n)) bal_expected.push_back(owner);
      if (oracle::pareto_optimal(inst, owner, universe)) po_expected.push_back(owner);
    }
    CHECK(owners_of(fairdiv::fair_set(inst, PropertyId::Ef1)) == ef1_expected);
    CHECK(owners_of(fairdiv::fair_set(inst, PropertyId::Efx)) == efx_expected);
    CHECK(owners_of(fairdiv::fair_set(inst, PropertyId::Bal)) == bal_expected);
    CHECK(owners_of(fairdiv::fair_set(inst, PropertyId::Po)) == po_expected);
  }
}

TEST_CASE("the round-robin fair set collects the outcomes of every ordering") {
  for (std::uint64_t seed = 730; seed < 760; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const Instance inst = oracle::seeded_instance(seed, n, 2 + seed % 4);
    std::set<std::vector<int>> expected;
    std::vector<int> order(n);
    for (int a = 0; a < n; ++a) order[a] = a;
    do {
      expected.insert(oracle::rr_sim(inst, order));
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(owners_of(fairdiv::fair_set(inst, PropertyId::Rr)) ==
          std::vector<std::vector<int>>(expected.begin(), expected.end()));
  }
}

TEST_CASE("nash and leximin maximizers inherit fairness and efficiency") {
  for (std::uint64_t seed = 760; seed < 800; ++seed) {
    const Instance inst = oracle::seeded_instance(seed, 2 + seed % 3, 2 + seed % 3);
    const auto universe = oracle::all_allocations(inst);
    for (const Allocation& alloc : fairdiv::mnw_allocations(inst)) {
      CHECK(oracle::ef1(inst, alloc.owner));
      CHECK(oracle::pareto_optimal(inst, alloc.owner, universe));
    }
    const auto mew = owners_of(fairdiv::mew_allocations(inst));
    for (const Allocation& alloc : fairdiv::leximin_allocations(inst)) {
      CHECK(std::find(mew.begin(), mew.end(), alloc.owner) != mew.end());
      CHECK(oracle::pareto_optimal(inst, alloc.owner, universe));
    }
  }
}

TEST_CASE("for two agents the nash maximizer is near the utilitarian optimum") {
  // With utilities (x1, x2) at the utilitarian optimum, any Nash maximizer's
  // social welfare y satisfies y^2 >= 4*x1*x2.
  for (std::uint64_t seed = 800; seed < 840; ++seed) {
    const Instance inst = oracle::seeded_instance(seed, 2, 2 + seed % 5);
    const auto opt_utils =
        oracle::utils_of(inst, fairdiv::optimal_welfare(inst).allocation.owner);
    for (const Allocation& alloc : fairdiv::mnw_allocations(inst)) {
      const Rational y = fairdiv::social_welfare(inst, alloc);
      CHECK(y * y >= 4 * opt_utils[0] * opt_utils[1]);
    }
  }
}

TEST_CASE("a zero-welfare cyclic mismatch rotates back to the diagonal") {
  const Instance inst =
      fairdiv::generate_fixture({fairdiv::FixtureFamily::IdentityMatch, 3, 0, 0, Rational(0)});
  const Allocation shifted{{1, 2, 0}};  // each good sits one agent away
  CHECK(fairdiv::social_welfare(inst, shifted) == Rational(0));

  const auto improved = fairdiv::cycle_swap_improvement(inst, shifted);
  REQUIRE(improved.has_value());
  CHECK(fairdiv::social_welfare(inst, *improved) > Rational(0));
  CHECK(improved->owner == std::vector<int>{0, 1, 2});
  CHECK(fairdiv::social_welfare(inst, *improved) == Rational(3));
}

TEST_CASE("iterated bundle rotations always reach social welfare one") {
  for (std::uint64_t seed = 840; seed < 900; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const Instance inst = oracle::seeded_instance(seed, n, 2 + seed % 4);
    // Start from the worst-welfare allocation among balanced ones to make the
    // loop do real work.
    const auto universe = oracle::all_allocations(inst);
    std::vector<int> start = universe.front();
    Rational worst = oracle::welfare_of(inst, start);
    for (const std::vector<int>& owner : universe) {
      const Rational w = oracle::welfare_of(inst, owner);
      if (w < worst) {
        worst = w;
        start = owner;
      }
    }
    Allocation current{start};
    int steps = 0;
    while (true) {
      const Rational before = fairdiv::social_welfare(inst, current);
      const auto improved = fairdiv::cycle_swap_improvement(inst, current);
      if (!improved) {
        CHECK(before >= Rational(1));
        break;
      }
      CHECK(fairdiv::social_welfare(inst, *improved) > before);
      current = *improved;
      REQUIRE(++steps < 1000);
    }
  }
}

TEST_CASE("solvers respect the enumeration budget") {
  const Instance inst = oracle::seeded_instance(7, 3, 4);  // 81 allocations
  CHECK_THROWS_AS(fairdiv::mnw_allocations(inst, 80), BudgetExceeded);
  CHECK_THROWS_AS(fairdiv::pareto_frontier(inst, 80), BudgetExceeded);
  CHECK_THROWS_AS(fairdiv::fair_set(inst, PropertyId::Ef1, 80), BudgetExceeded);
  CHECK_NOTHROW(fairdiv::fair_set(inst, PropertyId::Ef1, 81));
  // The ordering sweep budget is n!*m.
  CHECK_THROWS_AS(fairdiv::fair_set(inst, PropertyId::Rr, 23), BudgetExceeded);
  CHECK_NOTHROW(fairdiv::fair_set(inst, PropertyId::Rr, 24));
}
