#include "fairdiv/constructive.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>

#include "fairdiv/errors.hpp"
#include "fairdiv/prng.hpp"

namespace fairdiv {

namespace {

std::uint64_t saturated_factorial(int n) {
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) {
    if (f > cap / static_cast<std::uint64_t>(k)) return cap;
    f *= static_cast<std::uint64_t>(k);
  }
  return f;
}

// Per-agent pick preference: goods sorted by value descending, index ascending.
std::vector<std::vector<int>> pick_preferences(const Instance& inst) {
  std::vector<std::vector<int>> prefs(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    prefs[i].resize(inst.m);
    std::iota(prefs[i].begin(), prefs[i].end(), 0);
    std::sort(prefs[i].begin(), prefs[i].end(), [&](int a, int b) {
      if (inst.value(i, a) != inst.value(i, b)) return inst.value(i, a) > inst.value(i, b);
      return a < b;
    });
  }
  return prefs;
}

Allocation round_robin_lowest(const Instance& inst, const Ordering& order,
                              const std::vector<std::vector<int>>& prefs) {
  std::vector<int> owner(inst.m, -1);
  std::vector<std::size_t> cursor(inst.n, 0);
  for (int t = 0; t < inst.m; ++t) {
    int agent = order[t % inst.n];
    std::size_t& c = cursor[agent];
    while (owner[prefs[agent][c]] != -1) ++c;
    owner[prefs[agent][c]] = agent;
  }
  return Allocation{std::move(owner)};
}

struct AdversarialState {
  const Instance& inst;
  const Ordering& order;
  std::uint64_t leaf_budget;
  std::uint64_t leaves = 0;

  AdversarialState(const Instance& inst_, const Ordering& order_, std::uint64_t leaf_budget_)
      : inst(inst_), order(order_), leaf_budget(leaf_budget_) {}
  std::optional<Rational> worst;
  std::vector<int> worst_owner;
  std::vector<int> owner;
  Rational welfare = 0;

  void dfs(int t) {
    if (t == inst.m) {
      ++leaves;
      if (!worst || welfare < *worst || (welfare == *worst && owner < worst_owner)) {
        worst = welfare;
        worst_owner = owner;
      }
      return;
    }
    int agent = order[t % inst.n];
    const Rational* top = nullptr;
    for (int g = 0; g < inst.m; ++g)
      if (owner[g] == -1 && (!top || inst.value(agent, g) > *top)) top = &inst.value(agent, g);
    for (int g = 0; g < inst.m; ++g) {
      if (owner[g] != -1 || inst.value(agent, g) != *top) continue;
      if (leaves >= leaf_budget && worst) return;
      owner[g] = agent;
      welfare += inst.value(agent, g);
      dfs(t + 1);
      welfare -= inst.value(agent, g);
      owner[g] = -1;
    }
  }
};

// Shared ratio-sorted scaffolding for the two-agent algorithms. `a` plays the
// first role, `b` the second.
struct RoleView {
  int a = 0;
  int b = 1;
};

}  // namespace

void validate_ordering(const Instance& inst, const Ordering& order) {
  if (static_cast<int>(order.size()) != inst.n)
    throw ValidationError("ordering must list every agent exactly once");
  std::vector<char> seen(inst.n, 0);
  for (int agent : order) {
    if (agent < 0 || agent >= inst.n) throw ValidationError("ordering entry out of range");
    if (seen[agent]) throw ValidationError("ordering repeats an agent");
    seen[agent] = 1;
  }
}

Allocation round_robin(const Instance& inst, const Ordering& order, const TieRule& ties) {
  validate_ordering(inst, order);
  if (ties.policy == TiePolicy::LowestIndex)
    return round_robin_lowest(inst, order, pick_preferences(inst));
  AdversarialState state(inst, order, std::max<std::uint64_t>(ties.branch_budget, 1));
  state.owner.assign(inst.m, -1);
  state.dfs(0);
  return Allocation{std::move(state.worst_owner)};
}

BestOrdering best_rr_ordering(const Instance& inst, std::uint64_t budget, std::uint64_t seed,
                              std::uint64_t samples) {
  const auto prefs = pick_preferences(inst);
  BestOrdering best;
  auto consider = [&](const Ordering& order) {
    Allocation alloc = round_robin_lowest(inst, order, prefs);
    Rational sw = social_welfare(inst, alloc);
    ++best.orderings_tried;
    if (best.ordering.empty() || sw > best.welfare ||
        (sw == best.welfare && order < best.ordering)) {
      best.ordering = order;
      best.allocation = std::move(alloc);
      best.welfare = std::move(sw);
    }
  };

  Ordering order(inst.n);
  std::iota(order.begin(), order.end(), 0);
  if (saturated_factorial(inst.n) <= budget) {
    do consider(order);
    while (std::next_permutation(order.begin(), order.end()));
    best.exhaustive = true;
    return best;
  }

  best.exhaustive = false;
  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < std::max<std::uint64_t>(samples, 1); ++s) {
    std::iota(order.begin(), order.end(), 0);
    for (int i = inst.n - 1; i > 0; --i)
      std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    consider(order);
  }
  return best;
}

Rational mean_rr_welfare(const Instance& inst, std::uint64_t budget) {
  const std::uint64_t total = saturated_factorial(inst.n);
  if (total > budget) throw BudgetExceeded("mean over all n! orderings", total, budget);
  const auto prefs = pick_preferences(inst);
  Ordering order(inst.n);
  std::iota(order.begin(), order.end(), 0);
  Rational sum = 0;
  do sum += social_welfare(inst, round_robin_lowest(inst, order, prefs));
  while (std::next_permutation(order.begin(), order.end()));
  return sum / Rational(total);
}

Allocation ef1_two_agents(const Instance& inst) {
  if (inst.n != 2) throw ValidationError("construction requires exactly 2 agents");
  std::vector<int> active;
  std::vector<int> dead;  // worth 0 to both agents; utilities unaffected
  for (int g = 0; g < inst.m; ++g) {
    if (inst.value(0, g) == 0 && inst.value(1, g) == 0)
      dead.push_back(g);
    else
      active.push_back(g);
  }

  // Orient roles so that in the utilitarian optimum over the active goods the
  // first role is the poorer agent (strictly-greater goods form its share).
  RoleView roles;
  Rational first_share = 0, second_share = 0;
  for (int g : active) {
    if (inst.value(0, g) > inst.value(1, g))
      first_share += inst.value(0, g);
    else
      second_share += inst.value(1, g);
  }
  if (first_share > second_share) roles = {1, 0};

  const int a = roles.a, b = roles.b;
  std::sort(active.begin(), active.end(), [&](int g, int h) {
    // Descending by the ratio u_a/u_b, with u_b = 0 in front and u_a = 0 in
    // the back; cross-multiplying keeps the comparison exact, including the
    // zero-denominator extremes. Ties fall back to the good index.
    Rational lhs = inst.value(a, g) * inst.value(b, h);
    Rational rhs = inst.value(a, h) * inst.value(b, g);
    if (lhs != rhs) return lhs > rhs;
    return g < h;
  });

  const int k = static_cast<int>(active.size());
  std::vector<Rational> prefix_a(k + 1, Rational(0));
  for (int t = 0; t < k; ++t) prefix_a[t + 1] = prefix_a[t] + inst.value(a, active[t]);
  const Rational total_a = prefix_a[k];

  int split = 0;
  while (split < k && inst.value(a, active[split]) > inst.value(b, active[split])) ++split;
  int f = split;
  // u_a(R(f+2)) = total_a - prefix_a[f+1]; the loop terminates before f = k
  // because the right side is eventually empty.
  while (f < k && prefix_a[f] < total_a - prefix_a[std::min(f + 1, k)]) ++f;

  std::vector<int> owner(inst.m, b);
  for (int t = 0; t < f; ++t) owner[active[t]] = a;
  return Allocation{std::move(owner)};
}

Allocation efx_two_agents(const Instance& inst, std::uint64_t budget) {
  if (inst.n != 2) throw ValidationError("construction requires exactly 2 agents");
  if (inst.m >= 64 || (1ull << inst.m) > budget)
    throw BudgetExceeded("bundle enumeration needs 2^m steps",
                         inst.m >= 64 ? std::numeric_limits<std::uint64_t>::max()
                                      : (1ull << inst.m),
                         budget);

  // Most-equal bipartition of the goods by agent `who`'s utility, with all of
  // that agent's zero-valued goods forced into the second bundle. Returns the
  // first bundle (value >= 1/2, minimal; ties -> lexicographically smallest
  // good list) and its value.
  auto most_equal = [&](int who) {
    std::vector<int> positive;
    for (int g = 0; g < inst.m; ++g)
      if (inst.value(who, g) > 0) positive.push_back(g);
    const int k = static_cast<int>(positive.size());
    const Rational half(1, 2);
    std::uint64_t mask = 0;  // gray-code walk, one value update per step
    Rational value = 0;
    std::optional<Rational> best;
    std::uint64_t best_mask = 0;
    std::vector<int> best_list;
    auto list_of = [&](std::uint64_t bits) {
      std::vector<int> out;
      for (int t = 0; t < k; ++t)
        if (bits >> t & 1) out.push_back(positive[t]);
      return out;
    };
    for (std::uint64_t step = 0;; ++step) {
      if (value >= half) {
        if (!best || value < *best) {
          best = value;
          best_mask = mask;
          best_list = list_of(mask);
        } else if (value == *best) {
          std::vector<int> cand = list_of(mask);
          if (cand < best_list) {
            best_mask = mask;
            best_list = std::move(cand);
          }
        }
      }
      if (step + 1 >= (1ull << k)) break;
      std::uint64_t next = (step + 1) ^ ((step + 1) >> 1);
      int bit = 0;
      std::uint64_t flipped = mask ^ next;
      while (!(flipped >> bit & 1)) ++bit;
      if (next >> bit & 1)
        value += inst.value(who, positive[bit]);
      else
        value -= inst.value(who, positive[bit]);
      mask = next;
    }
    return std::pair<Rational, std::vector<int>>(*best, list_of(best_mask));
  };

  auto [x0, bundle0] = most_equal(0);
  auto [x1, bundle1] = most_equal(1);
  // The partitioning role goes to the agent whose split is more equal
  // (smaller large side); ties keep the natural order.
  const int first = (x1 < x0) ? 1 : 0;
  const int second = 1 - first;
  const std::vector<int>& top = (first == 0) ? bundle0 : bundle1;

  std::vector<char> in_top(inst.m, 0);
  for (int g : top) in_top[g] = 1;
  Rational z = 0;
  for (int g = 0; g < inst.m; ++g)
    if (in_top[g]) z += inst.value(second, g);

  // z <= 1-z: the partitioning agent keeps her larger bundle (envy-free).
  // Otherwise hand it to the other agent; any leftover envy could be removed
  // by moving a good across, contradicting the most-equal choice.
  const bool first_keeps_top = z <= 1 - z;
  std::vector<int> owner(inst.m);
  for (int g = 0; g < inst.m; ++g) {
    bool top_side = in_top[g];
    owner[g] = (top_side == first_keeps_top) ? first : second;
  }
  return Allocation{std::move(owner)};
}

Allocation balanced_two_agents(const Instance& inst) {
  if (inst.n != 2) throw ValidationError("construction requires exactly 2 agents");
  const int padded = inst.m + (inst.m % 2);  // dummy good worth 0 to both
  auto diff = [&](int agent, int g) -> Rational {
    if (g >= inst.m) return Rational(0);
    return inst.value(agent, g) - inst.value(1 - agent, g);
  };

  int nonneg = 0;
  for (int g = 0; g < padded; ++g)
    if (diff(0, g) >= 0) ++nonneg;
  // Roles: the first role must hold a majority of the nonnegative-difference
  // goods; natural order is kept when both qualify.
  const int lead = (nonneg >= padded / 2) ? 0 : 1;

  std::vector<int> order(padded);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int g, int h) {
    if (diff(lead, g) != diff(lead, h)) return diff(lead, g) > diff(lead, h);
    return g < h;
  });

  std::vector<int> owner(inst.m, 1 - lead);
  for (int t = 0; t < padded / 2; ++t)
    if (order[t] < inst.m) owner[order[t]] = lead;
  return Allocation{std::move(owner)};
}

Allocation balanced_high_welfare(const Instance& inst, std::uint64_t budget, std::uint64_t seed) {
  const OptimalWelfare opt = optimal_welfare(inst);
  if (opt.value * opt.value <= Rational(16) * inst.n)
    return best_rr_ordering(inst, budget, seed).allocation;

  std::vector<std::vector<int>> bundles(inst.n);
  for (int g = 0; g < inst.m; ++g) bundles[opt.allocation.owner[g]].push_back(g);

  // Agents with large optimal bundles are few and contribute little, so their
  // goods are freed for rebalancing; the rest keep their top slice.
  const bool many_goods = inst.m >= inst.n;
  const int keep_quota = many_goods ? (inst.m + 2 * inst.n - 1) / (2 * inst.n) : 1;
  auto is_large = [&](std::size_t size) {
    const BigInt s(size);
    return many_goods ? s * s * inst.n >= BigInt(inst.m) * inst.m : s * s >= inst.n;
  };

  std::vector<int> owner(inst.m, -1);
  std::vector<int> load(inst.n, 0);
  for (int i = 0; i < inst.n; ++i) {
    if (is_large(bundles[i].size())) continue;
    std::vector<int>& mine = bundles[i];
    std::sort(mine.begin(), mine.end(), [&](int g, int h) {
      if (inst.value(i, g) != inst.value(i, h)) return inst.value(i, g) > inst.value(i, h);
      return g < h;
    });
    for (int t = 0; t < std::min<int>(keep_quota, static_cast<int>(mine.size())); ++t) {
      owner[mine[t]] = i;
      ++load[i];
    }
  }
  for (int g = 0; g < inst.m; ++g) {
    if (owner[g] != -1) continue;
    int target = 0;
    for (int i = 1; i < inst.n; ++i)
      if (load[i] < load[target]) target = i;
    owner[g] = target;
    ++load[target];
  }
  return Allocation{std::move(owner)};
}

LogBucketPlan log_bucket_ordering(const Instance& inst) {
  LogBucketPlan plan;
  plan.ordering.resize(inst.n);
  std::iota(plan.ordering.begin(), plan.ordering.end(), 0);

  int r = 0;
  const BigInt msq = BigInt(inst.m) * inst.m * inst.n;
  while ((BigInt(1) << (2 * r)) < msq) ++r;
  plan.tail_level = r;
  if (r == 0 || inst.m == 0) {
    plan.arbitrary_order = true;
    return plan;
  }

  const OptimalWelfare opt = optimal_welfare(inst);
  auto level_of = [&](const Rational& v) {
    for (int level = 0; level < r; ++level)
      if (v > Rational(BigInt(1), BigInt(1) << (level + 1))) return level;
    return r;
  };
  std::vector<Rational> level_welfare(r, Rational(0));
  std::vector<std::vector<std::vector<int>>> level_goods(
      inst.n, std::vector<std::vector<int>>(r + 1));
  for (int g = 0; g < inst.m; ++g) {
    const int i = opt.allocation.owner[g];
    const int level = level_of(inst.value(i, g));
    level_goods[i][level].push_back(g);
    if (level < r) level_welfare[level] += inst.value(i, g);
  }

  int chosen = 0;
  for (int level = 1; level < r; ++level)
    if (level_welfare[level] > level_welfare[chosen]) chosen = level;
  plan.chosen_level = chosen;
  std::uint64_t in_level = 0;
  for (int i = 0; i < inst.n; ++i) in_level += level_goods[i][chosen].size();
  plan.bucket_size = in_level;

  if (in_level > 2ull * static_cast<std::uint64_t>(inst.n)) {
    plan.arbitrary_order = true;
    return plan;  // identity ordering: any ordering achieves the level bound
  }

  // Step-by-step ordering: place agents whose chosen-level goods survive the
  // picks made so far, simulating the first pick of each placed agent.
  int steps = 0;
  while (steps * steps < 16 * inst.n) ++steps;  // ceil(4*sqrt(n))
  steps = std::min(steps, inst.n);

  std::vector<char> placed(inst.n, 0);
  std::vector<char> taken(inst.m, 0);
  Ordering order;
  for (int k = 0; k < steps; ++k) {
    int pick = -1;
    for (int i = 0; i < inst.n && pick == -1; ++i) {
      if (placed[i]) continue;
      for (int g : level_goods[i][chosen])
        if (!taken[g]) {
          pick = i;
          break;
        }
    }
    if (pick == -1) break;
    placed[pick] = 1;
    order.push_back(pick);
    int favorite = -1;
    for (int g = 0; g < inst.m; ++g) {
      if (taken[g]) continue;
      if (favorite == -1 || inst.value(pick, g) > inst.value(pick, favorite)) favorite = g;
    }
    if (favorite != -1) taken[favorite] = 1;
  }
  for (int i = 0; i < inst.n; ++i)
    if (!placed[i]) order.push_back(i);
  plan.ordering = std::move(order);
  return plan;
}

BucketedResult bucketed_rr_ordering(const Instance& inst, std::uint64_t budget,
                                    std::uint64_t seed) {
  const OptimalWelfare opt = optimal_welfare(inst);
  int log_floor = 0;
  {
    BigInt goods_agents = BigInt(inst.m) * inst.n;
    while ((BigInt(1) << (log_floor + 1)) <= goods_agents) ++log_floor;
  }
  BucketedResult result;
  const Rational threshold_sq = Rational(4225) * inst.n * log_floor * log_floor;
  if (opt.value * opt.value <= threshold_sq) {
    BestOrdering best = best_rr_ordering(inst, budget, seed);
    result.ordering = std::move(best.ordering);
    result.allocation = std::move(best.allocation);
    result.welfare = std::move(best.welfare);
    result.small_opt_branch = true;
    return result;
  }
  LogBucketPlan plan = log_bucket_ordering(inst);
  result.ordering = std::move(plan.ordering);
  result.allocation = round_robin(inst, result.ordering);
  result.welfare = social_welfare(inst, result.allocation);
  result.small_opt_branch = false;
  return result;
}

}  // namespace fairdiv
