#include "fairdiv/fixtures.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

struct FamilyEntry {
  FixtureFamily family;
  const char* tag;
};

constexpr FamilyEntry kFamilies[] = {
    {FixtureFamily::Thm1Sqrt, "thm1-sqrt"},
    {FixtureFamily::Ef1Two, "ef1-2"},
    {FixtureFamily::EfxTwo, "efx-2"},
    {FixtureFamily::IdentityMatch, "identity-match"},
    {FixtureFamily::RrPrice, "rr-price"},
    {FixtureFamily::RrStrong, "rr-strong"},
    {FixtureFamily::BalTwo, "bal-2"},
    {FixtureFamily::WelfareLinear, "welfare-linear"},
    {FixtureFamily::MewInfinite, "mew-infinite"},
    {FixtureFamily::MnwTwo, "mnw-2"},
    {FixtureFamily::MewTwo, "mew-2"},
    {FixtureFamily::PoQuadratic, "po-quadratic"},
};

int isqrt_floor(int n) {
  int r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

void require_eps(const Rational& eps, const Rational& upper, const std::string& family) {
  require(eps > 0 && eps < upper,
          family + " needs 0 < eps < " + fraction_string(upper) + ", got " +
              fraction_string(eps));
}

std::vector<std::vector<Rational>> zero_matrix(int n, int m) {
  return std::vector<std::vector<Rational>>(n, std::vector<Rational>(m, Rational(0)));
}

bool price_better(const PriceValue& a, const PriceValue& b) {
  if (a.infinite != b.infinite) return a.infinite;
  if (a.infinite) return false;
  return a.value > b.value;
}

}  // namespace

std::string family_tag(FixtureFamily family) {
  for (const FamilyEntry& e : kFamilies)
    if (e.family == family) return e.tag;
  throw std::logic_error("unknown fixture family");
}

FixtureFamily parse_family(const std::string& tag) {
  for (const FamilyEntry& e : kFamilies)
    if (tag == e.tag) return e.family;
  std::string known;
  for (const FamilyEntry& e : kFamilies) {
    if (!known.empty()) known += ", ";
    known += e.tag;
  }
  throw ParseError("unknown fixture family '" + tag + "' (expected one of: " + known + ")");
}

Instance generate_fixture(const FixtureSpec& spec, std::uint64_t budget) {
  switch (spec.family) {
    case FixtureFamily::Thm1Sqrt: {
      require(spec.n >= 1, "thm1-sqrt needs n >= 1");
      const int n = spec.n;
      const int r = isqrt_floor(n);
      auto u = zero_matrix(n, n);
      for (int a = 0; a + 1 < r; ++a)
        for (int g = a * r; g < (a + 1) * r; ++g) u[a][g] = Rational(1, r);
      for (int g = r * (r - 1); g < n; ++g) u[r - 1][g] = Rational(1, n - r * (r - 1));
      for (int a = r; a < n; ++a)
        for (int g = 0; g < n; ++g) u[a][g] = Rational(1, n);
      return make_instance(n, std::move(u));
    }
    case FixtureFamily::Ef1Two: {
      require_eps(spec.eps, Rational(1, 6), "ef1-2");
      const Rational& e = spec.eps;
      return make_instance(2, {{Rational(1, 3) - 2 * e, Rational(1, 3) + e, Rational(1, 3) + e},
                               {Rational(0), Rational(1, 2), Rational(1, 2)}});
    }
    case FixtureFamily::EfxTwo: {
      require_eps(spec.eps, Rational(1, 2), "efx-2");
      const Rational& e = spec.eps;
      return make_instance(2, {{Rational(1, 2) + e, Rational(1, 2) - e, Rational(0)},
                               {Rational(1, 2) + e, Rational(0), Rational(1, 2) - e}});
    }
    case FixtureFamily::IdentityMatch: {
      require(spec.n >= 1, "identity-match needs n >= 1");
      auto u = zero_matrix(spec.n, spec.n);
      for (int a = 0; a < spec.n; ++a) u[a][a] = Rational(1);
      return make_instance(spec.n, std::move(u));
    }
    case FixtureFamily::RrPrice: {
      require(spec.n >= 1, "rr-price needs n >= 1");
      require(spec.x >= 1 && spec.x % spec.n == 0, "rr-price needs x divisible by n");
      std::uint64_t m = 1;
      for (int k = 0; k < spec.n; ++k) {
        if (m > budget / static_cast<std::uint64_t>(spec.x))
          throw BudgetExceeded("rr-price generates x^n goods",
                               std::numeric_limits<std::uint64_t>::max(), budget);
        m *= static_cast<std::uint64_t>(spec.x);
      }
      if (m > budget || m > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw BudgetExceeded("rr-price generates x^n goods", m, budget);
      const int goods = static_cast<int>(m);
      auto u = zero_matrix(spec.n, goods);
      long long range = 1;
      for (int a = 0; a < spec.n; ++a) {
        range *= spec.x;  // x^(a+1), bounded by the checked good count
        const Rational v(1, range);
        for (long long g = 0; g < range; ++g) u[a][static_cast<int>(g)] = v;
      }
      return make_instance(spec.n, std::move(u));
    }
    case FixtureFamily::RrStrong: {
      require(spec.n >= 2, "rr-strong needs n >= 2");
      require(spec.m >= spec.n && spec.m % spec.n == 0,
              "rr-strong needs m >= n with m divisible by n");
      auto u = zero_matrix(spec.n, spec.m);
      for (int g = 0; g < spec.m; ++g) u[0][g] = Rational(1, spec.m);
      for (int a = 1; a < spec.n; ++a) u[a][a - 1] = Rational(1);
      return make_instance(spec.n, std::move(u));
    }
    case FixtureFamily::BalTwo: {
      require(spec.m >= 2 && spec.m % 2 == 0, "bal-2 needs even m >= 2");
      auto u = zero_matrix(2, spec.m);
      u[0][0] = Rational(1);
      for (int g = 0; g < spec.m; ++g) u[1][g] = Rational(1, spec.m);
      return make_instance(2, std::move(u));
    }
    case FixtureFamily::WelfareLinear: {
      require(spec.n >= 2, "welfare-linear needs n >= 2");
      require_eps(spec.eps, Rational(1), "welfare-linear");
      auto u = zero_matrix(spec.n, spec.n);
      u[0][0] = Rational(1);
      for (int a = 1; a < spec.n; ++a) {
        u[a][a - 1] = Rational(1) - spec.eps;
        u[a][a] = spec.eps;
      }
      return make_instance(spec.n, std::move(u));
    }
    case FixtureFamily::MewInfinite: {
      require(spec.n >= 3, "mew-infinite needs n >= 3");
      auto u = zero_matrix(spec.n, spec.n);
      u[0][0] = Rational(1);
      for (int a = 1; a < spec.n; ++a) u[a][a - 1] = Rational(1);
      return make_instance(spec.n, std::move(u));
    }
    case FixtureFamily::MnwTwo: {
      require_eps(spec.eps, Rational(1, 7), "mnw-2");
      const Rational& e = spec.eps;
      return make_instance(2, {{Rational(2, 3), Rational(1, 3), Rational(0)},
                               {Rational(4, 7) - e, Rational(1, 7) + e, Rational(2, 7)}});
    }
    case FixtureFamily::MewTwo: {
      require_eps(spec.eps, Rational(1, 2), "mew-2");
      const Rational& e = spec.eps;
      return make_instance(2, {{Rational(1, 2), Rational(1, 2) - e, e},
                               {Rational(1, 2), e, Rational(1, 2) - e}});
    }
    case FixtureFamily::PoQuadratic: {
      require(spec.n >= 2, "po-quadratic needs n >= 2");
      require_eps(spec.eps, Rational(1, spec.n), "po-quadratic");
      auto u = zero_matrix(spec.n, spec.n);
      u[0][0] = Rational(1, spec.n) + spec.eps;
      for (int g = 1; g < spec.n; ++g)
        u[0][g] = Rational(1, spec.n) - spec.eps / (spec.n - 1);
      for (int a = 1; a < spec.n; ++a) {
        u[a][a - 1] = Rational(1) - spec.eps;
        u[a][a] = spec.eps;
      }
      return make_instance(spec.n, std::move(u));
    }
  }
  throw std::logic_error("unknown fixture family");
}

std::vector<ExpectedPrice> fixture_expected_prices(const FixtureSpec& spec) {
  std::vector<ExpectedPrice> out;
  out.reserve(kAllProperties.size());
  auto exact = [&](PropertyId property, Rational opt, Rational best, Rational worst) {
    ExpectedPrice e;
    e.property = property;
    e.opt = opt;
    e.best_fair = best;
    e.worst_fair = worst;
    e.price = opt == 0 ? finite_price(Rational(1))
                       : (best == 0 ? infinite_price() : finite_price(opt / best));
    e.strong_price = opt == 0 ? finite_price(Rational(1))
                              : (worst == 0 ? infinite_price() : finite_price(opt / worst));
    out.push_back(std::move(e));
    return &out.back();
  };

  switch (spec.family) {
    case FixtureFamily::Thm1Sqrt: {
      const int r = isqrt_floor(spec.n);
      ExpectedPrice ef1;
      ef1.property = PropertyId::Ef1;
      ef1.opt = Rational(r);
      ef1.best_fair_upper = BoundValue{Rational(2), true};
      ef1.proof_ratio = Rational(r, 2);
      out.push_back(std::move(ef1));
      ExpectedPrice bal;
      bal.property = PropertyId::Bal;
      bal.opt = Rational(r);
      bal.best_fair_upper = BoundValue{Rational(2), false};
      bal.proof_ratio = Rational(r, 2);
      out.push_back(std::move(bal));
      break;
    }
    case FixtureFamily::Ef1Two: {
      const Rational& e = spec.eps;
      auto* row = exact(PropertyId::Ef1, Rational(4, 3) - 2 * e, Rational(7, 6) - e,
                        Rational(0));
      row->worst_fair.reset();
      row->strong_price.reset();
      row->limit = Rational(8, 7);
      break;
    }
    case FixtureFamily::EfxTwo: {
      const Rational& e = spec.eps;
      auto* row = exact(PropertyId::Efx, Rational(3, 2) - e, Rational(1), Rational(0));
      row->worst_fair.reset();
      row->strong_price.reset();
      row->limit = Rational(3, 2);
      break;
    }
    case FixtureFamily::IdentityMatch: {
      const int n = spec.n;
      const Rational worst = n >= 2 ? Rational(0) : Rational(1);
      exact(PropertyId::Ef1, Rational(n), Rational(n), worst);
      exact(PropertyId::Bal, Rational(n), Rational(n), worst);
      if (n == 2) exact(PropertyId::Efx, Rational(n), Rational(n), worst);
      break;
    }
    case FixtureFamily::RrPrice: {
      const Rational opt = Rational(spec.n) - Rational(spec.n - 1, spec.x);
      exact(PropertyId::Rr, opt, Rational(1), Rational(1));
      break;
    }
    case FixtureFamily::RrStrong: {
      const Rational opt = Rational(spec.n) - Rational(spec.n - 1, spec.m);
      const Rational best = Rational(spec.n - 1) + Rational(1, spec.n);
      exact(PropertyId::Rr, opt, best, Rational(1, spec.n));
      break;
    }
    case FixtureFamily::BalTwo: {
      const Rational opt = Rational(2) - Rational(1, spec.m);
      exact(PropertyId::Bal, opt, Rational(3, 2), Rational(1, 2));
      break;
    }
    case FixtureFamily::WelfareLinear: {
      const int n = spec.n;
      const Rational& e = spec.eps;
      const Rational opt = Rational(1) + (n - 2) * (Rational(1) - e) + e;
      const Rational fair = Rational(1) + (n - 1) * e;
      const Rational proof = (n - 1) * (Rational(1) - e) / fair;
      for (PropertyId property : {PropertyId::Mnw, PropertyId::Mew, PropertyId::Lex}) {
        auto* row = exact(property, opt, fair, fair);
        row->proof_ratio = proof;
        row->limit = Rational(n - 1);
      }
      break;
    }
    case FixtureFamily::MewInfinite: {
      exact(PropertyId::Mew, Rational(spec.n - 1), Rational(spec.n - 1), Rational(0));
      break;
    }
    case FixtureFamily::MnwTwo: {
      const Rational fair = Rational(23, 21) + spec.eps;
      auto* row = exact(PropertyId::Mnw, Rational(9, 7), fair, fair);
      row->limit = Rational(27, 23);
      break;
    }
    case FixtureFamily::MewTwo: {
      const Rational& e = spec.eps;
      const Rational opt = std::max(Rational(3, 2) - 2 * e, Rational(1, 2) + 2 * e);
      auto* row = exact(PropertyId::Mew, opt, Rational(1), Rational(1));
      if (e < Rational(1, 4)) row->limit = Rational(3, 2);
      break;
    }
    case FixtureFamily::PoQuadratic: {
      if (spec.n == 2 && spec.eps < Rational(1, 4)) {
        const Rational& e = spec.eps;
        const Rational opt = Rational(3, 2) - 2 * e;
        auto* row = exact(PropertyId::Po, opt, opt, Rational(1, 2) + 2 * e);
        row->limit = Rational(3);
      } else {
        ExpectedPrice row;
        row.property = PropertyId::Po;
        row.price = finite_price(Rational(1));
        out.push_back(std::move(row));
      }
      break;
    }
  }
  return out;
}

Instance random_instance(SplitMix64& rng, int n, int m) {
  if (n < 1 || m < 1) throw ValidationError("random instances need n >= 1 and m >= 1");
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
  for (int a = 0; a < n; ++a) {
    bool any = false;
    for (int g = 0; g < m; ++g) {
      const std::uint64_t w = rng.below(17);
      rows[a][g] = Rational(w);
      any = any || w > 0;
    }
    if (!any) rows[a][static_cast<int>(rng.below(static_cast<std::uint64_t>(m)))] = Rational(1);
  }
  return make_instance(n, std::move(rows));
}

SearchResult adversarial_search(PropertyId property, int n, int m, std::uint64_t seed,
                                std::uint64_t iters, std::uint64_t budget) {
  if (n < 1 || m < 1) throw ValidationError("search needs n >= 1 and m >= 1");
  constexpr std::uint64_t kEvalsPerRestart = 256;
  const std::uint64_t restarts = std::max<std::uint64_t>(1, iters / kEvalsPerRestart);
  const Rational step(1, 64);

  struct RestartOutcome {
    Instance instance;
    PriceReport report;
    std::string text;
    std::uint64_t evaluations = 0;
  };

  auto run_restart = [&](std::uint64_t index) {
    SplitMix64 rng(mix_seed(seed, index));
    std::vector<std::vector<Rational>> weights(n, std::vector<Rational>(m));
    for (auto& row : weights)
      for (auto& w : row) w = Rational(1 + rng.below(16));

    RestartOutcome best;
    std::uint64_t evals = 0;
    auto evaluate = [&](const std::vector<std::vector<Rational>>& candidate) {
      ++evals;
      Instance inst = make_instance(n, candidate);
      PriceReport report = price_of(inst, property, budget);
      return std::pair<Instance, PriceReport>(std::move(inst), std::move(report));
    };

    auto [inst, report] = evaluate(weights);
    best.instance = std::move(inst);
    best.report = std::move(report);

    bool improved = true;
    while (improved && evals < kEvalsPerRestart) {
      improved = false;
      std::vector<std::vector<Rational>> next;
      PriceReport next_report;
      Instance next_inst;
      for (int a = 0; a < n && evals < kEvalsPerRestart; ++a) {
        for (int g = 0; g < m && evals < kEvalsPerRestart; ++g) {
          for (int dir : {+1, -1}) {
            if (evals >= kEvalsPerRestart) break;
            std::vector<std::vector<Rational>> candidate = weights;
            candidate[a][g] += dir * step;
            if (candidate[a][g] < 0) continue;
            bool all_zero = true;
            for (const Rational& w : candidate[a])
              if (w > 0) {
                all_zero = false;
                break;
              }
            if (all_zero) continue;
            auto [cand_inst, cand_report] = evaluate(candidate);
            const PriceValue& incumbent = next.empty() ? best.report.price : next_report.price;
            if (price_better(cand_report.price, incumbent)) {
              next = std::move(candidate);
              next_report = std::move(cand_report);
              next_inst = std::move(cand_inst);
            }
          }
        }
      }
      if (!next.empty()) {
        weights = std::move(next);
        best.instance = std::move(next_inst);
        best.report = std::move(next_report);
        improved = true;
      }
    }
    best.text = serialize_instance(best.instance);
    best.evaluations = evals;
    return best;
  };

  std::vector<RestartOutcome> outcomes(restarts);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t lanes = std::min<std::uint64_t>(restarts, hw);
  if (lanes <= 1) {
    for (std::uint64_t r = 0; r < restarts; ++r) outcomes[r] = run_restart(r);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(lanes);
    for (std::uint64_t lane = 0; lane < lanes; ++lane)
      pool.emplace_back([&, lane] {
        for (std::uint64_t r = lane; r < restarts; r += lanes) outcomes[r] = run_restart(r);
      });
  }

  SearchResult result;
  std::string result_text;
  std::uint64_t total_evals = 0;
  for (RestartOutcome& outcome : outcomes) {
    total_evals += outcome.evaluations;
    const bool take = result_text.empty() ||
                      price_better(outcome.report.price, result.report.price) ||
                      (outcome.report.price == result.report.price &&
                       outcome.text < result_text);
    if (take) {
      result.instance = std::move(outcome.instance);
      result.report = std::move(outcome.report);
      result_text = std::move(outcome.text);
    }
  }
  result.evaluations = total_evals;
  return result;
}

}  // namespace fairdiv
