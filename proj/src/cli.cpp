#include "fairdiv/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fairdiv/checkers.hpp"
#include "fairdiv/constructive.hpp"
#include "fairdiv/enumerate.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fixtures.hpp"
#include "fairdiv/pof.hpp"
#include "fairdiv/prng.hpp"
#include "fairdiv/solvers.hpp"

namespace fairdiv {

namespace {

using nlohmann::ordered_json;

/// Flag-level mistakes (unknown command, missing required flag, unreadable
/// file). Distinct from ParseError/ValidationError, which concern document
/// contents.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// JSON builders. All rationals are rendered as "p/q" (or "p") strings and all
// agent/good indices as 1-based numbers, matching the instance/allocation
// document conventions.
// ---------------------------------------------------------------------------

ordered_json rat(const Rational& v) { return fraction_string(v); }

ordered_json alloc_json(const Allocation& alloc) {
  ordered_json owners = ordered_json::array();
  for (int a : alloc.owner) owners.push_back(a + 1);
  ordered_json doc;
  doc["owner"] = std::move(owners);
  return doc;
}

ordered_json utils_json(const UtilityVector& utils) {
  ordered_json arr = ordered_json::array();
  for (const Rational& u : utils) arr.push_back(rat(u));
  return arr;
}

ordered_json ordering_json(const Ordering& order) {
  ordered_json arr = ordered_json::array();
  for (int a : order) arr.push_back(a + 1);
  return arr;
}

ordered_json instance_json(const Instance& inst) {
  ordered_json doc;
  doc["n"] = inst.n;
  doc["m"] = inst.m;
  ordered_json rows = ordered_json::array();
  for (const auto& row : inst.utilities) {
    ordered_json out_row = ordered_json::array();
    for (const Rational& v : row) {
      if (denominator(v) == 1 && numerator(v) >= 0 && numerator(v) <= 1000000000)
        out_row.push_back(static_cast<long long>(numerator(v)));
      else
        out_row.push_back(fraction_string(v));
    }
    rows.push_back(std::move(out_row));
  }
  doc["utilities"] = std::move(rows);
  return doc;
}

ordered_json report_json(const PriceReport& report) {
  ordered_json doc;
  doc["property"] = property_tag(report.property);
  doc["opt"] = rat(report.opt);
  doc["best_fair"] = rat(report.best_fair);
  doc["worst_fair"] = rat(report.worst_fair);
  doc["price"] = price_string(report.price);
  doc["strong_price"] = price_string(report.strong_price);
  doc["fair_count"] = report.fair_count;
  doc["optimal"] = alloc_json(report.optimal);
  doc["best_witness"] = alloc_json(report.best_witness);
  doc["worst_witness"] = alloc_json(report.worst_witness);
  return doc;
}

ordered_json violation_json(const Violation& violation) {
  ordered_json doc;
  if (const auto* envy = std::get_if<EnvyViolation>(&violation)) {
    doc["kind"] = "envy";
    doc["envier"] = envy->envier + 1;
    doc["envied"] = envy->envied + 1;
    ordered_json bundle = ordered_json::array();
    for (int g : envy->envied_bundle) bundle.push_back(g + 1);
    doc["envied_bundle"] = std::move(bundle);
    if (envy->removed_good)
      doc["removed_good"] = *envy->removed_good + 1;
    else
      doc["removed_good"] = nullptr;
    doc["envier_value"] = rat(envy->envier_value);
    doc["remaining_value"] = rat(envy->remaining_value);
  } else if (const auto* bal = std::get_if<BalanceViolation>(&violation)) {
    doc["kind"] = "imbalance";
    doc["larger_agent"] = bal->larger_agent + 1;
    doc["smaller_agent"] = bal->smaller_agent + 1;
    doc["larger_size"] = bal->larger_size;
    doc["smaller_size"] = bal->smaller_size;
  } else {
    const auto& pareto = std::get<ParetoViolation>(violation);
    doc["kind"] = "dominated";
    doc["improvement"] = alloc_json(pareto.improvement);
  }
  return doc;
}

/// Semantic inputs only: the worker count and output path are deliberately
/// left out so that runs differing only in parallelism or redirection emit
/// byte-identical documents.
ordered_json config_json(const RunConfig& c) {
  ordered_json doc;
  if (c.instance_path) doc["instance"] = *c.instance_path;
  if (c.allocation_path) doc["allocation"] = *c.allocation_path;
  if (c.property) doc["property"] = *c.property;
  if (c.objective) doc["objective"] = *c.objective;
  if (c.algorithm) doc["alg"] = *c.algorithm;
  if (c.order) doc["order"] = *c.order;
  doc["ties"] = c.ties;
  if (c.family) doc["family"] = *c.family;
  if (c.n) doc["n"] = *c.n;
  if (c.m) doc["m"] = *c.m;
  if (c.x) doc["x"] = *c.x;
  if (c.eps) doc["eps"] = *c.eps;
  doc["seed"] = c.seed;
  doc["iters"] = c.iters;
  doc["budget"] = c.budget;
  doc["format"] = c.format;
  return doc;
}

ordered_json envelope(const char* command, const RunConfig& c) {
  ordered_json doc;
  doc["command"] = command;
  doc["config"] = config_json(c);
  return doc;
}

// ---------------------------------------------------------------------------
// Human-readable rendering: one aligned "label  value" line per leaf, with
// every rational shown both exactly and as a clearly approximate decimal.
// ---------------------------------------------------------------------------

bool looks_rational(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  bool any_digit = false;
  bool slash = false;
  bool digit_after_slash = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '/') {
      if (slash || !any_digit) return false;
      slash = true;
    } else if (ch >= '0' && ch <= '9') {
      any_digit = true;
      if (slash) digit_after_slash = true;
    } else {
      return false;
    }
  }
  return any_digit && (!slash || digit_after_slash);
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (looks_rational(s)) return s + " (" + decimal_hint(parse_rational(s)) + ")";
    return s;
  }
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_scalar(const ordered_json& v) { return !v.is_object() && !v.is_array(); }

void collect_lines(const std::string& prefix, const ordered_json& v,
                   std::vector<std::pair<std::string, std::string>>& lines) {
  if (v.is_object()) {
    for (const auto& item : v.items()) {
      const std::string next = prefix.empty() ? item.key() : prefix + "." + item.key();
      collect_lines(next, item.value(), lines);
    }
    return;
  }
  if (v.is_array()) {
    const bool flat = std::all_of(v.begin(), v.end(), is_scalar);
    if (flat) {
      std::string joined;
      for (const auto& e : v) {
        if (!joined.empty()) joined += "  ";
        joined += scalar_text(e);
      }
      lines.emplace_back(prefix, joined.empty() ? "(empty)" : joined);
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i)
      collect_lines(prefix + "[" + std::to_string(i + 1) + "]", v[i], lines);
    return;
  }
  lines.emplace_back(prefix, scalar_text(v));
}

std::string render_table(const ordered_json& doc) {
  std::vector<std::pair<std::string, std::string>> lines;
  collect_lines("", doc, lines);
  std::size_t width = 0;
  for (const auto& [label, text] : lines) width = std::max(width, label.size());
  std::ostringstream out;
  for (const auto& [label, text] : lines)
    out << label << std::string(width - label.size() + 2, ' ') << text << "\n";
  return out.str();
}

void emit_document(const RunConfig& c, const ordered_json& doc, std::ostream& out,
                   const std::string* table_override = nullptr) {
  std::string text;
  if (c.format == "table")
    text = table_override ? *table_override : render_table(doc);
  else
    text = doc.dump(2) + "\n";
  if (c.out_path) {
    std::ofstream file(*c.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write file: " + *c.out_path);
    file << text;
  } else {
    out << text;
  }
}

// ---------------------------------------------------------------------------
// Flag parsing helpers.
// ---------------------------------------------------------------------------

TieRule parse_ties(const std::string& text) {
  TieRule rule;
  if (text == "lowest")
    rule.policy = TiePolicy::LowestIndex;
  else if (text == "adversarial")
    rule.policy = TiePolicy::AdversarialEnumerate;
  else
    throw UsageError("--ties must be lowest or adversarial, got '" + text + "'");
  return rule;
}

Ordering parse_order_flag(const std::string& text, const Instance& inst) {
  Ordering order;
  std::string token;
  std::istringstream stream(text);
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t used = 0;
      const int agent = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      order.push_back(agent - 1);  // flags use 1-based agents
    } catch (const std::exception&) {
      throw UsageError("--order must be a comma list of agents, got '" + text + "'");
    }
  }
  validate_ordering(inst, order);
  return order;
}

FixtureSpec spec_from_config(const RunConfig& c) {
  if (!c.family) throw UsageError("this command needs --family (or --instance)");
  FixtureSpec spec;
  spec.family = parse_family(*c.family);
  spec.n = c.n.value_or(0);
  spec.m = c.m.value_or(0);
  spec.x = c.x.value_or(0);
  spec.eps = c.eps ? parse_rational(*c.eps) : Rational(0);
  return spec;
}

Instance load_instance(const RunConfig& c) {
  if (c.instance_path) return parse_instance(read_file(*c.instance_path));
  if (c.family) return generate_fixture(spec_from_config(c), c.budget);
  throw UsageError("this command needs --instance PATH or --family TAG");
}

PropertyId required_property(const RunConfig& c) {
  if (!c.property) throw UsageError("this command needs --property");
  return parse_property(*c.property);
}

int ceil_log2(const BigInt& v) {
  int k = 0;
  while ((BigInt(1) << k) < v) ++k;
  return k;
}

int isqrt(int v) {
  int r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// Commands.
// ---------------------------------------------------------------------------

int cmd_generate(const RunConfig& c, std::ostream& out) {
  const Instance inst = generate_fixture(spec_from_config(c), c.budget);
  ordered_json doc = instance_json(inst);
  doc["config"] = config_json(c);
  emit_document(c, doc, out);
  return 0;
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  const Instance inst = load_instance(c);
  if (!c.allocation_path) throw UsageError("check needs --allocation PATH");
  const Allocation alloc = parse_allocation(read_file(*c.allocation_path), inst);
  const PropertyId property = required_property(c);

  PropertyWitness witness;
  switch (property) {
    case PropertyId::Ef1: witness = is_ef1(inst, alloc); break;
    case PropertyId::Efx: witness = is_efx(inst, alloc); break;
    case PropertyId::Bal: witness = is_balanced(inst, alloc); break;
    case PropertyId::Po: witness = is_pareto_optimal(inst, alloc, c.budget); break;
    default:
      throw UsageError("check supports properties ef1, efx, bal, po");
  }

  ordered_json doc = envelope("check", c);
  doc["property"] = property_tag(property);
  doc["allocation"] = alloc_json(alloc);
  doc["welfare"] = rat(social_welfare(inst, alloc));
  doc["satisfied"] = witness.satisfied;
  doc["witness"] = witness.violation ? violation_json(*witness.violation) : ordered_json(nullptr);
  emit_document(c, doc, out);
  return 0;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
  if (!c.objective) throw UsageError("solve needs --objective opt|mnw|mew|leximin");
  const std::string& objective = *c.objective;
  const Instance inst = load_instance(c);

  ordered_json doc = envelope("solve", c);
  doc["objective"] = objective;

  if (objective == "opt") {
    const OptimalWelfare best = optimal_welfare(inst);
    std::uint64_t count = 0;
    Rational top(-1);
    enumerate_allocations(inst, c.budget,
                          [&](const std::vector<int>&, const UtilityVector&,
                              const Rational& welfare) {
                            if (welfare > top) {
                              top = welfare;
                              count = 1;
                            } else if (welfare == top) {
                              ++count;
                            }
                          });
    doc["value"] = rat(best.value);
    doc["witness"] = alloc_json(best.allocation);
    doc["utils"] = utils_json(utility_vector(inst, best.allocation));
    doc["maximizer_count"] = count;
    emit_document(c, doc, out);
    return 0;
  }

  std::vector<Allocation> maximizers;
  if (objective == "mnw")
    maximizers = mnw_allocations(inst, c.budget, c.workers);
  else if (objective == "mew")
    maximizers = mew_allocations(inst, c.budget, c.workers);
  else if (objective == "leximin")
    maximizers = leximin_allocations(inst, c.budget, c.workers);
  else
    throw UsageError("--objective must be opt, mnw, mew, or leximin, got '" + objective + "'");

  const Allocation& witness = maximizers.front();
  UtilityVector utils = utility_vector(inst, witness);
  if (objective == "mnw") {
    const NashValue nash = nash_value(utils);
    doc["value"] = rat(nash.product);
    doc["positive_count"] = nash.positive_count;
  } else if (objective == "mew") {
    doc["value"] = rat(*std::min_element(utils.begin(), utils.end()));
  } else {
    UtilityVector sorted = utils;
    std::sort(sorted.begin(), sorted.end());
    doc["value"] = utils_json(sorted);
  }
  doc["welfare"] = rat(social_welfare(inst, witness));
  doc["witness"] = alloc_json(witness);
  doc["utils"] = utils_json(utils);
  doc["maximizer_count"] = maximizers.size();
  emit_document(c, doc, out);
  return 0;
}

int cmd_construct(const RunConfig& c, std::ostream& out) {
  if (!c.algorithm) throw UsageError("construct needs --alg rr|ef1-2|efx-2|bal-2|bal-n|bucketed-rr");
  const std::string& alg = *c.algorithm;
  const Instance inst = load_instance(c);
  const Rational opt = optimal_welfare(inst).value;

  ordered_json doc = envelope("construct", c);
  doc["algorithm"] = alg;

  Allocation alloc;
  ordered_json guarantee;
  std::vector<PropertyId> certified;

  if (alg == "rr") {
    Ordering order;
    if (c.order) {
      order = parse_order_flag(*c.order, inst);
    } else {
      order.resize(inst.n);
      for (int a = 0; a < inst.n; ++a) order[a] = a;
    }
    alloc = round_robin(inst, order, parse_ties(c.ties));
    doc["ordering"] = ordering_json(order);
    certified = {PropertyId::Ef1, PropertyId::Bal};
    guarantee["statement"] = "round-robin output is envy-free up to one good and balanced";
  } else if (alg == "ef1-2") {
    alloc = ef1_two_agents(inst);
    certified = {PropertyId::Ef1};
    const Rational sw = social_welfare(inst, alloc);
    guarantee["statement"] = "4*SW^2 >= 3*OPT^2";
    guarantee["lhs"] = rat(4 * sw * sw);
    guarantee["rhs"] = rat(3 * opt * opt);
    guarantee["holds"] = 4 * sw * sw >= 3 * opt * opt;
  } else if (alg == "efx-2") {
    alloc = efx_two_agents(inst, c.budget);
    certified = {PropertyId::Efx};
    const Rational sw = social_welfare(inst, alloc);
    guarantee["statement"] = "SW >= 1";
    guarantee["lhs"] = rat(sw);
    guarantee["rhs"] = rat(Rational(1));
    guarantee["holds"] = sw >= 1;
  } else if (alg == "bal-2") {
    alloc = balanced_two_agents(inst);
    certified = {PropertyId::Bal};
    const Rational sw = social_welfare(inst, alloc);
    guarantee["statement"] = "4*SW >= 3*OPT";
    guarantee["lhs"] = rat(4 * sw);
    guarantee["rhs"] = rat(3 * opt);
    guarantee["holds"] = 4 * sw >= 3 * opt;
  } else if (alg == "bal-n") {
    alloc = balanced_high_welfare(inst, c.budget, c.seed);
    certified = {PropertyId::Bal};
    const Rational sw = social_welfare(inst, alloc);
    guarantee["statement"] = "16*n*SW^2 >= OPT^2";
    guarantee["lhs"] = rat(16 * inst.n * sw * sw);
    guarantee["rhs"] = rat(opt * opt);
    guarantee["holds"] = 16 * inst.n * sw * sw >= opt * opt;
  } else if (alg == "bucketed-rr") {
    const BucketedResult result = bucketed_rr_ordering(inst, c.budget, c.seed);
    alloc = result.allocation;
    doc["ordering"] = ordering_json(result.ordering);
    doc["small_opt_branch"] = result.small_opt_branch;
    certified = {PropertyId::Ef1, PropertyId::Bal};
    const Rational sw = social_welfare(inst, alloc);
    const BigInt goods_times_agents = BigInt(inst.m) * inst.n;
    if (goods_times_agents >= 2) {
      const int levels = ceil_log2(goods_times_agents);
      guarantee["statement"] = "4225*n*ceil(log2(m*n))^2*SW^2 >= OPT^2";
      guarantee["lhs"] = rat(Rational(4225) * inst.n * levels * levels * sw * sw);
      guarantee["rhs"] = rat(opt * opt);
      guarantee["holds"] = Rational(4225) * inst.n * levels * levels * sw * sw >= opt * opt;
    } else {
      guarantee["statement"] = "SW = OPT";
      guarantee["lhs"] = rat(sw);
      guarantee["rhs"] = rat(opt);
      guarantee["holds"] = sw == opt;
    }
  } else {
    throw UsageError("--alg must be rr, ef1-2, efx-2, bal-2, bal-n, or bucketed-rr, got '" +
                     alg + "'");
  }

  doc["allocation"] = alloc_json(alloc);
  doc["welfare"] = rat(social_welfare(inst, alloc));
  doc["opt"] = rat(opt);
  doc["utils"] = utils_json(utility_vector(inst, alloc));

  ordered_json certificates;
  for (PropertyId property : certified) {
    PropertyWitness witness;
    switch (property) {
      case PropertyId::Ef1: witness = is_ef1(inst, alloc); break;
      case PropertyId::Efx: witness = is_efx(inst, alloc); break;
      default: witness = is_balanced(inst, alloc); break;
    }
    certificates[property_tag(property)] = witness.satisfied;
  }
  doc["certificates"] = std::move(certificates);

  if (alg == "rr") {
    bool all = true;
    for (const auto& item : doc["certificates"].items())
      all = all && item.value().get<bool>();
    guarantee["holds"] = all;
  }
  doc["guarantee"] = std::move(guarantee);
  emit_document(c, doc, out);
  return 0;
}

int cmd_price(const RunConfig& c, std::ostream& out) {
  const Instance inst = load_instance(c);
  const PropertyId property = required_property(c);
  const PriceReport report = price_of(inst, property, c.budget, c.workers, parse_ties(c.ties));
  ordered_json doc = envelope("price", c);
  const ordered_json fields = report_json(report);
  for (const auto& item : fields.items()) doc[item.key()] = item.value();
  emit_document(c, doc, out);
  return 0;
}

int cmd_search(const RunConfig& c, std::ostream& out) {
  const PropertyId property = required_property(c);
  if (!c.n || !c.m) throw UsageError("search needs --n and --m");
  const SearchResult result =
      adversarial_search(property, *c.n, *c.m, c.seed, c.iters, c.budget);
  ordered_json doc = envelope("search", c);
  doc["property"] = property_tag(property);
  doc["n"] = *c.n;
  doc["m"] = *c.m;
  doc["evaluations"] = result.evaluations;
  doc["instance"] = instance_json(result.instance);
  doc["report"] = report_json(result.report);
  emit_document(c, doc, out);
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce: desk-scale re-derivation of the bound table. Closed-form rows
// regenerate each fixture family and compare the measured price report
// against its exact expected values; sweep rows check the theorem-backed
// upper bounds on a seeded random corpus. Asymptotic claims are checked via
// their per-instance proof inequalities and marked as such.
// ---------------------------------------------------------------------------

struct ReproRow {
  std::string claim;
  std::string property;
  std::string family;
  ordered_json params = ordered_json::object();
  ordered_json observed = ordered_json::object();
  std::string bound;
  bool asymptotic = false;
  bool pass = false;
};

const ExpectedPrice* find_expected(const std::vector<ExpectedPrice>& rows, PropertyId p) {
  for (const ExpectedPrice& row : rows)
    if (row.property == p) return &row;
  return nullptr;
}

bool matches_expected(const ExpectedPrice& e, const PriceReport& r) {
  if (e.opt && *e.opt != r.opt) return false;
  if (e.best_fair && *e.best_fair != r.best_fair) return false;
  if (e.worst_fair && *e.worst_fair != r.worst_fair) return false;
  if (e.price && !(*e.price == r.price)) return false;
  if (e.strong_price && !(*e.strong_price == r.strong_price)) return false;
  return true;
}

ordered_json observed_prices(const PriceReport& r) {
  ordered_json doc;
  doc["opt"] = rat(r.opt);
  doc["best_fair"] = rat(r.best_fair);
  doc["worst_fair"] = rat(r.worst_fair);
  doc["price"] = price_string(r.price);
  doc["strong_price"] = price_string(r.strong_price);
  return doc;
}

ordered_json fixture_params(const FixtureSpec& spec) {
  ordered_json doc;
  if (spec.n > 0) doc["n"] = spec.n;
  if (spec.m > 0) doc["m"] = spec.m;
  if (spec.x > 0) doc["x"] = spec.x;
  if (spec.eps > 0) doc["eps"] = fraction_string(spec.eps);
  return doc;
}

std::string csv_field(const std::string& text) {
  std::string quoted = "\"";
  for (char ch : text) {
    quoted += ch;
    if (ch == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

std::string flatten_object(const ordered_json& doc) {
  std::string text;
  for (const auto& item : doc.items()) {
    if (!text.empty()) text += "; ";
    text += item.key() + "=";
    text += item.value().is_string() ? item.value().get<std::string>() : item.value().dump();
  }
  return text;
}

int cmd_reproduce(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Rational eps = c.eps ? parse_rational(*c.eps) : Rational(1, 100);
  if (!(eps > 0 && eps < Rational(1, 7)))
    throw UsageError("reproduce needs 0 < eps < 1/7 so every fixture family is defined");
  const std::vector<int> sizes = {2, 3, 4};
  std::vector<ReproRow> rows;

  auto price_for = [&](const FixtureSpec& spec, PropertyId property) {
    return price_of(generate_fixture(spec, c.budget), property, c.budget, c.workers);
  };
  auto expected_for = [&](const FixtureSpec& spec, PropertyId property) {
    const std::vector<ExpectedPrice> all = fixture_expected_prices(spec);
    const ExpectedPrice* row = find_expected(all, property);
    if (!row) throw std::logic_error("missing expected-price row for fixture");
    return *row;
  };

  // --- closed-form rows, two agents -------------------------------------
  {
    FixtureSpec spec{FixtureFamily::Ef1Two, 2, 0, 0, eps};
    const PriceReport r = price_for(spec, PropertyId::Ef1);
    const ExpectedPrice e = expected_for(spec, PropertyId::Ef1);
    ReproRow row;
    row.claim = "three-good split: price(ef1) = (4/3-2e)/(7/6-e)";
    row.property = "ef1";
    row.family = "ef1-2";
    row.params = fixture_params(spec);
    row.observed = observed_prices(r);
    row.bound = "price(ef1) < 8/7";
    row.pass = matches_expected(e, r) && !r.price.infinite && r.price.value < Rational(8, 7);
    rows.push_back(std::move(row));
  }
  {
    FixtureSpec spec{FixtureFamily::EfxTwo, 2, 0, 0, eps};
    const PriceReport r = price_for(spec, PropertyId::Efx);
    const ExpectedPrice e = expected_for(spec, PropertyId::Efx);
    ReproRow row;
    row.claim = "near-equal halves: price(efx) = 3/2-e with unit fair welfare";
    row.property = "efx";
    row.family = "efx-2";
    row.params = fixture_params(spec);
    row.observed = observed_prices(r);
    row.bound = "price(efx) < 3/2";
    row.pass = matches_expected(e, r) && !r.price.infinite && r.price.value < Rational(3, 2);
    rows.push_back(std::move(row));
  }
  {
    FixtureSpec spec{FixtureFamily::BalTwo, 2, 4, 0, Rational(0)};
    const PriceReport r = price_for(spec, PropertyId::Bal);
    const ExpectedPrice e = expected_for(spec, PropertyId::Bal);
    ReproRow row;
    row.claim = "one-sided values: price(bal) = (2-1/m)/(3/2)";
    row.property = "bal";
    row.family = "bal-2";
    row.params = fixture_params(spec);
    row.observed = observed_prices(r);
    row.bound = "price(bal) <= 4/3";
    row.pass = matches_expected(e, r) && !r.price.infinite && r.price.value <= Rational(4, 3);
    rows.push_back(std::move(row));
  }
  {
    FixtureSpec spec{FixtureFamily::MnwTwo, 2, 0, 0, eps};
    const PriceReport r = price_for(spec, PropertyId::Mnw);
    const ExpectedPrice e = expected_for(spec, PropertyId::Mnw);
    ReproRow row;
    row.claim = "unique Nash maximizer: price(mnw) = strong_price(mnw) = (9/7)/(23/21+e)";
    row.property = "mnw";
    row.family = "mnw-2";
    row.params = fixture_params(spec);
    row.observed = observed_prices(r);
    row.bound = "price(mnw) < 27/23";
    row.pass = matches_expected(e, r) && r.fair_count == 1 && !r.price.infinite &&
               r.price.value < Rational(27, 23);
    rows.push_back(std::move(row));
  }
  {
    FixtureSpec spec{FixtureFamily::MewTwo, 2, 0, 0, eps};
    const PriceReport r = price_for(spec, PropertyId::Mew);
    const ExpectedPrice e = expected_for(spec, PropertyId::Mew);
    ReproRow row;
    row.claim = "egalitarian tie: price(mew) = 3/2-2e with unit fair welfare";
    row.property = "mew";
    row.family = "mew-2";
    row.params = fixture_params(spec);
    row.observed = observed_prices(r);
    row.bound = "price(mew) < 3/2";
    row.pass = matches_expected(e, r) && !r.price.infinite && r.price.value < Rational(3, 2);
    rows.push_back(std::move(row));
  }
  {
    FixtureSpec spec{FixtureFamily::PoQuadratic, 2, 0, 0, eps};
    const PriceReport r = price_for(spec, PropertyId::Po);
    const ExpectedPrice e = expected_for(spec, PropertyId::Po);
    ReproRow row;
    row.claim = "efficient but lopsided: strong_price(po) = (3/2-2e)/(1/2+2e)";
    row.property = "po";
    row.family = "po-quadratic";
    row.params = fixture_params(spec);
    row.observed = observed_prices(r);
    row.bound = "strong_price(po) < 3";
    row.pass = matches_expected(e, r) && !r.strong_price.infinite &&
               r.strong_price.value < Rational(3);
    rows.push_back(std::move(row));
  }

  // --- closed-form rows, swept over n ------------------------------------
  for (int n : sizes) {
    FixtureSpec spec{FixtureFamily::Thm1Sqrt, n, 0, 0, Rational(0)};
    const int root = isqrt(n);
    for (PropertyId property : {PropertyId::Ef1, PropertyId::Bal}) {
      const PriceReport r = price_for(spec, property);
      ReproRow row;
      row.claim = "block-value family: opt = floor(sqrt(n)), fair welfare stays below 2";
      row.property = property_tag(property);
      row.family = "thm1-sqrt";
      row.params = fixture_params(spec);
      row.observed = observed_prices(r);
      const bool strict = property == PropertyId::Ef1;
      row.bound = strict ? "best_fair(ef1) < 2" : "best_fair(bal) <= 2";
      row.asymptotic = true;
      const bool cap = strict ? r.best_fair < 2 : r.best_fair <= 2;
      const bool ratio = !r.price.infinite && (strict ? r.price.value > Rational(root, 2)
                                                      : r.price.value >= Rational(root, 2));
      row.pass = r.opt == root && cap && ratio;
      rows.push_back(std::move(row));
    }
  }
  for (int n : sizes) {
    FixtureSpec spec{FixtureFamily::IdentityMatch, n, 0, 0, Rational(0)};
    std::vector<PropertyId> properties = {PropertyId::Ef1, PropertyId::Bal};
    if (n == 2) properties.push_back(PropertyId::Efx);
    ReproRow row;
    row.claim = "matched pairs: the all-to-one-agent fair allocations have zero welfare";
    row.property = "ef1,bal" + std::string(n == 2 ? ",efx" : "");
    row.family = "identity-match";
    row.params = fixture_params(spec);
    row.bound = "strong_price = inf, price = 1";
    row.pass = true;
    for (PropertyId property : properties) {
      const PriceReport r = price_for(spec, property);
      row.observed["strong_price(" + std::string(property_tag(property)) + ")"] =
          price_string(r.strong_price);
      row.pass = row.pass && r.strong_price.infinite && !r.price.infinite &&
                 r.price.value == 1 && r.opt == n;
    }
    rows.push_back(std::move(row));
  }
  for (int n : sizes) {
    FixtureSpec spec{FixtureFamily::RrPrice, n, 0, 2 * n, Rational(0)};
    const PriceReport r = price_for(spec, PropertyId::Rr);
    const ExpectedPrice e = expected_for(spec, PropertyId::Rr);
    ReproRow row;
    row.claim = "nested levels: price(rr) = strong_price(rr) = n-(n-1)/x";
    row.property = "rr";
    row.family = "rr-price";
    row.params = fixture_params(spec);
    row.observed = observed_prices(r);
    row.bound = "price(rr) <= n";
    row.pass = matches_expected(e, r) && !r.price.infinite && r.price.value <= n;
    rows.push_back(std::move(row));
  }
  for (int n : sizes) {
    FixtureSpec spec{FixtureFamily::RrStrong, n, 2 * n, 0, Rational(0)};
    const PriceReport r = price_for(spec, PropertyId::Rr);
    const ExpectedPrice e = expected_for(spec, PropertyId::Rr);
    ReproRow row;
    row.claim = "one flat agent: worst ordering wipes out every unit good";
    row.property = "rr";
    row.family = "rr-strong";
    row.params = fixture_params(spec);
    row.observed = observed_prices(r);
    row.bound = "price(rr) <= n, strong_price(rr) <= n^2";
    row.pass = matches_expected(e, r) && !r.price.infinite && r.price.value <= n &&
               !r.strong_price.infinite && r.strong_price.value <= n * n;
    rows.push_back(std::move(row));
  }
  for (int n : {3, 4}) {
    FixtureSpec spec{FixtureFamily::WelfareLinear, n, 0, 0, eps};
    for (PropertyId property : {PropertyId::Mnw, PropertyId::Mew, PropertyId::Lex}) {
      const PriceReport r = price_for(spec, property);
      const ExpectedPrice e = expected_for(spec, property);
      ReproRow row;
      row.claim = "chain of near-duplicates: the unique fair allocation stays near welfare 1";
      row.property = property_tag(property);
      row.family = "welfare-linear";
      row.params = fixture_params(spec);
      row.observed = observed_prices(r);
      row.bound = "price >= (n-1)(1-e)/(1+(n-1)e), worst_fair >= 1";
      row.asymptotic = true;
      row.pass = matches_expected(e, r) && !r.price.infinite &&
                 r.price.value >= *e.proof_ratio && r.worst_fair >= 1;
      rows.push_back(std::move(row));
    }
  }
  for (int n : {3, 4}) {
    FixtureSpec spec{FixtureFamily::MewInfinite, n, 0, 0, Rational(0)};
    const PriceReport r = price_for(spec, PropertyId::Mew);
    const ExpectedPrice e = expected_for(spec, PropertyId::Mew);
    ReproRow row;
    row.claim = "starved agent: some egalitarian maximizer has zero welfare";
    row.property = "mew";
    row.family = "mew-infinite";
    row.params = fixture_params(spec);
    row.observed = observed_prices(r);
    row.bound = "strong_price(mew) = inf, price(mew) finite";
    row.pass = matches_expected(e, r) && r.strong_price.infinite && !r.price.infinite &&
               r.price.value == 1;
    rows.push_back(std::move(row));
  }
  for (int n : {3, 4}) {
    FixtureSpec spec{FixtureFamily::PoQuadratic, n, 0, 0, eps};
    const PriceReport r = price_for(spec, PropertyId::Po);
    ReproRow row;
    row.claim = "efficient frontier: the optimum itself is efficient and no efficient "
                "allocation drops below 1/n";
    row.property = "po";
    row.family = "po-quadratic";
    row.params = fixture_params(spec);
    row.observed = observed_prices(r);
    row.bound = "price(po) = 1, worst_fair >= 1/n";
    row.pass = !r.price.infinite && r.price.value == 1 && r.worst_fair >= Rational(1, n);
    rows.push_back(std::move(row));
  }

  // --- seeded random sweeps for the upper bounds -------------------------
  struct SweepPlan {
    int n;
    int m_lo;
    int m_hi;
    int count;
  };
  const std::vector<SweepPlan> plans = {{2, 2, 6, 120}, {3, 2, 4, 60}, {4, 2, 3, 40}};

  for (const SweepPlan& plan : plans) {
    const std::vector<PropertyId> swept =
        plan.n == 2 ? std::vector<PropertyId>{PropertyId::Ef1, PropertyId::Efx,
                                              PropertyId::Bal, PropertyId::Mnw,
                                              PropertyId::Mew, PropertyId::Lex,
                                              PropertyId::Po,  PropertyId::Rr}
                    : std::vector<PropertyId>{PropertyId::Bal, PropertyId::Rr};

    struct Tally {
      bool ok = true;
      PriceValue max_price;            // largest price seen
      PriceValue max_strong;           // largest strong price seen
      bool squared_ok = true;          // family-specific squared inequality
    };
    std::vector<Tally> tallies(swept.size());
    auto bump = [](PriceValue& slot, const PriceValue& seen) {
      if (seen.infinite) {
        slot = seen;
      } else if (!slot.infinite && seen.value > slot.value) {
        slot = seen;
      }
    };

    SplitMix64 rng(mix_seed(c.seed, 1000 + static_cast<std::uint64_t>(plan.n)));
    for (int i = 0; i < plan.count; ++i) {
      const int m = plan.m_lo + static_cast<int>(rng.below(
                                    static_cast<std::uint64_t>(plan.m_hi - plan.m_lo + 1)));
      const Instance inst = random_instance(rng, plan.n, m);
      for (std::size_t s = 0; s < swept.size(); ++s) {
        const PriceReport r = price_of(inst, swept[s], c.budget, c.workers);
        Tally& tally = tallies[s];
        bump(tally.max_price, r.price);
        bump(tally.max_strong, r.strong_price);
        switch (swept[s]) {
          case PropertyId::Ef1:
            tally.ok = tally.ok && 3 * r.opt * r.opt <= 4 * r.best_fair * r.best_fair;
            break;
          case PropertyId::Efx:
            tally.ok = tally.ok && !r.price.infinite && r.price.value <= Rational(3, 2);
            break;
          case PropertyId::Bal:
            tally.ok = tally.ok && !r.price.infinite && (plan.n != 2 || r.price.value <= Rational(4, 3));
            tally.squared_ok =
                tally.squared_ok && r.opt * r.opt <= 16 * plan.n * r.best_fair * r.best_fair;
            break;
          case PropertyId::Mnw:
            tally.ok = tally.ok && !r.strong_price.infinite &&
                       r.strong_price.value <= Rational(5, 4);
            break;
          case PropertyId::Mew:
          case PropertyId::Lex:
            tally.ok = tally.ok && !r.strong_price.infinite &&
                       r.strong_price.value <= Rational(3, 2);
            break;
          case PropertyId::Po:
            tally.ok = tally.ok && !r.strong_price.infinite && r.strong_price.value <= 3;
            break;
          case PropertyId::Rr:
            tally.ok = tally.ok && !r.price.infinite && r.price.value <= plan.n &&
                       !r.strong_price.infinite && r.strong_price.value <= plan.n * plan.n;
            break;
        }
      }
    }

    for (std::size_t s = 0; s < swept.size(); ++s) {
      const PropertyId property = swept[s];
      const Tally& tally = tallies[s];
      ReproRow row;
      row.property = property_tag(property);
      row.family = "random-sweep";
      row.params["n"] = plan.n;
      row.params["m_min"] = plan.m_lo;
      row.params["m_max"] = plan.m_hi;
      row.params["count"] = plan.count;
      row.observed["max_price"] = price_string(tally.max_price);
      row.observed["max_strong_price"] = price_string(tally.max_strong);
      switch (property) {
        case PropertyId::Ef1:
          row.claim = "random sweep: squared bound 3*opt^2 <= 4*best_fair^2 for ef1";
          row.bound = "3*opt^2 <= 4*best_fair^2";
          row.pass = tally.ok;
          break;
        case PropertyId::Efx:
          row.claim = "random sweep: price(efx) never exceeds 3/2";
          row.bound = "price(efx) <= 3/2";
          row.pass = tally.ok;
          break;
        case PropertyId::Bal:
          row.claim = plan.n == 2
                          ? "random sweep: price(bal) <= 4/3 and opt^2 <= 16*n*best_fair^2"
                          : "random sweep: squared bound opt^2 <= 16*n*best_fair^2 for bal";
          row.bound = plan.n == 2 ? "price(bal) <= 4/3, opt^2 <= 16*n*best_fair^2"
                                  : "opt^2 <= 16*n*best_fair^2";
          row.pass = tally.ok && tally.squared_ok;
          break;
        case PropertyId::Mnw:
          row.claim = "random sweep: strong_price(mnw) never exceeds 5/4";
          row.bound = "strong_price(mnw) <= 5/4";
          row.pass = tally.ok;
          break;
        case PropertyId::Mew:
          row.claim = "random sweep: strong_price(mew) never exceeds 3/2";
          row.bound = "strong_price(mew) <= 3/2";
          row.pass = tally.ok;
          break;
        case PropertyId::Lex:
          row.claim = "random sweep: strong_price(lex) never exceeds 3/2";
          row.bound = "strong_price(lex) <= 3/2";
          row.pass = tally.ok;
          break;
        case PropertyId::Po:
          row.claim = "random sweep: strong_price(po) never exceeds 3";
          row.bound = "strong_price(po) <= 3";
          row.pass = tally.ok;
          break;
        default:
          row.claim = "random sweep: price(rr) <= n and strong_price(rr) <= n^2";
          row.bound = "price(rr) <= n, strong_price(rr) <= n^2";
          row.pass = tally.ok;
          break;
      }
      rows.push_back(std::move(row));
    }
  }

  // --- emit ---------------------------------------------------------------
  ordered_json doc = envelope("reproduce", c);
  doc["eps"] = fraction_string(eps);
  doc["sizes"] = sizes;
  ordered_json rows_json = ordered_json::array();
  std::vector<int> failed;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ReproRow& row = rows[i];
    ordered_json entry;
    entry["row"] = i + 1;
    entry["claim"] = row.claim;
    entry["property"] = row.property;
    entry["family"] = row.family;
    entry["params"] = row.params;
    entry["observed"] = row.observed;
    entry["bound"] = row.bound;
    if (row.asymptotic) entry["note"] = "asymptotic — fixture inequality only";
    entry["pass"] = row.pass;
    rows_json.push_back(std::move(entry));
    if (!row.pass) failed.push_back(static_cast<int>(i + 1));
  }
  doc["rows"] = std::move(rows_json);
  doc["total"] = rows.size();
  doc["failed"] = failed.size();

  std::string csv;
  if (c.format == "table") {
    std::ostringstream table;
    table << "row,claim,property,family,params,observed,bound,note,pass\n";
    for (const auto& entry : doc["rows"]) {
      table << entry["row"].get<std::size_t>() << ','
            << csv_field(entry["claim"].get<std::string>()) << ','
            << csv_field(entry["property"].get<std::string>()) << ','
            << csv_field(entry["family"].get<std::string>()) << ','
            << csv_field(flatten_object(entry["params"])) << ','
            << csv_field(flatten_object(entry["observed"])) << ','
            << csv_field(entry["bound"].get<std::string>()) << ','
            << csv_field(entry.contains("note") ? entry["note"].get<std::string>() : "") << ','
            << (entry["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    }
    csv = table.str();
  }
  emit_document(c, doc, out, c.format == "table" ? &csv : nullptr);

  if (!failed.empty()) {
    ordered_json error;
    error["error"]["kind"] = "reproduce";
    std::string listed;
    for (int id : failed) {
      if (!listed.empty()) listed += ", ";
      listed += std::to_string(id);
    }
    error["error"]["message"] = "failed rows: " + listed;
    error["error"]["rows"] = failed;
    err << error.dump(2) << "\n";
    return 1;
  }
  return 0;
}

ordered_json error_object(const std::string& kind, const std::string& message) {
  ordered_json doc;
  doc["error"]["kind"] = kind;
  doc["error"]["message"] = message;
  return doc;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "json" && config.format != "table")
      throw UsageError("--format must be json or table, got '" + config.format + "'");
    if (config.command == "generate") return cmd_generate(config, out);
    if (config.command == "check") return cmd_check(config, out);
    if (config.command == "solve") return cmd_solve(config, out);
    if (config.command == "construct") return cmd_construct(config, out);
    if (config.command == "price") return cmd_price(config, out);
    if (config.command == "search") return cmd_search(config, out);
    if (config.command == "reproduce") return cmd_reproduce(config, out, err);
    throw UsageError("unknown command '" + config.command +
                     "' (expected check, solve, construct, price, generate, search, or "
                     "reproduce)");
  } catch (const BudgetExceeded& e) {
    ordered_json doc = error_object("budget", e.what());
    doc["error"]["required"] = e.required;
    doc["error"]["budget"] = e.budget;
    err << doc.dump(2) << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << error_object("parse", e.what()).dump(2) << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << error_object("validation", e.what()).dump(2) << "\n";
    return 1;
  } catch (const UsageError& e) {
    err << error_object("usage", e.what()).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << error_object("internal", e.what()).dump(2) << "\n";
    return 1;
  }
}

}  // namespace fairdiv
