#include "fairdiv/core.hpp"

#include <json.hpp>

#include "fairdiv/errors.hpp"

namespace fairdiv {

using nlohmann::ordered_json;

Instance make_instance(int n, std::vector<std::vector<Rational>> raw_rows) {
  if (n < 1) throw ValidationError("instance needs at least one agent");
  if (static_cast<int>(raw_rows.size()) != n)
    throw ValidationError("utilities must have exactly n rows");
  const std::size_t m = raw_rows.empty() ? 0 : raw_rows[0].size();
  Instance inst;
  inst.n = n;
  inst.m = static_cast<int>(m);
  inst.utilities.reserve(n);
  for (int i = 0; i < n; ++i) {
    auto& row = raw_rows[i];
    if (row.size() != m) throw ValidationError("utility rows have unequal lengths");
    Rational sum = 0;
    for (const Rational& v : row) {
      if (v < 0)
        throw ValidationError("negative utility for agent " + std::to_string(i + 1));
      sum += v;
    }
    if (m > 0) {
      if (sum == 0)
        throw ValidationError("agent " + std::to_string(i + 1) + " values every good at zero");
      if (sum != 1)
        for (Rational& v : row) v /= sum;
    }
    inst.utilities.push_back(std::move(row));
  }
  return inst;
}

namespace {

Rational entry_from_json(const ordered_json& e) {
  if (e.is_number_integer()) {
    long long v = e.get<long long>();
    return Rational(BigInt(v));
  }
  if (e.is_string()) return parse_rational(e.get<std::string>());
  throw ParseError("utility entries must be integers or \"p/q\" strings");
}

ordered_json parse_json(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("malformed JSON document");
  return doc;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  ordered_json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("m") || !doc.contains("utilities"))
    throw ParseError("instance document needs fields n, m, utilities");
  if (!doc["n"].is_number_integer() || !doc["m"].is_number_integer())
    throw ParseError("n and m must be integers");
  int n = doc["n"].get<int>();
  int m = doc["m"].get<int>();
  if (n < 1) throw ValidationError("n must be >= 1");
  if (m < 1) throw ValidationError("m must be >= 1");
  const auto& rows = doc["utilities"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw ParseError("utilities must be an array of n rows");
  std::vector<std::vector<Rational>> raw;
  raw.reserve(n);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw ParseError("each utility row must list m entries");
    std::vector<Rational> parsed;
    parsed.reserve(m);
    for (const auto& e : row) parsed.push_back(entry_from_json(e));
    raw.push_back(std::move(parsed));
  }
  return make_instance(n, std::move(raw));
}

std::string serialize_instance(const Instance& inst) {
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
  return doc.dump(2) + "\n";
}

Allocation parse_allocation(const std::string& text, const Instance& inst) {
  ordered_json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("owner"))
    throw ParseError("allocation document needs field owner");
  const auto& arr = doc["owner"];
  if (!arr.is_array()) throw ParseError("owner must be an array");
  Allocation alloc;
  alloc.owner.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_number_integer()) throw ParseError("owner entries must be integers");
    alloc.owner.push_back(e.get<int>() - 1);  // documents are 1-based
  }
  validate_allocation(inst, alloc);
  return alloc;
}

std::string serialize_allocation(const Allocation& alloc) {
  ordered_json doc;
  ordered_json arr = ordered_json::array();
  for (int a : alloc.owner) arr.push_back(a + 1);
  doc["owner"] = std::move(arr);
  return doc.dump(2) + "\n";
}

void validate_allocation(const Instance& inst, const Allocation& alloc) {
  if (static_cast<int>(alloc.owner.size()) != inst.m)
    throw ValidationError("allocation must assign exactly m goods");
  for (int a : alloc.owner)
    if (a < 0 || a >= inst.n) throw ValidationError("good assigned to unknown agent");
}

UtilityVector utility_vector(const Instance& inst, const Allocation& alloc) {
  validate_allocation(inst, alloc);
  UtilityVector util(inst.n, Rational(0));
  for (int g = 0; g < inst.m; ++g) util[alloc.owner[g]] += inst.value(alloc.owner[g], g);
  return util;
}

Rational social_welfare(const Instance& inst, const Allocation& alloc) {
  validate_allocation(inst, alloc);
  Rational sw = 0;
  for (int g = 0; g < inst.m; ++g) sw += inst.value(alloc.owner[g], g);
  return sw;
}

OptimalWelfare optimal_welfare(const Instance& inst) {
  OptimalWelfare opt;
  opt.value = 0;
  opt.allocation.owner.assign(inst.m, 0);
  for (int g = 0; g < inst.m; ++g) {
    int best = 0;
    for (int i = 1; i < inst.n; ++i)
      if (inst.value(i, g) > inst.value(best, g)) best = i;
    opt.allocation.owner[g] = best;
    opt.value += inst.value(best, g);
  }
  return opt;
}

}  // namespace fairdiv
