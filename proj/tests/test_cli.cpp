#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fairdiv/cli.hpp"
#include "fairdiv/core.hpp"
#include "fairdiv/fixtures.hpp"
#include "test_support.hpp"

using fairdiv::RunConfig;
using nlohmann::ordered_json;

namespace {

struct CliResult {
  int exit = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const RunConfig& config) {
  std::ostringstream out, err;
  CliResult result;
  result.exit = fairdiv::run(config, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

ordered_json out_json(const CliResult& r) { return ordered_json::parse(r.out); }
ordered_json err_json(const CliResult& r) { return ordered_json::parse(r.err); }

/// Scratch file that removes itself when the test scope ends.
struct TempFile {
  std::filesystem::path path;
  TempFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream(path, std::ios::binary) << text;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("check exits zero on both verdicts and explains violations") {
  const fairdiv::Instance inst = oracle::from_ints({{2, 1, 1}, {2, 1, 1}});
  TempFile instance("cli_check_inst.json", fairdiv::serialize_instance(inst));
  TempFile allocation("cli_check_alloc.json", R"({"owner": [1, 1, 2]})");

  RunConfig config;
  config.command = "check";
  config.instance_path = instance.str();
  config.allocation_path = allocation.str();

  config.property = "ef1";
  CliResult ok = run_cli(config);
  REQUIRE(ok.exit == 0);
  ordered_json doc = out_json(ok);
  CHECK(doc["command"] == "check");
  CHECK(doc["satisfied"] == true);
  CHECK(doc["witness"].is_null());
  CHECK(doc["allocation"]["owner"] == ordered_json::array({1, 1, 2}));
  CHECK(doc["welfare"] == "1");
  CHECK(doc["config"]["property"] == "ef1");
  CHECK_FALSE(doc["config"].contains("workers"));

  config.property = "efx";
  CliResult bad = run_cli(config);
  REQUIRE(bad.exit == 0);  // an unsatisfied property is still a successful run
  doc = out_json(bad);
  CHECK(doc["satisfied"] == false);
  CHECK(doc["witness"]["kind"] == "envy");
  CHECK(doc["witness"]["envier"] == 2);
  CHECK(doc["witness"]["envied"] == 1);
  CHECK(doc["witness"]["envied_bundle"] == ordered_json::array({1, 2}));
  CHECK(doc["witness"]["removed_good"] == 2);
  CHECK(doc["witness"]["envier_value"] == "1/4");
  CHECK(doc["witness"]["remaining_value"] == "1/2");

  config.property = "bal";
  doc = out_json(run_cli(config));
  CHECK(doc["satisfied"] == true);  // bundle sizes 2 and 1
}

TEST_CASE("check reports imbalance and domination witnesses") {
  const fairdiv::Instance wide = oracle::from_ints({{1, 1, 1, 1}, {1, 1, 1, 1}});
  TempFile instance("cli_bal_inst.json", fairdiv::serialize_instance(wide));
  TempFile lopsided("cli_bal_alloc.json", R"({"owner": [1, 1, 1, 2]})");

  RunConfig config;
  config.command = "check";
  config.instance_path = instance.str();
  config.allocation_path = lopsided.str();
  config.property = "bal";
  ordered_json doc = out_json(run_cli(config));
  CHECK(doc["satisfied"] == false);
  CHECK(doc["witness"]["kind"] == "imbalance");
  CHECK(doc["witness"]["larger_agent"] == 1);
  CHECK(doc["witness"]["smaller_agent"] == 2);
  CHECK(doc["witness"]["larger_size"] == 3);
  CHECK(doc["witness"]["smaller_size"] == 1);

  const fairdiv::Instance match = oracle::from_ints({{1, 0}, {0, 1}});
  TempFile match_file("cli_po_inst.json", fairdiv::serialize_instance(match));
  TempFile crossed("cli_po_alloc.json", R"({"owner": [2, 1]})");
  config.instance_path = match_file.str();
  config.allocation_path = crossed.str();
  config.property = "po";
  doc = out_json(run_cli(config));
  CHECK(doc["satisfied"] == false);
  CHECK(doc["witness"]["kind"] == "dominated");
  CHECK(doc["witness"]["improvement"]["owner"] == ordered_json::array({1, 1}));
}

TEST_CASE("solve reports exact objective values and maximizer counts") {
  const fairdiv::Instance flat = oracle::from_ints({{1, 1}, {1, 1}});
  TempFile instance("cli_solve_inst.json", fairdiv::serialize_instance(flat));

  RunConfig config;
  config.command = "solve";
  config.instance_path = instance.str();

  config.objective = "mnw";
  ordered_json doc = out_json(run_cli(config));
  CHECK(doc["command"] == "solve");
  CHECK(doc["objective"] == "mnw");
  CHECK(doc["value"] == "1/4");
  CHECK(doc["positive_count"] == 2);
  CHECK(doc["maximizer_count"] == 2);
  CHECK(doc["witness"]["owner"] == ordered_json::array({1, 2}));
  CHECK(doc["utils"] == ordered_json::array({"1/2", "1/2"}));

  config.objective = "opt";
  doc = out_json(run_cli(config));
  CHECK(doc["value"] == "1");
  CHECK(doc["maximizer_count"] == 4);  // every split of two flat goods ties
  CHECK(doc["witness"]["owner"] == ordered_json::array({1, 1}));

  config.objective = "leximin";
  doc = out_json(run_cli(config));
  CHECK(doc["value"] == ordered_json::array({"1/2", "1/2"}));
  CHECK(doc["maximizer_count"] == 2);

  config.objective = "sum";
  CliResult bad = run_cli(config);
  CHECK(bad.exit == 1);
  CHECK(err_json(bad)["error"]["kind"] == "usage");
}

TEST_CASE("construct reports the guarantee arithmetic for the worked split") {
  RunConfig config;
  config.command = "construct";
  config.family = "ef1-2";
  config.eps = "1/12";
  config.algorithm = "ef1-2";
  const CliResult r = run_cli(config);
  REQUIRE(r.exit == 0);
  const ordered_json doc = out_json(r);
  CHECK(doc["allocation"]["owner"] == ordered_json::array({1, 1, 2}));
  CHECK(doc["welfare"] == "13/12");
  CHECK(doc["certificates"]["ef1"] == true);
  CHECK(doc["guarantee"]["statement"] == "4*SW^2 >= 3*OPT^2");
  CHECK(doc["guarantee"]["lhs"] == "169/36");
  CHECK(doc["guarantee"]["rhs"] == "49/12");
  CHECK(doc["guarantee"]["holds"] == true);
  CHECK(doc["config"]["family"] == "ef1-2");
  CHECK(doc["config"]["eps"] == "1/12");
}

TEST_CASE("construct runs round-robin with an explicit picking order") {
  RunConfig config;
  config.command = "construct";
  config.family = "rr-strong";
  config.n = 2;
  config.m = 4;
  config.algorithm = "rr";
  config.order = "2,1";
  const ordered_json doc = out_json(run_cli(config));
  CHECK(doc["ordering"] == ordered_json::array({2, 1}));
  CHECK(doc["welfare"] == "3/2");
  CHECK(doc["certificates"]["ef1"] == true);
  CHECK(doc["certificates"]["bal"] == true);
  CHECK(doc["guarantee"]["holds"] == true);

  config.order = "2,2";
  CliResult repeated = run_cli(config);
  CHECK(repeated.exit == 1);
  CHECK(err_json(repeated)["error"]["kind"] == "validation");

  config.order = "two,one";
  CliResult garbled = run_cli(config);
  CHECK(garbled.exit == 1);
  CHECK(err_json(garbled)["error"]["kind"] == "usage");
}

TEST_CASE("price emits the full report for a generated family") {
  RunConfig config;
  config.command = "price";
  config.family = "efx-2";
  config.eps = "1/10";
  config.property = "efx";
  const ordered_json doc = out_json(run_cli(config));
  CHECK(doc["command"] == "price");
  CHECK(doc["property"] == "efx");
  CHECK(doc["opt"] == "7/5");
  CHECK(doc["best_fair"] == "1");
  CHECK(doc["worst_fair"] == "1");
  CHECK(doc["price"] == "7/5");
  CHECK(doc["strong_price"] == "7/5");
  CHECK(doc["optimal"]["owner"].is_array());
  CHECK(doc["best_witness"]["owner"].is_array());

  config.family = "identity-match";
  config.eps.reset();
  config.n = 2;
  config.property = "bal";
  const ordered_json inf_doc = out_json(run_cli(config));
  CHECK(inf_doc["strong_price"] == "inf");
  CHECK(inf_doc["price"] == "1");
}

TEST_CASE("generate embeds the requested family and round-trips") {
  RunConfig config;
  config.command = "generate";
  config.family = "mnw-2";
  config.eps = "1/14";
  const CliResult r = run_cli(config);
  REQUIRE(r.exit == 0);
  const ordered_json doc = out_json(r);
  CHECK(doc["n"] == 2);
  CHECK(doc["m"] == 3);
  CHECK(doc["config"]["family"] == "mnw-2");

  const fairdiv::Instance parsed = fairdiv::parse_instance(r.out);
  const fairdiv::Instance direct = fairdiv::generate_fixture(
      {fairdiv::FixtureFamily::MnwTwo, 2, 0, 0, fairdiv::Rational(1, 14)});
  CHECK(parsed.utilities == direct.utilities);
}

TEST_CASE("search output is deterministic for a fixed seed") {
  RunConfig config;
  config.command = "search";
  config.property = "ef1";
  config.n = 2;
  config.m = 3;
  config.seed = 9;
  config.iters = 256;
  const CliResult a = run_cli(config);
  const CliResult b = run_cli(config);
  REQUIRE(a.exit == 0);
  CHECK(a.out == b.out);
  const ordered_json doc = out_json(a);
  CHECK(doc["evaluations"].get<std::uint64_t>() > 0);
  CHECK(doc["instance"]["n"] == 2);
  CHECK(doc["report"]["property"] == "ef1");
}

TEST_CASE("reproduce passes everywhere and ignores the worker count byte-for-byte") {
  RunConfig config;
  config.command = "reproduce";
  config.workers = 1;
  const CliResult single = run_cli(config);
  REQUIRE(single.exit == 0);
  CHECK(single.err.empty());

  config.workers = 4;
  const CliResult pooled = run_cli(config);
  REQUIRE(pooled.exit == 0);
  CHECK(single.out == pooled.out);

  const ordered_json doc = out_json(single);
  CHECK(doc["failed"] == 0);
  CHECK(doc["total"] == 43);
  CHECK(doc["rows"].size() == 43);
  CHECK(doc["eps"] == "1/100");
  bool saw_asymptotic = false;
  for (const auto& row : doc["rows"]) {
    CHECK(row["pass"] == true);
    if (row.contains("note")) saw_asymptotic = true;
  }
  CHECK(saw_asymptotic);
}

TEST_CASE("reproduce renders a CSV table with one line per row") {
  RunConfig config;
  config.command = "reproduce";
  config.format = "table";
  const CliResult r = run_cli(config);
  REQUIRE(r.exit == 0);
  CHECK(r.out.rfind("row,claim,property,family,params,observed,bound,note,pass\n", 0) == 0);
  const std::size_t lines = std::count(r.out.begin(), r.out.end(), '\n');
  CHECK(lines == 44);  // header + 43 rows
  CHECK(r.out.find(",FAIL") == std::string::npos);
}

TEST_CASE("budget overruns exit with status two and name both numbers") {
  const fairdiv::Instance wide = oracle::from_ints(
      {std::vector<long long>(21, 1), std::vector<long long>(21, 1)});
  TempFile instance("cli_budget_inst.json", fairdiv::serialize_instance(wide));

  RunConfig config;
  config.command = "price";
  config.instance_path = instance.str();
  config.property = "ef1";
  const CliResult r = run_cli(config);
  CHECK(r.exit == 2);
  CHECK(r.out.empty());
  const ordered_json doc = err_json(r);
  CHECK(doc["error"]["kind"] == "budget");
  CHECK(doc["error"]["required"] == 2097152);  // 2^21 allocations
  CHECK(doc["error"]["budget"] == 1000000);

  RunConfig tight;
  tight.command = "solve";
  tight.objective = "mnw";
  tight.instance_path = instance.str();
  tight.budget = 100;
  const CliResult s = run_cli(tight);
  CHECK(s.exit == 2);
  CHECK(err_json(s)["error"]["budget"] == 100);
}

TEST_CASE("flag and document mistakes exit with status one and a typed error") {
  RunConfig config;
  config.command = "frobnicate";
  CliResult r = run_cli(config);
  CHECK(r.exit == 1);
  CHECK(err_json(r)["error"]["kind"] == "usage");

  config = RunConfig{};
  config.command = "check";
  config.family = "efx-2";
  config.eps = "1/10";
  config.property = "efx";  // --allocation missing
  r = run_cli(config);
  CHECK(r.exit == 1);
  CHECK(err_json(r)["error"]["kind"] == "usage");

  config = RunConfig{};
  config.command = "price";
  config.family = "efx-2";
  config.eps = "1/10";  // --property missing
  r = run_cli(config);
  CHECK(r.exit == 1);
  CHECK(err_json(r)["error"]["kind"] == "usage");

  config = RunConfig{};
  config.command = "price";
  config.instance_path = "/nonexistent/instance.json";
  config.property = "ef1";
  r = run_cli(config);
  CHECK(r.exit == 1);
  CHECK(err_json(r)["error"]["kind"] == "usage");

  TempFile mangled("cli_mangled.json", "{ not json");
  config.instance_path = mangled.str();
  r = run_cli(config);
  CHECK(r.exit == 1);
  CHECK(err_json(r)["error"]["kind"] == "parse");

  config = RunConfig{};
  config.command = "generate";
  config.family = "ef1-2";
  config.eps = "1/2";  // outside the family's admissible range
  r = run_cli(config);
  CHECK(r.exit == 1);
  CHECK(err_json(r)["error"]["kind"] == "validation");

  config = RunConfig{};
  config.command = "price";
  config.family = "efx-2";
  config.eps = "1/10";
  config.property = "efx";
  config.format = "yaml";
  r = run_cli(config);
  CHECK(r.exit == 1);
  CHECK(err_json(r)["error"]["kind"] == "usage");

  const fairdiv::Instance inst = oracle::from_ints({{1, 1}, {1, 1}});
  TempFile instance("cli_len_inst.json", fairdiv::serialize_instance(inst));
  TempFile short_alloc("cli_len_alloc.json", R"({"owner": [1]})");
  config = RunConfig{};
  config.command = "check";
  config.instance_path = instance.str();
  config.allocation_path = short_alloc.str();
  config.property = "ef1";
  r = run_cli(config);
  CHECK(r.exit == 1);
  CHECK(err_json(r)["error"]["kind"] == "validation");
}

TEST_CASE("the out flag redirects the document to a file") {
  RunConfig config;
  config.command = "generate";
  config.family = "bal-2";
  config.m = 4;
  const CliResult direct = run_cli(config);
  REQUIRE(direct.exit == 0);

  const std::filesystem::path target =
      std::filesystem::temp_directory_path() / "cli_out_target.json";
  config.out_path = target.string();
  const CliResult redirected = run_cli(config);
  REQUIRE(redirected.exit == 0);
  CHECK(redirected.out.empty());

  std::ifstream in(target, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == direct.out);
  std::error_code ec;
  std::filesystem::remove(target, ec);
}

TEST_CASE("table format renders labels with exact values and decimal hints") {
  RunConfig config;
  config.command = "price";
  config.family = "efx-2";
  config.eps = "1/10";
  config.property = "efx";
  config.format = "table";
  const CliResult r = run_cli(config);
  REQUIRE(r.exit == 0);
  CHECK(r.out.find("price") != std::string::npos);
  CHECK(r.out.find("7/5 (~1.4)") != std::string::npos);
  CHECK(r.out.find("strong_price") != std::string::npos);
  CHECK(r.out.find("fair_count") != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);  // no raw JSON leaked into the table
}
