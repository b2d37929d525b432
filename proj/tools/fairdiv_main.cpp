#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "fairdiv/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fairdiv: exact prices of fairness for indivisible goods"};
  app.require_subcommand(1);

  fairdiv::RunConfig config;
  if (const char* env = std::getenv("FAIRDIV_BUDGET")) {
    try {
      std::size_t used = 0;
      config.budget = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      std::cerr << "FAIRDIV_BUDGET must be a nonnegative integer, got '" << env << "'\n";
      return 1;
    }
  }

  std::string instance_path, allocation_path, property, objective, algorithm, order, family,
      eps, out_path;
  int n = 0, m = 0, x = 0;
  std::uint64_t budget = config.budget;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"check", "verify one fairness property of a given allocation"},
      {"solve", "maximize an objective (opt, mnw, mew, leximin) exactly"},
      {"construct", "run one of the guaranteed allocation algorithms"},
      {"price", "compute exact price and strong price for a property"},
      {"generate", "emit a fixture-family instance document"},
      {"search", "hill-climb for instances with a large price"},
      {"reproduce", "re-derive the bound table on desk-scale fixtures"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* cmd = app.add_subcommand(name, description);
    cmd->add_option("--instance", instance_path, "path to an instance JSON document");
    cmd->add_option("--allocation", allocation_path, "path to an allocation JSON document");
    cmd->add_option("--property", property, "ef1|efx|bal|po|rr|mnw|mew|lex");
    cmd->add_option("--objective", objective, "opt|mnw|mew|leximin");
    cmd->add_option("--alg", algorithm, "rr|ef1-2|efx-2|bal-2|bal-n|bucketed-rr");
    cmd->add_option("--order", order, "round-robin pick order, e.g. 2,1 (1-based agents)");
    cmd->add_option("--ties", config.ties, "lowest|adversarial (round-robin tie policy)");
    cmd->add_option("--family", family,
                    "fixture family tag (see `generate`); an alternative to --instance");
    cmd->add_option("--n", n, "number of agents (fixture families, search)");
    cmd->add_option("--m", m, "number of goods (fixture families, search)");
    cmd->add_option("--x", x, "level width for the rr-price family");
    cmd->add_option("--eps", eps, "rational parameter as p/q, e.g. 1/100");
    cmd->add_option("--seed", config.seed, "seed for all randomized branches");
    cmd->add_option("--iters", config.iters, "evaluation budget for search");
    cmd->add_option("--budget", budget, "work cap (enumeration/orderings/subsets)");
    cmd->add_option("--workers", config.workers, "worker threads (never changes output bytes)");
    cmd->add_option("--format", config.format, "json|table");
    cmd->add_option("--out", out_path, "write the output document to this path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  CLI::App* cmd = app.get_subcommands().front();
  config.command = cmd->get_name();
  config.budget = budget;
  if (cmd->count("--instance")) config.instance_path = instance_path;
  if (cmd->count("--allocation")) config.allocation_path = allocation_path;
  if (cmd->count("--property")) config.property = property;
  if (cmd->count("--objective")) config.objective = objective;
  if (cmd->count("--alg")) config.algorithm = algorithm;
  if (cmd->count("--order")) config.order = order;
  if (cmd->count("--family")) config.family = family;
  if (cmd->count("--n")) config.n = n;
  if (cmd->count("--m")) config.m = m;
  if (cmd->count("--x")) config.x = x;
  if (cmd->count("--eps")) config.eps = eps;
  if (cmd->count("--out")) config.out_path = out_path;
  if (config.workers == 0) config.workers = 1;

  return fairdiv::run(config, std::cout, std::cerr);
}
