// Command-line front end: load programs, answer queries, verify answers
// against the bounded fixpoint, or drop into a REPL.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eqlp/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"logic programming with equational answers"};

  eqlp::SessionConfig config;
  std::optional<std::string> query;
  std::string selection = "leftmost";
  std::uint64_t seed = 0;
  bool seed_set = false;

  app.add_option("--program", config.program_paths,
                 "program file (.lp); repeatable")
      ->check(CLI::ExistingFile);
  std::string query_str;
  auto* qopt = app.add_option("--query", query_str, "query to run");
  app.add_option("--selection", selection,
                 "atom selection rule: leftmost|all|random")
      ->check(CLI::IsMember({"leftmost", "all", "random"}));
  auto* sopt = app.add_option("--seed", seed, "seed for random selection");
  app.add_option("--max-depth", config.max_depth, "derivation depth bound")
      ->default_val(64);
  app.add_option("--max-answers", config.max_answers,
                 "stop after this many answers")
      ->default_val(10);
  app.add_option("--universe-depth", config.universe_depth,
                 "term depth bound for --verify")
      ->default_val(3);
  app.add_flag("--verify", config.verify,
               "check each answer against the bounded fixpoint");
  app.add_flag("--json", config.json, "newline-delimited JSON output");
  app.add_flag("--trace", config.trace, "dump derivation steps per answer");

  CLI11_PARSE(app, argc, argv);

  if (config.max_depth < 1 || config.max_answers < 1) {
    std::cerr << "error: --max-depth and --max-answers must be at least 1\n";
    return 2;
  }
  if (selection == "all") config.selection = eqlp::SelectionKind::AllAtoms;
  else if (selection == "random")
    config.selection = eqlp::SelectionKind::SeededRandom;
  else config.selection = eqlp::SelectionKind::Leftmost;
  seed_set = sopt->count() > 0;
  if (seed_set) config.seed = seed;
  if (qopt->count() > 0) query = query_str;

  return eqlp::run(config, query, std::cin, std::cout, std::cerr);
}
