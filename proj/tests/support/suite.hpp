#pragma once

// The shared program/query suite used by the resolution, fixpoint and
// acceptance tests.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqlp/parser.hpp"
#include "eqlp/query.hpp"

#ifndef EQLP_PROGRAM_DIR
#define EQLP_PROGRAM_DIR "tests/programs"
#endif

namespace eqlp::testing {

struct SuiteEntry {
  std::string file;             // under EQLP_PROGRAM_DIR
  std::vector<std::string> queries;
  bool datalog;                 // exact-oracle regime
  std::size_t max_depth = 16;   // search bound for this program
  std::size_t max_answers = 64;
};

inline std::vector<SuiteEntry> suite_entries() {
  return {
      {"paper_pq.lp", {"p(X), q(Y)", "p(X)", "q(Y)"}, false, 8, 16},
      {"facts_ab.lp", {"p(X)", "p(a)", "p(X), p(X)"}, true, 8, 16},
      {"append.lp",
       {"append(c(a, nil), c(b, nil), L)", "append(X, Y, c(a, c(b, nil)))",
        "append(c(a, nil), Y, Z)"},
       false, 10, 16},
      {"peano.lp",
       {"add(s(zero), s(zero), R)", "add(X, Y, s(s(zero)))",
        "add(s(zero), Y, Z)"},
       false, 10, 16},
      {"graph6.lp", {"path(n1, X)", "path(X, n6)", "path(n2, n5)"}, true, 12,
       128},
      {"ancestor.lp", {"ancestor(alice, X)", "ancestor(X, dave)"}, true, 10,
       64},
      {"samegen.lp", {"sg(a1, X)", "sg(X, a3)"}, true, 12, 128},
      {"tc_dag.lp", {"tc(d1, X)", "tc(X, d5)"}, true, 10, 64},
      {"cyclic.lp", {"reach(c1, X)", "reach(X, c2)"}, true, 12, 160},
      {"eqbody.lp", {"wrap(a, Y)", "wrap(X, Y)", "pairup(Z)"}, false, 8, 16},
      {"existsbody.lp", {"hasparent(X)", "orphanless"}, true, 8, 32},
  };
}

inline std::string program_path(const std::string& file) {
  return std::string(EQLP_PROGRAM_DIR) + "/" + file;
}

inline Program load_suite_program(const std::string& file) {
  std::ifstream in(program_path(file));
  std::stringstream buf;
  buf << in.rdbuf();
  auto res = parse_program(buf.str(), file);
  if (!res.ok()) throw std::runtime_error(file + ": " + res.diagnostic->to_string());
  Program p = std::move(*res.value);
  ensure_constant(p);
  return p;
}

}  // namespace eqlp::testing
