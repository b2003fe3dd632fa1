#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eqlp/fixpoint.hpp"
#include "eqlp/parser.hpp"
#include "eqlp/resolution.hpp"

namespace eqlp {

struct SessionConfig {
  std::vector<std::string> program_paths;
  SelectionKind selection = SelectionKind::Leftmost;
  std::optional<std::uint64_t> seed;
  std::size_t max_depth = 64;
  std::size_t max_answers = 10;
  std::size_t universe_depth = 3;
  std::size_t verify_max_n = 32;
  bool verify = false;
  bool json = false;
  bool trace = false;
};

// Bound variables renamed to presentation names Z1, Z2, ... (skipping names
// free in the form), used for all user-facing output.
SolvedForm presented_answer(const SolvedForm& sf);

// One line of NDJSON per answer, keys in this order: eq_formula, bindings,
// parameters, bound, kernel, then verdict when verification ran.
std::string emit_json(const std::vector<Answer>& answers,
                      const std::vector<OracleVerdict>* verdicts);

// Text form: the EQ-formula, a substitution view, optional verdict line.
std::string answer_text(const Answer& answer,
                        const OracleVerdict* verdict);

// Loads the configured program files, runs one query or the REPL on the
// streams. Exit code: 0 with at least one answer, 1 with none, 2 on any
// diagnostic or configuration error.
int run(const SessionConfig& config,
        const std::optional<std::string>& query_text, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace eqlp
