#pragma once

#include <optional>
#include <string>
#include <variant>

#include "eqlp/query.hpp"

namespace eqlp {

// A parse problem with a 1-based source position.
struct Diagnostic {
  enum class Kind { Syntax, ArityConflict, ReservedName };
  Kind kind = Kind::Syntax;
  std::string message;
  std::size_t line = 1;
  std::size_t column = 1;

  std::string to_string() const;
};

template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::optional<Diagnostic> diagnostic;

  bool ok() const { return value.has_value(); }
};

// Grammar (programs, UTF-8, '%' line comments):
//   Program  := Clause*
//   Clause   := Atom '.' | Atom ':-' Body '.'
//   Body     := Conjunct (',' Conjunct)*            (right-associative)
//   Conjunct := 'true' | 'false' | '(' Body ')'
//             | 'exists' VAR '.' ExistsBody
//             | Term '=' Term | Atom
//   ExistsBody := 'exists' VAR '.' ExistsBody | '(' Body ')'
//   Term     := VAR | NAME | NAME '(' Term (',' Term)* ')'
//   Atom     := NAME | NAME '(' Term (',' Term)* ')'
// Variables start with an uppercase letter or '_'; functors and predicates
// with a lowercase letter. Identifiers starting "_G" are reserved. Arities
// are declared by first use and must stay consistent.
ParseResult<Program> parse_program(const std::string& text,
                                   const std::string& origin = "");

// Same body grammar; optional "?-" prefix and trailing '.'. The alphabet is
// extended (a copy) with symbols the query introduces; pass `extended` to
// receive the extension.
ParseResult<Query> parse_query(const std::string& text,
                               const Alphabet& alphabet = {},
                               Alphabet* extended = nullptr);

// Appends clauses of a parsed program into an existing one (for repeated
// --program flags and :load); alphabets must stay consistent.
ParseResult<Program> parse_program_into(Program base, const std::string& text,
                                        const std::string& origin = "");

// When the program declares no constant, extends the alphabet with one so
// the Herbrand universe is nonempty (the name avoids declared functors).
void ensure_constant(Program& program);

}  // namespace eqlp
