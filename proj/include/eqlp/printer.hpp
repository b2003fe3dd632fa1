#pragma once

#include <string>

#include "eqlp/query.hpp"
#include "eqlp/solved_form.hpp"
#include "eqlp/subst.hpp"

namespace eqlp {

std::string print_term(const Term& t);
std::string print_atom(const Atom& a);

// Exact round trip: parse_query(print_query(q)) is structurally identical
// to q, bound-variable names included. Left-nested conjunctions print with
// explicit parentheses; quantifier chains print without inner parentheses.
std::string print_query(const Query& q);

std::string print_solved_form(const SolvedForm& sf);

// "{X = f(Z1), Y = a}"; identity bindings (parameters) are suppressed;
// bottom prints as "no".
std::string print_substitution(const Substitution& s);

}  // namespace eqlp
