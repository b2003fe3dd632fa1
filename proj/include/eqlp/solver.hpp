#pragma once

#include <vector>

#include "eqlp/query.hpp"
#include "eqlp/solved_form.hpp"

namespace eqlp {

// One elementary step of the solved form algorithm: the rule applied and the
// whole query before and after.
struct StepTrace {
  int rule_id;  // 1..12
  Query before;
  Query after;
};

// All single-step successors of q under rules (1)-(12), each tagged with its
// rule. Variable elimination (rules 5/6) fires only where the selected
// equation is surrounded by equations and atoms alone, up to the nearest
// enclosing quantifier chain.
std::vector<StepTrace> applicable_steps(const Query& q);

// Deterministic total normalizer: hoists and merges quantifiers into one
// prefix (rules 8/9), then repeatedly rewrites the leftmost unsolved
// equation with the first applicable of rules (1)-(7), then cleans up with
// (10)-(12). Total: inconsistent input yields FALSE. Deterministic for a
// fixed fresh source; the result is a solved form equivalent to q.
SolvedForm normalize(const Query& q, FreshSource& fresh);

// normalize with a private fresh source (bound names do not escape).
SolvedForm normalize(const Query& q);

bool is_consistent(const Query& q);

// FEA-entailment e1 -> e2 between atom-free solved forms, decided by
// normalize(e1 /\ e2) being variant-equal to normalize(e1). FALSE implies
// everything; everything implies TRUE. Throws std::invalid_argument if
// either side carries atoms.
bool implies(const SolvedForm& e1, const SolvedForm& e2);

// Equivalence of atom-free solved forms: implies both ways.
bool equivalent(const SolvedForm& e1, const SolvedForm& e2);

}  // namespace eqlp
