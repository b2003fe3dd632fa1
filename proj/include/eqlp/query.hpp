#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqlp/term.hpp"

namespace eqlp {

// Positive queries: TRUE, FALSE, equations and atoms closed under
// conjunction and existential quantification. No negation, disjunction or
// universal quantifier can be built.
class Query {
 public:
  enum class Kind { True, False, Eq, Atom, And, Exists };

  Query() : Query(truth()) {}

  static Query truth();
  static Query falsity();
  static Query eq(Term lhs, Term rhs);
  static Query atom(Atom a);
  static Query conj(Query left, Query right);
  static Query exists(std::string var, Query body);

  Kind kind() const { return rep_->kind; }
  bool is(Kind k) const { return rep_->kind == k; }

  const Term& lhs() const { return rep_->lhs; }
  const Term& rhs() const { return rep_->rhs; }
  const Atom& atom_ref() const { return rep_->atom; }
  const Query& left() const { return *rep_->left; }
  const Query& right() const { return *rep_->right; }
  const std::string& var() const { return rep_->var; }
  const Query& body() const { return *rep_->left; }

  bool operator==(const Query& other) const;  // structural identity
  bool operator!=(const Query& other) const { return !(*this == other); }

 private:
  struct Rep {
    Kind kind;
    Term lhs, rhs;                 // Eq
    Atom atom;                     // Atom
    std::shared_ptr<const Query> left, right;  // And; Exists uses left=body
    std::string var;               // Exists
  };
  explicit Query(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

// ---------------------------------------------------------------------------
// Variable accounting and structural operations.

std::set<std::string> free_vars(const Query& q);
void collect_free_vars(const Query& q, std::set<std::string>& out);

// All variable names with any occurrence, free or bound (binders included).
std::set<std::string> all_vars(const Query& q);

std::size_t atom_count(const Query& q);

enum class AutoRename { Off, On };

// Simultaneous replacement of the free occurrences of the mapped variables.
// Bound occurrences are untouched. When a replacement term would be captured
// by a binder, the binder is renamed to a fresh variant ("z" -> "z1") if
// auto-renaming is on, otherwise CaptureError is thrown.
Query replace_free(const Query& q, const std::map<std::string, Term>& bindings,
                   AutoRename mode = AutoRename::On);

// Alpha-equivalence: q2 obtainable from q1 by renaming bound variables.
// Decided by canonical renumbering of binders in traversal order; free
// variables must match exactly.
bool is_variant(const Query& q1, const Query& q2);

// The canonical renumbering used by is_variant: binders renamed to internal
// names ("%b1", "%b2", ...) in binder-occurrence order.
Query canonical_bound_renumber(const Query& q);

// ---------------------------------------------------------------------------
// Conjunction and quantifier-prefix helpers. Conjunction is a binary node in
// the tree; these helpers give the flattened reading used by the rewriting
// rules.

void flatten_conj(const Query& q, std::vector<Query>& out);
std::vector<Query> flatten_conj(const Query& q);

// Right-nested conjunction; the empty list yields TRUE.
Query build_conj(const std::vector<Query>& items);

// Splits a leading quantifier chain (exists x1 ... exists xk . body).
std::pair<std::vector<std::string>, Query> peel_exists(const Query& q);
Query build_exists(const std::vector<std::string>& prefix, Query body);

// ---------------------------------------------------------------------------
// Clauses and programs.

struct Clause {
  Atom head;
  Query body;  // positive query; TRUE for facts
};

// Functor and predicate arities, declared implicitly by first use and
// consistent thereafter. "=" is not a predicate symbol.
struct Alphabet {
  std::map<std::string, std::size_t> functors;
  std::map<std::string, std::size_t> predicates;

  // Declares or checks an arity; returns false on an arity conflict.
  bool declare_functor(const std::string& name, std::size_t arity);
  bool declare_predicate(const std::string& name, std::size_t arity);
  bool has_constant() const;
  void merge(const Alphabet& other);  // throws NotApplicable on conflict
};

struct Program {
  std::vector<Clause> clauses;
  Alphabet alphabet;
};

// Free variables of the clause (head then body, first-occurrence order).
std::vector<std::string> clause_vars(const Clause& c);

// Injectively renames every clause variable to a fresh name; the result is
// a variant of the input.
Clause rename_clause(const Clause& c, FreshSource& fresh);

}  // namespace eqlp
