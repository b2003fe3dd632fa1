#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "eqlp/solved_form.hpp"
#include "eqlp/term.hpp"

namespace eqlp {

// Finite substitutions: a finite map from a variable domain to terms, with
// an explicit bottom element for failure. Parameters are kept as identity
// bindings so the correspondence with solved forms is literal; display
// layers hide them.
class Substitution {
 public:
  Substitution() = default;  // the empty substitution

  static Substitution empty() { return Substitution(); }
  static Substitution bottom();
  static Substitution of(std::map<std::string, Term> bindings);

  bool is_bottom() const { return bottom_; }
  const std::map<std::string, Term>& bindings() const;  // throws on bottom

  std::set<std::string> domain() const;
  std::set<std::string> range_vars() const;

  // Application to a term; the domain must cover the term's variables.
  Term apply(const Term& t) const;  // throws NotApplicable
  Atom apply(const Atom& a) const;

  // Composition s.compose(t): x -> t(s(x)) over dom(s); requires
  // range_vars(s) within dom(t). Bottom absorbs on either side.
  Substitution compose(const Substitution& then) const;

  Substitution restrict_to(const std::set<std::string>& xs) const;

  // Extends over xs (a superset of the domain) binding each new variable to
  // a distinct fresh variable outside the range.
  Substitution regular_extension(const std::set<std::string>& xs,
                                 FreshSource& fresh) const;

  bool operator==(const Substitution& other) const;

 private:
  bool bottom_ = false;
  std::map<std::string, Term> bindings_;
};

enum class SubstOrder { MoreGeneral, LessGeneral, Equivalent, Incomparable };

// Decides the generality preorder both ways by simultaneous first-order
// matching over regular extensions; compare(s, t) == MoreGeneral means s is
// strictly more general than t. Bottom is below everything.
SubstOrder compare(const Substitution& s, const Substitution& t);

// s more general than or equivalent to t (t is an instance of s).
bool more_general_eq(const Substitution& s, const Substitution& t);

// Minimal variable set whose restriction stays equivalent; computed through
// the solved-form correspondence.
std::set<std::string> kernel_of_subst(const Substitution& s);

// The lattice correspondence. Identity bindings mark parameters (left
// free); every other range variable is existentially quantified, renamed
// apart when its name collides with a domain variable.
SolvedForm to_eq_formula(const Substitution& s);

// Inverse direction: bindings plus identity bindings for the parameters;
// bound variables are renamed fresh and appear only in ranges. Requires an
// atom-free solved form.
Substitution from_solved_form(const SolvedForm& e, FreshSource& fresh);
Substitution from_solved_form(const SolvedForm& e);

}  // namespace eqlp
