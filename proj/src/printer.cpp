#include "eqlp/printer.hpp"

namespace eqlp {

std::string print_term(const Term& t) {
  if (t.is_var() || t.args().empty()) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ", ";
    out += print_term(t.args()[i]);
  }
  return out + ")";
}

std::string print_atom(const Atom& a) {
  if (a.args.empty()) return a.predicate;
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ", ";
    out += print_term(a.args[i]);
  }
  return out + ")";
}

namespace {

std::string print_rec(const Query& q, bool left_of_and) {
  switch (q.kind()) {
    case Query::Kind::True:
      return "true";
    case Query::Kind::False:
      return "false";
    case Query::Kind::Eq:
      return print_term(q.lhs()) + " = " + print_term(q.rhs());
    case Query::Kind::Atom:
      return print_atom(q.atom_ref());
    case Query::Kind::And: {
      std::string s =
          print_rec(q.left(), true) + ", " + print_rec(q.right(), false);
      // A conjunction on the left of a ',' needs grouping to round-trip.
      return left_of_and ? "(" + s + ")" : s;
    }
    case Query::Kind::Exists: {
      std::string s = "exists " + q.var() + " . ";
      if (q.body().is(Query::Kind::Exists))
        return s + print_rec(q.body(), false);
      return s + "(" + print_rec(q.body(), false) + ")";
    }
  }
  return "";
}

}  // namespace

std::string print_query(const Query& q) { return print_rec(q, false); }

std::string print_solved_form(const SolvedForm& sf) {
  return print_query(sf.to_query());
}

std::string print_substitution(const Substitution& s) {
  if (s.is_bottom()) return "no";
  std::string out = "{";
  bool first = true;
  for (const auto& [x, t] : s.bindings()) {
    if (t.is_var() && t.name() == x) continue;  // parameters stay silent
    if (!first) out += ", ";
    first = false;
    out += x + " = " + print_term(t);
  }
  return out + "}";
}

}  // namespace eqlp
