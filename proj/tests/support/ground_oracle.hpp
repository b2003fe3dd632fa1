#pragma once

// Ground-solution oracle: computes the set of valuations of a query's free
// variables (over a truncated Herbrand universe) that extend to solutions
// over the full universe. Free variables are enumerated by brute force;
// the existential witnesses are decided exactly by the independent textbook
// unifier, with residual atom variables enumerated over the interpretation
// base (an atom over deeper terms is false in any sampled interpretation,
// so the base bound is exact for atoms).

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "eqlp/fixpoint.hpp"
#include "eqlp/query.hpp"
#include "eqlp/term.hpp"
#include "support/textbook_unify.hpp"

namespace eqlp::testing {

struct PrenexQuery {
  bool has_false = false;
  std::vector<std::pair<Term, Term>> eqs;
  std::vector<Atom> atoms;
};

// Renames binders apart with local names and flattens; positive queries
// prenex trivially.
inline void prenex_rec(const Query& q, const std::map<std::string, Term>& env,
                       std::size_t& next, PrenexQuery& out) {
  switch (q.kind()) {
    case Query::Kind::True:
      return;
    case Query::Kind::False:
      out.has_false = true;
      return;
    case Query::Kind::Eq:
      out.eqs.emplace_back(q.lhs().replace(env), q.rhs().replace(env));
      return;
    case Query::Kind::Atom:
      out.atoms.push_back(q.atom_ref().replace(env));
      return;
    case Query::Kind::And:
      prenex_rec(q.left(), env, next, out);
      prenex_rec(q.right(), env, next, out);
      return;
    case Query::Kind::Exists: {
      auto inner = env;
      inner[q.var()] = Term::var("%w" + std::to_string(next++));
      prenex_rec(q.body(), inner, next, out);
      return;
    }
  }
}

inline PrenexQuery prenex(const Query& q) {
  PrenexQuery out;
  std::size_t next = 0;
  prenex_rec(q, {}, next, out);
  return out;
}

// Decides whether the valuation h of the free variables extends to a full
// solution under the interpretation.
inline bool extends_to_solution(const PrenexQuery& pq,
                                const std::map<std::string, Term>& h,
                                const GroundAtomSet& interp,
                                const UniverseBound& base) {
  if (pq.has_false) return false;

  std::vector<std::pair<Term, Term>> eqs;
  eqs.reserve(pq.eqs.size());
  for (const auto& [l, r] : pq.eqs)
    eqs.emplace_back(l.replace(h), r.replace(h));
  auto mgu = textbook_mgu(eqs);
  if (!mgu) return false;

  std::vector<Atom> atoms;
  atoms.reserve(pq.atoms.size());
  std::set<std::string> open;
  for (const Atom& a : pq.atoms) {
    Atom inst = a.replace(h);
    Atom resolved;
    resolved.predicate = inst.predicate;
    for (const Term& t : inst.args) {
      Term rt = mgu_apply(*mgu, t);
      rt.collect_vars(open);
      resolved.args.push_back(rt);
    }
    atoms.push_back(std::move(resolved));
  }
  if (atoms.empty()) return true;

  // Enumerate leftover atom variables over the base universe; a true atom
  // never needs deeper arguments.
  std::vector<std::string> vars(open.begin(), open.end());
  std::map<std::string, Term> g;
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == vars.size()) {
      for (const Atom& a : atoms)
        if (!interp.count(a.replace(g))) return false;
      return true;
    }
    for (const Term& t : base.terms) {
      g[vars[k]] = t;
      if (rec(k + 1)) return true;
    }
    g.erase(vars[k]);
    return false;
  };
  return rec(0);
}

// The solution set over valuations of `vars` into the universe. `vars` must
// cover the query's free variables.
inline std::set<std::map<std::string, Term>> ground_solutions(
    const Query& q, const std::vector<std::string>& vars,
    const GroundAtomSet& interp, const UniverseBound& u) {
  PrenexQuery pq = prenex(q);
  std::set<std::map<std::string, Term>> out;
  std::map<std::string, Term> h;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == vars.size()) {
      if (extends_to_solution(pq, h, interp, u)) out.insert(h);
      return;
    }
    for (const Term& t : u.terms) {
      h[vars[k]] = t;
      rec(k + 1);
    }
    h.erase(vars[k]);
  };
  rec(0);
  return out;
}

// Side-by-side comparison of two queries' solution sets under one
// interpretation: true when identical.
inline bool same_solutions(const Query& a, const Query& b,
                           const GroundAtomSet& interp,
                           const UniverseBound& u) {
  std::set<std::string> fv;
  collect_free_vars(a, fv);
  collect_free_vars(b, fv);
  std::vector<std::string> vars(fv.begin(), fv.end());
  PrenexQuery pa = prenex(a);
  PrenexQuery pb = prenex(b);
  bool equal = true;
  std::map<std::string, Term> h;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (!equal) return;
    if (k == vars.size()) {
      if (extends_to_solution(pa, h, interp, u) !=
          extends_to_solution(pb, h, interp, u))
        equal = false;
      return;
    }
    for (const Term& t : u.terms) {
      if (!equal) return;
      h[vars[k]] = t;
      rec(k + 1);
    }
    h.erase(vars[k]);
  };
  rec(0);
  return equal;
}

}  // namespace eqlp::testing
