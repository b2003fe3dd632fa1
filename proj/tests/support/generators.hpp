#pragma once

// Seeded random generators for terms, queries, solved forms and
// substitutions. The corpus alphabet is {a/0, f/1, g/2} with predicates
// {p/1, q/2}; free variables come from a small pool so solution-set
// comparisons stay enumerable.

#include <random>
#include <string>
#include <vector>

#include "eqlp/query.hpp"
#include "eqlp/solved_form.hpp"
#include "eqlp/subst.hpp"
#include "eqlp/term.hpp"

namespace eqlp::testing {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  }

  std::vector<std::string> free_pool{"X", "Y", "Z"};
  std::vector<std::string> binder_pool{"U", "V", "W"};

  Alphabet corpus_alphabet() const {
    Alphabet a;
    a.functors = {{"a", 0}, {"f", 1}, {"g", 2}};
    a.predicates = {{"p", 1}, {"q", 2}};
    return a;
  }

  std::string free_var() { return free_pool[below(free_pool.size())]; }
  std::string binder() { return binder_pool[below(binder_pool.size())]; }

  Term term(std::size_t max_depth, const std::vector<std::string>& vars) {
    if (max_depth == 0 || chance(0.35)) {
      if (!vars.empty() && chance(0.55)) return Term::var(vars[below(vars.size())]);
      return Term::app("a");
    }
    if (chance(0.5)) return Term::app("f", {term(max_depth - 1, vars)});
    return Term::app("g", {term(max_depth - 1, vars), term(max_depth - 1, vars)});
  }

  Atom atom(std::size_t max_depth, const std::vector<std::string>& vars) {
    if (chance(0.5)) return Atom{"p", {term(max_depth, vars)}};
    return Atom{"q", {term(max_depth, vars), term(max_depth, vars)}};
  }

  // A random positive query. `vars` seeds the variable pool; binders extend
  // it inside their scope. Size is the number of leaves.
  Query query(std::size_t size, std::size_t term_depth, bool with_atoms,
              std::vector<std::string> vars) {
    if (size <= 1) {
      double roll = std::uniform_real_distribution<double>(0, 1)(rng);
      if (with_atoms && roll < 0.3)
        return Query::atom(atom(term_depth, vars));
      if (roll < 0.36) return Query::truth();
      return Query::eq(term(term_depth, vars), term(term_depth, vars));
    }
    if (chance(0.25)) {
      std::string b = binder();
      std::vector<std::string> inner = vars;
      inner.push_back(b);
      return Query::exists(b, query(size, term_depth, with_atoms, inner));
    }
    std::size_t ls = 1 + below(size - 1);
    Query l = query(ls, term_depth, with_atoms, vars);
    Query r = query(size - ls, term_depth, with_atoms, vars);
    return Query::conj(std::move(l), std::move(r));
  }

  Query corpus_query(bool with_atoms) {
    std::vector<std::string> vars;
    std::size_t nfree = with_atoms ? 1 + below(2) : 1 + below(3);
    for (std::size_t i = 0; i < nfree; ++i) vars.push_back(free_pool[i]);
    std::size_t size = 1 + below(4);
    return query(size, 1 + below(3), with_atoms, vars);
  }

  // A valid random solved form (atom-free unless told otherwise).
  SolvedForm solved_form(bool with_atoms = false) {
    std::vector<std::string> elim;
    for (const char* v : {"X", "Y", "Z"})
      if (chance(0.55)) elim.push_back(v);
    if (elim.empty()) elim.push_back("X");
    std::vector<std::string> others{"P", "Q"};   // parameter candidates
    std::vector<std::string> binders{"U", "V"};  // bound candidates

    std::vector<std::pair<std::string, Term>> bindings;
    std::set<std::string> used_binders;
    for (const std::string& x : elim) {
      std::vector<std::string> pool;
      for (const std::string& o : others)
        if (chance(0.5)) pool.push_back(o);
      for (const std::string& b : binders)
        if (chance(0.4)) pool.push_back(b);
      Term s = term(2, pool);
      // Condition (iv): never exactly a bound variable.
      if (s.is_var() &&
          (s.name() == "U" || s.name() == "V"))
        s = Term::app("f", {s});
      for (const std::string& b : binders)
        if (s.contains_var(b)) used_binders.insert(b);
      bindings.emplace_back(x, s);
    }
    std::vector<Atom> atoms;
    if (with_atoms && chance(0.5)) {
      std::vector<std::string> pool{"P"};
      atoms.push_back(atom(1, pool));
    }
    std::vector<std::string> bound(used_binders.begin(), used_binders.end());
    return SolvedForm::shape(std::move(bound), std::move(bindings),
                             std::move(atoms));
  }

  // A random well-behaved substitution (identity bindings included).
  Substitution substitution() {
    std::map<std::string, Term> b;
    for (const char* xc : {"X", "Y", "Z"}) {
      std::string x = xc;
      if (!chance(0.7)) continue;
      if (chance(0.2)) {
        b.emplace(x, Term::var(x));  // parameter
        continue;
      }
      std::vector<std::string> range_pool{"R", "S"};
      b.emplace(x, term(2, range_pool));
    }
    return Substitution::of(std::move(b));
  }

  // Atom pairs over the same predicate for unification tests.
  std::pair<Atom, Atom> atom_pair() {
    std::vector<std::string> vars1{"X", "Y"};
    std::vector<std::string> vars2 = chance(0.5)
                                         ? std::vector<std::string>{"X", "Z"}
                                         : std::vector<std::string>{"V", "W"};
    if (chance(0.5)) {
      return {Atom{"q", {term(2, vars1), term(2, vars1)}},
              Atom{"q", {term(2, vars2), term(2, vars2)}}};
    }
    return {Atom{"p", {term(3, vars1)}}, Atom{"p", {term(3, vars2)}}};
  }
};

}  // namespace eqlp::testing
