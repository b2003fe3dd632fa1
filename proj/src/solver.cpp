#include "eqlp/solver.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "eqlp/errors.hpp"

namespace eqlp {

// ---------------------------------------------------------------------------
// Deterministic normalizer.
//
// The query is first flattened into a single quantifier prefix over a list
// of equations and atoms (rules 8, 9, 11, 12 justify hoisting, merging and
// constant elimination; every hoisted binder is renamed with the session
// fresh source so the rule-9 side conditions hold by construction). The flat
// system is then solved in place.

namespace {

struct Flat {
  bool is_false = false;
  std::vector<std::string> prefix;        // hoisted binders, outermost first
  std::set<std::string> bound;            // same, as a set
  std::vector<std::pair<Term, Term>> eqs;  // source order
  std::vector<Atom> atoms;                 // source order
};

// Environment-based hoisting: every binder is renamed to a fresh name on
// the way down, so prefixes merge without capture (rules 8, 9, 11, 12).
void hoist(const Query& q, const std::map<std::string, Term>& env,
           FreshSource& fresh, Flat& out) {
  switch (q.kind()) {
    case Query::Kind::True:
      return;  // rule 11
    case Query::Kind::False:
      out.is_false = true;  // rule 12
      return;
    case Query::Kind::Eq:
      out.eqs.emplace_back(q.lhs().replace(env), q.rhs().replace(env));
      return;
    case Query::Kind::Atom:
      out.atoms.push_back(q.atom_ref().replace(env));
      return;
    case Query::Kind::And:
      hoist(q.left(), env, fresh, out);
      if (out.is_false) return;
      hoist(q.right(), env, fresh, out);
      return;
    case Query::Kind::Exists: {
      std::string g = fresh.fresh();
      out.prefix.push_back(g);
      out.bound.insert(g);
      std::map<std::string, Term> inner = env;
      inner[q.var()] = Term::var(g);
      hoist(q.body(), inner, fresh, out);
      return;
    }
  }
}

bool occurs_elsewhere(const Flat& f, const std::string& x, std::size_t skip) {
  for (std::size_t j = 0; j < f.eqs.size(); ++j) {
    if (j == skip) continue;
    if (f.eqs[j].first.contains_var(x) || f.eqs[j].second.contains_var(x))
      return true;
  }
  for (const Atom& a : f.atoms)
    for (const Term& t : a.args)
      if (t.contains_var(x)) return true;
  return false;
}

void substitute_everywhere(Flat& f, const std::string& x, const Term& t,
                           std::size_t skip) {
  std::map<std::string, Term> m{{x, t}};
  for (std::size_t j = 0; j < f.eqs.size(); ++j) {
    if (j == skip) continue;
    f.eqs[j].first = f.eqs[j].first.replace(m);
    f.eqs[j].second = f.eqs[j].second.replace(m);
  }
  for (Atom& a : f.atoms) a = a.replace(m);
}

// Solves the flat system in place. Returns false when the system collapses
// to FALSE (rules 2, 3, 12).
bool solve_flat(Flat& f) {
  constexpr std::size_t kSafetyLimit = 1u << 22;
  std::size_t steps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < f.eqs.size(); ++i) {
      if (++steps > kSafetyLimit)
        throw std::logic_error("solved form algorithm did not terminate");
      Term l = f.eqs[i].first;
      Term r = f.eqs[i].second;

      // Rules (1), (2): decomposition and clash.
      if (l.is_app() && r.is_app()) {
        if (l.name() != r.name() || l.args().size() != r.args().size())
          return false;
        std::vector<std::pair<Term, Term>> sub;
        sub.reserve(l.args().size());
        for (std::size_t k = 0; k < l.args().size(); ++k)
          sub.emplace_back(l.args()[k], r.args()[k]);
        f.eqs.erase(f.eqs.begin() + static_cast<std::ptrdiff_t>(i));
        f.eqs.insert(f.eqs.begin() + static_cast<std::ptrdiff_t>(i),
                     sub.begin(), sub.end());
        changed = true;
        break;
      }

      if (l.is_var()) {
        const std::string& x = l.name();
        // Rule (4): x = x.
        if (r.is_var() && r.name() == x) {
          f.eqs.erase(f.eqs.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
        // Rule (3): occurs check.
        if (r.contains_var(x)) return false;
        // Rule (6): eliminate a bound variable, dropping the equation.
        if (f.bound.count(x)) {
          substitute_everywhere(f, x, r, i);
          f.eqs.erase(f.eqs.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
        // Rule (5): eliminate a free variable, keeping the equation.
        if (occurs_elsewhere(f, x, i)) {
          substitute_everywhere(f, x, r, i);
          changed = true;
          break;
        }
        // Rule (7)(ii): x = z with z bound flips so rule 6 can fire.
        if (r.is_var() && f.bound.count(r.name())) {
          std::swap(f.eqs[i].first, f.eqs[i].second);
          changed = true;
          break;
        }
        continue;  // solved: x = t, x occurring nowhere else
      }

      // Rule (7)(i): t = x with t not a variable.
      if (r.is_var()) {
        std::swap(f.eqs[i].first, f.eqs[i].second);
        changed = true;
        break;
      }
    }
  }
  return true;
}

}  // namespace

namespace {

// A fresh source whose names are guaranteed new relative to the query:
// starts above every "_G<k>" already occurring (free or bound).
FreshSource fresh_above(const Query& q) {
  std::uint64_t start = 0;
  for (const std::string& v : all_vars(q)) {
    if (!is_reserved_name(v)) continue;
    std::uint64_t k = 0;
    bool numeric = v.size() > 2;
    for (std::size_t i = 2; i < v.size(); ++i) {
      if (v[i] < '0' || v[i] > '9') {
        numeric = false;
        break;
      }
      k = k * 10 + static_cast<std::uint64_t>(v[i] - '0');
    }
    if (numeric && k + 1 > start) start = k + 1;
  }
  return FreshSource(start);
}

}  // namespace

SolvedForm normalize(const Query& q, FreshSource& fresh) {
  Flat f;
  hoist(q, {}, fresh, f);
  if (f.is_false) return SolvedForm::falsity();
  if (!solve_flat(f)) return SolvedForm::falsity();

  // Rule (8): drop binders without occurrences; rule (10)'s layout is the
  // Flat representation itself (equations before atoms).
  std::vector<std::string> prefix;
  for (const std::string& z : f.prefix) {
    bool occurs = false;
    for (const auto& [l, r] : f.eqs)
      if (l.contains_var(z) || r.contains_var(z)) occurs = true;
    for (const Atom& a : f.atoms)
      for (const Term& t : a.args)
        if (t.contains_var(z)) occurs = true;
    if (occurs) prefix.push_back(z);
  }
  if (f.eqs.empty() && f.atoms.empty()) return SolvedForm::truth();

  std::vector<std::pair<std::string, Term>> bindings;
  bindings.reserve(f.eqs.size());
  for (const auto& [l, r] : f.eqs) bindings.emplace_back(l.name(), r);
  return SolvedForm::shape(std::move(prefix), std::move(bindings),
                           std::move(f.atoms));
}

SolvedForm normalize(const Query& q) {
  FreshSource local = fresh_above(q);
  return normalize(q, local);
}

bool is_consistent(const Query& q) { return !normalize(q).is_false(); }

bool implies(const SolvedForm& e1, const SolvedForm& e2) {
  if (!e1.atom_free() || !e2.atom_free())
    throw std::invalid_argument("implies requires atom-free solved forms");
  if (e1.is_false()) return true;
  if (e2.is_true()) return true;
  if (e2.is_false()) return false;  // e1 is consistent here
  Query conj = Query::conj(e1.to_query(), e2.to_query());
  FreshSource local = fresh_above(conj);
  SolvedForm lhs = normalize(e1.to_query(), local);
  SolvedForm both = normalize(conj, local);
  return variant_equal(both, lhs);
}

bool equivalent(const SolvedForm& e1, const SolvedForm& e2) {
  return implies(e1, e2) && implies(e2, e1);
}

// ---------------------------------------------------------------------------
// Nondeterministic step relation.
//
// Successors are produced by walking the query tree. Conjunction is read
// flattened; rewritten regions are rebuilt right-nested. Steps carry the
// rule number of the instance.

namespace {

// Replaces the subquery at the current path. `rebuild` receives the new
// subquery and returns the whole query.
using Rebuild = std::function<Query(const Query&)>;

void steps_rec(const Query& q, const Rebuild& rebuild, bool at_chain_body,
               const Query& root, std::vector<StepTrace>& out);

// Decomposition of the arguments of two same-functor applications into a
// right-nested conjunction of equations (TRUE when there are none).
Query decompose_eq(const Term& l, const Term& r) {
  std::vector<Query> items;
  items.reserve(l.args().size());
  for (std::size_t i = 0; i < l.args().size(); ++i)
    items.push_back(Query::eq(l.args()[i], r.args()[i]));
  return build_conj(items);
}

bool region_all_eq_atom(const std::vector<Query>& items) {
  for (const Query& it : items)
    if (!it.is(Query::Kind::Eq) && !it.is(Query::Kind::Atom)) return false;
  return true;
}

// Rules (5)/(6)/(7) instances inside one flat region (a quantifier chain over
// equations and atoms only). `chain` lists the binders of the enclosing
// chain; `wrap` rebuilds the whole query from a replacement matrix.
void elimination_steps(const std::vector<std::string>& chain,
                       const std::vector<Query>& items,
                       const std::function<Query(const Query&)>& wrap,
                       const Query& root, std::vector<StepTrace>& out) {
  std::set<std::string> bound(chain.begin(), chain.end());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].is(Query::Kind::Eq)) continue;
    const Term& l = items[i].lhs();
    const Term& r = items[i].rhs();

    auto substituted = [&](const Term& t, const std::string& x,
                           bool keep_eq) -> Query {
      std::map<std::string, Term> m{{x, t}};
      std::vector<Query> next;
      next.reserve(items.size());
      for (std::size_t j = 0; j < items.size(); ++j) {
        if (j == i) {
          next.push_back(keep_eq ? items[i] : Query::truth());
          continue;
        }
        if (items[j].is(Query::Kind::Eq))
          next.push_back(Query::eq(items[j].lhs().replace(m),
                                   items[j].rhs().replace(m)));
        else
          next.push_back(Query::atom(items[j].atom_ref().replace(m)));
      }
      return wrap(build_conj(next));
    };

    if (l.is_var() && l != r && !r.contains_var(l.name())) {
      const std::string& x = l.name();
      bool elsewhere = false;
      for (std::size_t j = 0; j < items.size() && !elsewhere; ++j) {
        if (j == i) continue;
        if (items[j].is(Query::Kind::Eq))
          elsewhere = items[j].lhs().contains_var(x) ||
                      items[j].rhs().contains_var(x);
        else
          elsewhere = items[j].atom_ref().vars().count(x) > 0;
      }
      if (!bound.count(x) && elsewhere)
        out.push_back({5, root, substituted(r, x, true)});
      if (bound.count(x))
        out.push_back({6, root, substituted(r, x, false)});
    }

    // Rule (7): the equation read as t = x.
    if (r.is_var()) {
      bool flip = false;
      if (l.is_app()) flip = true;  // (i)
      else if (l.is_var() && l.name() != r.name() && !bound.count(l.name()) &&
               bound.count(r.name()))
        flip = true;  // (ii)
      if (flip) {
        std::vector<Query> next = items;
        next[i] = Query::eq(r, l);
        out.push_back({7, root, wrap(build_conj(next))});
      }
    }
  }
}

// Picks variant binder names for rule (9): keeps a name unless it clashes
// with the other side; clashes get the smallest unused numeric suffix.
std::vector<std::string> rename_apart(const std::vector<std::string>& names,
                                      std::set<std::string>& taken,
                                      std::map<std::string, Term>& renaming) {
  std::vector<std::string> out;
  for (const std::string& n : names) {
    std::string pick = n;
    if (taken.count(pick)) {
      for (std::size_t k = 1;; ++k) {
        pick = n + "_" + std::to_string(k);
        if (!taken.count(pick)) break;
      }
    }
    taken.insert(pick);
    out.push_back(pick);
    if (pick != n) renaming.emplace(n, Term::var(pick));
  }
  return out;
}

void steps_rec(const Query& q, const Rebuild& rebuild, bool at_chain_body,
               const Query& root, std::vector<StepTrace>& out) {
  switch (q.kind()) {
    case Query::Kind::True:
    case Query::Kind::False:
    case Query::Kind::Atom:
      return;
    case Query::Kind::Eq: {
      const Term& l = q.lhs();
      const Term& r = q.rhs();
      if (l.is_app() && r.is_app()) {
        if (l.name() == r.name() && l.args().size() == r.args().size())
          out.push_back({1, root, rebuild(decompose_eq(l, r))});
        else
          out.push_back({2, root, rebuild(Query::falsity())});
      } else if (l.is_var() && l != r && r.contains_var(l.name())) {
        out.push_back({3, root, rebuild(Query::falsity())});
      } else if (l.is_var() && r.is_var() && l.name() == r.name()) {
        out.push_back({4, root, rebuild(Query::truth())});
      }
      // Rules 5-7 are generated at the enclosing region, not here.
      return;
    }
    case Query::Kind::And: {
      std::vector<Query> items = flatten_conj(q);

      // Rules (5)/(6)/(7) for a bare region (no quantifier chain above).
      if (!at_chain_body && region_all_eq_atom(items))
        elimination_steps({}, items, rebuild, root, out);

      // Rule (10): adjacent atom-equation pairs swap.
      for (std::size_t i = 0; i + 1 < items.size(); ++i) {
        if (items[i].is(Query::Kind::Atom) &&
            items[i + 1].is(Query::Kind::Eq)) {
          std::vector<Query> next = items;
          std::swap(next[i], next[i + 1]);
          out.push_back({10, root, rebuild(build_conj(next))});
        }
      }

      // Rule (11): delete a TRUE conjunct.
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].is(Query::Kind::True)) {
          std::vector<Query> next = items;
          next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
          out.push_back({11, root, rebuild(build_conj(next))});
        }
      }

      // Rule (9): merge a conjunct-level quantifier chain into the pair.
      for (std::size_t i = 0; i + 1 < items.size(); ++i) {
        const Query& a = items[i];
        const Query& b = items[i + 1];
        if (!a.is(Query::Kind::Exists) && !b.is(Query::Kind::Exists)) continue;
        auto [ya, qa] = peel_exists(a);
        auto [yb, qb] = peel_exists(b);
        std::set<std::string> taken;
        auto va = free_vars(a);
        auto vb = free_vars(b);
        taken.insert(va.begin(), va.end());
        taken.insert(vb.begin(), vb.end());
        std::map<std::string, Term> ra, rb;
        std::vector<std::string> za = rename_apart(ya, taken, ra);
        std::vector<std::string> zb = rename_apart(yb, taken, rb);
        Query na = ra.empty() ? qa : replace_free(qa, ra, AutoRename::On);
        Query nb = rb.empty() ? qb : replace_free(qb, rb, AutoRename::On);
        std::vector<std::string> prefix = za;
        prefix.insert(prefix.end(), zb.begin(), zb.end());
        std::vector<Query> next = items;
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
        next[i] = build_exists(prefix, Query::conj(na, nb));
        out.push_back({9, root, rebuild(build_conj(next))});
      }

      // Recurse into each conjunct.
      for (std::size_t i = 0; i < items.size(); ++i) {
        std::vector<Query> copy = items;
        Rebuild sub = [&, i](const Query& repl) {
          std::vector<Query> next = copy;
          next[i] = repl;
          return rebuild(build_conj(next));
        };
        steps_rec(items[i], sub, false, root, out);
      }
      return;
    }
    case Query::Kind::Exists: {
      auto [chain, matrix] = peel_exists(q);

      // Rule (8): drop a binder without free occurrences below it.
      for (std::size_t i = 0; i < chain.size(); ++i) {
        std::vector<std::string> rest(chain.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                      chain.end());
        Query below = build_exists(rest, matrix);
        if (!free_vars(below).count(chain[i])) {
          std::vector<std::string> next = chain;
          next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
          out.push_back({8, root, rebuild(build_exists(next, matrix))});
        }
      }

      // Rules (5)/(6)/(7) when the chain scopes a flat region.
      std::vector<Query> items = flatten_conj(matrix);
      if (region_all_eq_atom(items)) {
        auto chain_copy = chain;
        Rebuild wrap = [rebuild, chain_copy](const Query& m) {
          return rebuild(build_exists(chain_copy, m));
        };
        elimination_steps(chain, items, wrap, root, out);
      }

      // Recurse into the matrix (as the chain body: its own And-level
      // elimination instances are suppressed, the chain owns them).
      auto chain_copy = chain;
      Rebuild sub = [rebuild, chain_copy](const Query& m) {
        return rebuild(build_exists(chain_copy, m));
      };
      steps_rec(matrix, sub, true, root, out);
      return;
    }
  }
}

bool contains_false(const Query& q) {
  switch (q.kind()) {
    case Query::Kind::False:
      return true;
    case Query::Kind::True:
    case Query::Kind::Eq:
    case Query::Kind::Atom:
      return false;
    case Query::Kind::And:
      return contains_false(q.left()) || contains_false(q.right());
    case Query::Kind::Exists:
      return contains_false(q.body());
  }
  return false;
}

}  // namespace

std::vector<StepTrace> applicable_steps(const Query& q) {
  std::vector<StepTrace> out;
  // Rule (12): any occurrence of FALSE collapses the query.
  if (contains_false(q) && !q.is(Query::Kind::False))
    out.push_back({12, q, Query::falsity()});
  Rebuild identity = [](const Query& repl) { return repl; };
  // A bare equation is its own one-element region (rules 5-7).
  if (q.is(Query::Kind::Eq)) elimination_steps({}, {q}, identity, q, out);
  steps_rec(q, identity, false, q, out);
  return out;
}

}  // namespace eqlp
