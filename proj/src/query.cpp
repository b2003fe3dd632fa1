#include "eqlp/query.hpp"

#include <algorithm>

#include "eqlp/errors.hpp"

namespace eqlp {

Query Query::truth() {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::True;
  return Query(std::move(rep));
}

Query Query::falsity() {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::False;
  return Query(std::move(rep));
}

Query Query::eq(Term lhs, Term rhs) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Eq;
  rep->lhs = std::move(lhs);
  rep->rhs = std::move(rhs);
  return Query(std::move(rep));
}

Query Query::atom(Atom a) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Atom;
  rep->atom = std::move(a);
  return Query(std::move(rep));
}

Query Query::conj(Query left, Query right) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::And;
  rep->left = std::make_shared<Query>(std::move(left));
  rep->right = std::make_shared<Query>(std::move(right));
  return Query(std::move(rep));
}

Query Query::exists(std::string var, Query body) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Exists;
  rep->var = std::move(var);
  rep->left = std::make_shared<Query>(std::move(body));
  return Query(std::move(rep));
}

bool Query::operator==(const Query& other) const {
  if (rep_ == other.rep_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Eq:
      return lhs() == other.lhs() && rhs() == other.rhs();
    case Kind::Atom:
      return atom_ref() == other.atom_ref();
    case Kind::And:
      return left() == other.left() && right() == other.right();
    case Kind::Exists:
      return var() == other.var() && body() == other.body();
  }
  return false;
}

void collect_free_vars(const Query& q, std::set<std::string>& out) {
  switch (q.kind()) {
    case Query::Kind::True:
    case Query::Kind::False:
      return;
    case Query::Kind::Eq:
      q.lhs().collect_vars(out);
      q.rhs().collect_vars(out);
      return;
    case Query::Kind::Atom:
      q.atom_ref().collect_vars(out);
      return;
    case Query::Kind::And:
      collect_free_vars(q.left(), out);
      collect_free_vars(q.right(), out);
      return;
    case Query::Kind::Exists: {
      std::set<std::string> inner;
      collect_free_vars(q.body(), inner);
      inner.erase(q.var());
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

std::set<std::string> free_vars(const Query& q) {
  std::set<std::string> out;
  collect_free_vars(q, out);
  return out;
}

std::set<std::string> all_vars(const Query& q) {
  std::set<std::string> out;
  switch (q.kind()) {
    case Query::Kind::True:
    case Query::Kind::False:
      break;
    case Query::Kind::Eq:
      q.lhs().collect_vars(out);
      q.rhs().collect_vars(out);
      break;
    case Query::Kind::Atom:
      q.atom_ref().collect_vars(out);
      break;
    case Query::Kind::And: {
      auto l = all_vars(q.left());
      auto r = all_vars(q.right());
      out.insert(l.begin(), l.end());
      out.insert(r.begin(), r.end());
      break;
    }
    case Query::Kind::Exists: {
      out = all_vars(q.body());
      out.insert(q.var());
      break;
    }
  }
  return out;
}

std::size_t atom_count(const Query& q) {
  switch (q.kind()) {
    case Query::Kind::True:
    case Query::Kind::False:
    case Query::Kind::Eq:
      return 0;
    case Query::Kind::Atom:
      return 1;
    case Query::Kind::And:
      return atom_count(q.left()) + atom_count(q.right());
    case Query::Kind::Exists:
      return atom_count(q.body());
  }
  return 0;
}

namespace {

// Smallest "name<k>" (k >= 1) avoiding the given set.
std::string suffixed_fresh(const std::string& base,
                           const std::set<std::string>& avoid) {
  for (std::size_t k = 1;; ++k) {
    std::string cand = base + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

Query replace_free_rec(const Query& q,
                       const std::map<std::string, Term>& bindings,
                       AutoRename mode) {
  switch (q.kind()) {
    case Query::Kind::True:
    case Query::Kind::False:
      return q;
    case Query::Kind::Eq:
      return Query::eq(q.lhs().replace(bindings), q.rhs().replace(bindings));
    case Query::Kind::Atom:
      return Query::atom(q.atom_ref().replace(bindings));
    case Query::Kind::And:
      return Query::conj(replace_free_rec(q.left(), bindings, mode),
                         replace_free_rec(q.right(), bindings, mode));
    case Query::Kind::Exists: {
      const std::string& v = q.var();
      std::map<std::string, Term> inner = bindings;
      inner.erase(v);
      if (inner.empty()) return q;

      // The binder captures a replacement iff some replaced variable occurs
      // free in the body and its replacement term mentions the binder name.
      std::set<std::string> body_free;
      collect_free_vars(q.body(), body_free);
      bool captures = false;
      for (const auto& [x, t] : inner) {
        if (body_free.count(x) && t.contains_var(v)) {
          captures = true;
          break;
        }
      }
      if (!captures) return Query::exists(v, replace_free_rec(q.body(), inner, mode));
      if (mode == AutoRename::Off)
        throw CaptureError("replacement for a variable free under 'exists " +
                           v + "' is not substitutible");

      std::set<std::string> avoid = all_vars(q.body());
      for (const auto& [x, t] : inner) {
        avoid.insert(x);
        t.collect_vars(avoid);
      }
      std::string v2 = suffixed_fresh(v, avoid);
      Query renamed_body =
          replace_free_rec(q.body(), {{v, Term::var(v2)}}, AutoRename::Off);
      return Query::exists(v2, replace_free_rec(renamed_body, inner, mode));
    }
  }
  return q;
}

}  // namespace

Query replace_free(const Query& q, const std::map<std::string, Term>& bindings,
                   AutoRename mode) {
  if (bindings.empty()) return q;
  return replace_free_rec(q, bindings, mode);
}

namespace {

Query renumber_rec(const Query& q, std::map<std::string, Term>& env,
                   std::size_t& next) {
  switch (q.kind()) {
    case Query::Kind::True:
    case Query::Kind::False:
      return q;
    case Query::Kind::Eq:
      return Query::eq(q.lhs().replace(env), q.rhs().replace(env));
    case Query::Kind::Atom:
      return Query::atom(q.atom_ref().replace(env));
    case Query::Kind::And: {
      Query l = renumber_rec(q.left(), env, next);
      Query r = renumber_rec(q.right(), env, next);
      return Query::conj(std::move(l), std::move(r));
    }
    case Query::Kind::Exists: {
      std::string canon = "%b" + std::to_string(++next);
      auto it = env.find(q.var());
      std::optional<Term> saved;
      if (it != env.end()) saved = it->second;
      env[q.var()] = Term::var(canon);
      Query b = renumber_rec(q.body(), env, next);
      if (saved)
        env[q.var()] = *saved;
      else
        env.erase(q.var());
      return Query::exists(canon, std::move(b));
    }
  }
  return q;
}

}  // namespace

Query canonical_bound_renumber(const Query& q) {
  std::map<std::string, Term> env;
  std::size_t next = 0;
  return renumber_rec(q, env, next);
}

bool is_variant(const Query& q1, const Query& q2) {
  return canonical_bound_renumber(q1) == canonical_bound_renumber(q2);
}

void flatten_conj(const Query& q, std::vector<Query>& out) {
  if (q.is(Query::Kind::And)) {
    flatten_conj(q.left(), out);
    flatten_conj(q.right(), out);
  } else {
    out.push_back(q);
  }
}

std::vector<Query> flatten_conj(const Query& q) {
  std::vector<Query> out;
  flatten_conj(q, out);
  return out;
}

Query build_conj(const std::vector<Query>& items) {
  if (items.empty()) return Query::truth();
  Query acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;)
    acc = Query::conj(items[i], acc);
  return acc;
}

std::pair<std::vector<std::string>, Query> peel_exists(const Query& q) {
  std::vector<std::string> prefix;
  Query cur = q;
  while (cur.is(Query::Kind::Exists)) {
    prefix.push_back(cur.var());
    cur = cur.body();
  }
  return {std::move(prefix), std::move(cur)};
}

Query build_exists(const std::vector<std::string>& prefix, Query body) {
  Query acc = std::move(body);
  for (std::size_t i = prefix.size(); i-- > 0;)
    acc = Query::exists(prefix[i], std::move(acc));
  return acc;
}

bool Alphabet::declare_functor(const std::string& name, std::size_t arity) {
  auto [it, inserted] = functors.emplace(name, arity);
  return inserted || it->second == arity;
}

bool Alphabet::declare_predicate(const std::string& name, std::size_t arity) {
  auto [it, inserted] = predicates.emplace(name, arity);
  return inserted || it->second == arity;
}

bool Alphabet::has_constant() const {
  for (const auto& [name, arity] : functors)
    if (arity == 0) return true;
  return false;
}

void Alphabet::merge(const Alphabet& other) {
  for (const auto& [name, arity] : other.functors)
    if (!declare_functor(name, arity))
      throw NotApplicable("functor arity conflict for '" + name + "'");
  for (const auto& [name, arity] : other.predicates)
    if (!declare_predicate(name, arity))
      throw NotApplicable("predicate arity conflict for '" + name + "'");
}

namespace {

void first_occurrence_vars(const Term& t, std::vector<std::string>& order,
                           std::set<std::string>& seen) {
  if (t.is_var()) {
    if (seen.insert(t.name()).second) order.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) first_occurrence_vars(a, order, seen);
}

void first_occurrence_free(const Query& q, std::vector<std::string>& order,
                           std::set<std::string>& seen,
                           std::set<std::string>& shadowed) {
  switch (q.kind()) {
    case Query::Kind::True:
    case Query::Kind::False:
      return;
    case Query::Kind::Eq: {
      std::vector<std::string> local;
      std::set<std::string> lseen;
      first_occurrence_vars(q.lhs(), local, lseen);
      first_occurrence_vars(q.rhs(), local, lseen);
      for (const auto& v : local)
        if (!shadowed.count(v) && seen.insert(v).second) order.push_back(v);
      return;
    }
    case Query::Kind::Atom: {
      std::vector<std::string> local;
      std::set<std::string> lseen;
      for (const Term& a : q.atom_ref().args)
        first_occurrence_vars(a, local, lseen);
      for (const auto& v : local)
        if (!shadowed.count(v) && seen.insert(v).second) order.push_back(v);
      return;
    }
    case Query::Kind::And:
      first_occurrence_free(q.left(), order, seen, shadowed);
      first_occurrence_free(q.right(), order, seen, shadowed);
      return;
    case Query::Kind::Exists: {
      bool added = shadowed.insert(q.var()).second;
      first_occurrence_free(q.body(), order, seen, shadowed);
      if (added) shadowed.erase(q.var());
      return;
    }
  }
}

}  // namespace

std::vector<std::string> clause_vars(const Clause& c) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const Term& a : c.head.args) first_occurrence_vars(a, order, seen);
  std::set<std::string> shadowed;
  first_occurrence_free(c.body, order, seen, shadowed);
  return order;
}

Clause rename_clause(const Clause& c, FreshSource& fresh) {
  std::map<std::string, Term> m;
  for (const std::string& v : clause_vars(c)) m.emplace(v, Term::var(fresh.fresh()));
  Clause out;
  out.head = c.head.replace(m);
  out.body = replace_free(c.body, m, AutoRename::On);
  return out;
}

}  // namespace eqlp
