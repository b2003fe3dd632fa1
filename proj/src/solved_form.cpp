#include "eqlp/solved_form.hpp"

#include <algorithm>
#include <stdexcept>

#include "eqlp/errors.hpp"

namespace eqlp {

namespace {

void check_shape(const std::vector<std::string>& bound,
                 const std::vector<std::pair<std::string, Term>>& bindings,
                 const std::vector<Atom>& atoms) {
  std::set<std::string> elim, bnd;
  for (const auto& [x, s] : bindings)
    if (!elim.insert(x).second)
      throw std::invalid_argument("solved form: duplicate eliminable '" + x + "'");
  for (const auto& z : bound) {
    if (!bnd.insert(z).second)
      throw std::invalid_argument("solved form: duplicate bound '" + z + "'");
    if (elim.count(z))
      throw std::invalid_argument("solved form: '" + z + "' both bound and eliminable");
  }
  // (ii): eliminables occur in no right-hand side and no atom.
  for (const auto& [x, s] : bindings) {
    for (const auto& [y, t] : bindings)
      if (t.contains_var(x))
        throw std::invalid_argument("solved form: eliminable '" + x +
                                    "' occurs in a right-hand side");
    for (const Atom& a : atoms)
      for (const Term& t : a.args)
        if (t.contains_var(x))
          throw std::invalid_argument("solved form: eliminable '" + x +
                                      "' occurs in an atom");
  }
  // (iii): every bound variable occurs in the matrix.
  for (const auto& z : bound) {
    bool occurs = false;
    for (const auto& [x, s] : bindings)
      if (s.contains_var(z)) occurs = true;
    for (const Atom& a : atoms)
      for (const Term& t : a.args)
        if (t.contains_var(z)) occurs = true;
    if (!occurs)
      throw std::invalid_argument("solved form: bound '" + z + "' has no occurrence");
  }
  // (iv): no right-hand side is exactly a bound variable.
  for (const auto& [x, s] : bindings)
    if (s.is_var() && bnd.count(s.name()))
      throw std::invalid_argument("solved form: binding of '" + x +
                                  "' to bound variable");
  if (bindings.empty() && atoms.empty())
    throw std::invalid_argument("solved form: empty shape (use TRUE)");
}

}  // namespace

SolvedForm SolvedForm::shape(std::vector<std::string> bound,
                             std::vector<std::pair<std::string, Term>> bindings,
                             std::vector<Atom> atoms) {
  check_shape(bound, bindings, atoms);
  SolvedForm s;
  s.kind_ = Kind::Shape;
  s.bound_ = std::move(bound);
  s.bindings_ = std::move(bindings);
  s.atoms_ = std::move(atoms);
  return s;
}

Query SolvedForm::to_query() const {
  switch (kind_) {
    case Kind::True:
      return Query::truth();
    case Kind::False:
      return Query::falsity();
    case Kind::Shape:
      break;
  }
  std::vector<Query> items;
  items.reserve(bindings_.size() + atoms_.size());
  for (const auto& [x, s] : bindings_)
    items.push_back(Query::eq(Term::var(x), s));
  for (const Atom& a : atoms_) items.push_back(Query::atom(a));
  return build_exists(bound_, build_conj(items));
}

std::set<std::string> SolvedForm::free_vars() const {
  std::set<std::string> out;
  if (kind_ != Kind::Shape) return out;
  for (const auto& [x, s] : bindings_) {
    out.insert(x);
    s.collect_vars(out);
  }
  for (const Atom& a : atoms_) a.collect_vars(out);
  for (const auto& z : bound_) out.erase(z);
  return out;
}

bool SolvedForm::operator==(const SolvedForm& other) const {
  return kind_ == other.kind_ && bound_ == other.bound_ &&
         bindings_ == other.bindings_ && atoms_ == other.atoms_;
}

VarPartition var_partition(const SolvedForm& sf) {
  VarPartition p;
  if (sf.kind() != SolvedForm::Kind::Shape) return p;
  for (const auto& [x, s] : sf.bindings()) p.elim.insert(x);
  for (const auto& v : sf.free_vars())
    if (!p.elim.count(v)) p.param.insert(v);
  p.bound.insert(sf.bound().begin(), sf.bound().end());
  return p;
}

std::set<std::string> kernel_of(const SolvedForm& sf) {
  if (sf.is_false())
    throw InconsistentAnswer("kernel of an inconsistent answer");
  return sf.free_vars();
}

bool is_solved_form(const Query& q) {
  if (q.is(Query::Kind::True) || q.is(Query::Kind::False)) return true;
  auto [prefix, matrix] = peel_exists(q);
  std::vector<Query> items = flatten_conj(matrix);

  std::vector<std::pair<std::string, Term>> bindings;
  std::vector<Atom> atoms;
  bool seen_atom = false;
  for (const Query& it : items) {
    if (it.is(Query::Kind::Eq)) {
      if (seen_atom) return false;  // equations must precede atoms
      if (!it.lhs().is_var()) return false;
      bindings.emplace_back(it.lhs().name(), it.rhs());
    } else if (it.is(Query::Kind::Atom)) {
      seen_atom = true;
      atoms.push_back(it.atom_ref());
    } else {
      return false;  // nested quantifier or TRUE/FALSE in the matrix
    }
  }
  try {
    check_shape(prefix, bindings, atoms);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

SolvedForm canonical_solved_form(const SolvedForm& sf) {
  if (sf.kind() != SolvedForm::Kind::Shape) return sf;
  auto bindings = sf.bindings();
  std::sort(bindings.begin(), bindings.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::set<std::string> bound_set(sf.bound().begin(), sf.bound().end());
  std::map<std::string, Term> renaming;
  std::vector<std::string> new_bound;
  auto visit = [&](const Term& t, auto&& self) -> void {
    if (t.is_var()) {
      const std::string& v = t.name();
      if (bound_set.count(v) && !renaming.count(v)) {
        std::string canon = "%c" + std::to_string(renaming.size() + 1);
        renaming.emplace(v, Term::var(canon));
        new_bound.push_back(canon);
      }
      return;
    }
    for (const Term& a : t.args()) self(a, self);
  };
  for (const auto& [x, s] : bindings) visit(s, visit);
  for (const Atom& a : sf.atoms())
    for (const Term& t : a.args) visit(t, visit);

  std::vector<std::pair<std::string, Term>> new_bindings;
  new_bindings.reserve(bindings.size());
  for (const auto& [x, s] : bindings)
    new_bindings.emplace_back(x, s.replace(renaming));
  std::vector<Atom> new_atoms;
  new_atoms.reserve(sf.atoms().size());
  for (const Atom& a : sf.atoms()) new_atoms.push_back(a.replace(renaming));
  return SolvedForm::shape(std::move(new_bound), std::move(new_bindings),
                           std::move(new_atoms));
}

bool variant_equal(const SolvedForm& a, const SolvedForm& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() != SolvedForm::Kind::Shape) return true;
  return canonical_solved_form(a) == canonical_solved_form(b);
}

}  // namespace eqlp
