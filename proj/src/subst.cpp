#include "eqlp/subst.hpp"

#include <algorithm>
#include <stdexcept>

#include "eqlp/errors.hpp"
#include "eqlp/solver.hpp"

namespace eqlp {

Substitution Substitution::bottom() {
  Substitution s;
  s.bottom_ = true;
  return s;
}

Substitution Substitution::of(std::map<std::string, Term> bindings) {
  Substitution s;
  s.bindings_ = std::move(bindings);
  return s;
}

const std::map<std::string, Term>& Substitution::bindings() const {
  if (bottom_) throw NotApplicable("bottom substitution has no bindings");
  return bindings_;
}

std::set<std::string> Substitution::domain() const {
  std::set<std::string> out;
  for (const auto& [x, t] : bindings_) out.insert(x);
  return out;
}

std::set<std::string> Substitution::range_vars() const {
  std::set<std::string> out;
  for (const auto& [x, t] : bindings_) t.collect_vars(out);
  return out;
}

Term Substitution::apply(const Term& t) const {
  if (bottom_) throw NotApplicable("bottom substitution is not applicable");
  for (const std::string& v : t.vars())
    if (!bindings_.count(v))
      throw NotApplicable("variable '" + v + "' outside the domain");
  return t.replace(bindings_);
}

Atom Substitution::apply(const Atom& a) const {
  Atom out;
  out.predicate = a.predicate;
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(apply(t));
  return out;
}

Substitution Substitution::compose(const Substitution& then) const {
  if (bottom_ || then.bottom_) return bottom();
  for (const std::string& v : range_vars())
    if (!then.bindings_.count(v))
      throw NotApplicable("composition: range variable '" + v +
                          "' outside the second domain");
  std::map<std::string, Term> out;
  for (const auto& [x, t] : bindings_) out.emplace(x, then.apply(t));
  return of(std::move(out));
}

Substitution Substitution::restrict_to(const std::set<std::string>& xs) const {
  if (bottom_) throw NotApplicable("bottom substitution cannot be restricted");
  std::map<std::string, Term> out;
  for (const auto& [x, t] : bindings_)
    if (xs.count(x)) out.emplace(x, t);
  return of(std::move(out));
}

Substitution Substitution::regular_extension(const std::set<std::string>& xs,
                                             FreshSource& fresh) const {
  if (bottom_) throw NotApplicable("bottom substitution cannot be extended");
  for (const auto& [x, t] : bindings_)
    if (!xs.count(x))
      throw NotApplicable("regular extension target must contain the domain");
  std::map<std::string, Term> out = bindings_;
  std::set<std::string> range = range_vars();
  for (const std::string& x : xs) {
    if (out.count(x)) continue;
    std::string g = fresh.fresh();
    while (range.count(g)) g = fresh.fresh();
    out.emplace(x, Term::var(g));
  }
  return of(std::move(out));
}

bool Substitution::operator==(const Substitution& other) const {
  return bottom_ == other.bottom_ && bindings_ == other.bindings_;
}

namespace {

// One-sided simultaneous matching: finds tau with pattern * tau == target
// for every pair, where pattern variables are match variables and target
// variables are inert.
bool match_into(const Term& pattern, const Term& target,
                std::map<std::string, Term>& tau) {
  if (pattern.is_var()) {
    auto [it, inserted] = tau.emplace(pattern.name(), target);
    return inserted || it->second == target;
  }
  if (target.is_var()) return false;
  if (pattern.name() != target.name() ||
      pattern.args().size() != target.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.args()[i], target.args()[i], tau)) return false;
  return true;
}

// Decides t <= s in the generality preorder: some tau has s' tau == t' on
// regular extensions over the common domain.
bool instance_of(const Substitution& t, const Substitution& s) {
  std::set<std::string> common = s.domain();
  for (const std::string& x : t.domain()) common.insert(x);
  FreshSource ext_s(0), ext_t(500000000);  // disjoint internal ranges
  Substitution s2 = s.regular_extension(common, ext_s);
  Substitution t2 = t.regular_extension(common, ext_t);
  std::map<std::string, Term> tau;
  for (const std::string& x : common)
    if (!match_into(s2.bindings().at(x), t2.bindings().at(x), tau))
      return false;
  return true;
}

}  // namespace

SubstOrder compare(const Substitution& s, const Substitution& t) {
  if (s.is_bottom() && t.is_bottom()) return SubstOrder::Equivalent;
  if (s.is_bottom()) return SubstOrder::LessGeneral;
  if (t.is_bottom()) return SubstOrder::MoreGeneral;
  bool t_le_s = instance_of(t, s);  // t <= s: s more general
  bool s_le_t = instance_of(s, t);
  if (t_le_s && s_le_t) return SubstOrder::Equivalent;
  if (t_le_s) return SubstOrder::MoreGeneral;
  if (s_le_t) return SubstOrder::LessGeneral;
  return SubstOrder::Incomparable;
}

bool more_general_eq(const Substitution& s, const Substitution& t) {
  SubstOrder o = compare(s, t);
  return o == SubstOrder::MoreGeneral || o == SubstOrder::Equivalent;
}

std::set<std::string> kernel_of_subst(const Substitution& s) {
  if (s.is_bottom())
    throw NotApplicable("bottom substitution has no kernel");
  return kernel_of(to_eq_formula(s));
}

SolvedForm to_eq_formula(const Substitution& s) {
  if (s.is_bottom()) return SolvedForm::falsity();

  std::set<std::string> params;
  for (const auto& [x, t] : s.bindings())
    if (t.is_var() && t.name() == x) params.insert(x);

  std::vector<std::pair<std::string, Term>> bindings;
  for (const auto& [x, t] : s.bindings())
    if (!params.count(x)) bindings.emplace_back(x, t);
  if (bindings.empty()) return SolvedForm::truth();

  // Non-parameter range variables are quantified. A range variable sharing
  // its name with a non-identity domain variable names a different thing in
  // the mapping; it is renamed apart before quantification.
  std::set<std::string> dom = s.domain();
  std::set<std::string> taken = dom;
  for (const auto& [x, t] : bindings) t.collect_vars(taken);
  std::map<std::string, Term> renaming;
  for (const auto& [x, t] : bindings) {
    for (const std::string& v : t.vars()) {
      if (params.count(v) || renaming.count(v)) continue;
      if (dom.count(v)) {
        for (std::size_t k = 1;; ++k) {
          std::string cand = v + std::to_string(k);
          if (!taken.count(cand)) {
            taken.insert(cand);
            renaming.emplace(v, Term::var(cand));
            break;
          }
        }
      }
    }
  }

  std::vector<std::string> prefix;
  std::set<std::string> prefixed;
  std::vector<std::pair<std::string, Term>> out_bindings;
  for (const auto& [x, t] : bindings) {
    Term r = t.replace(renaming);
    for (const std::string& v : r.vars())
      if (!params.count(v) && prefixed.insert(v).second) prefix.push_back(v);
    out_bindings.emplace_back(x, r);
  }
  try {
    return SolvedForm::shape(prefix, out_bindings, {});
  } catch (const std::invalid_argument&) {
    // Degenerate substitutions (variable-to-variable cycles and the like)
    // produce a quantified system outside solved form; solve it.
    std::vector<Query> items;
    items.reserve(out_bindings.size());
    for (const auto& [x, t] : out_bindings)
      items.push_back(Query::eq(Term::var(x), t));
    return normalize(build_exists(prefix, build_conj(items)));
  }
}

Substitution from_solved_form(const SolvedForm& e, FreshSource& fresh) {
  if (!e.atom_free())
    throw std::invalid_argument("from_solved_form requires an atom-free form");
  if (e.is_false()) return Substitution::bottom();
  if (e.is_true()) return Substitution::empty();

  std::map<std::string, Term> renaming;
  for (const std::string& z : e.bound())
    renaming.emplace(z, Term::var(fresh.fresh()));

  std::map<std::string, Term> bindings;
  for (const auto& [x, t] : e.bindings()) bindings.emplace(x, t.replace(renaming));
  for (const std::string& y : var_partition(e).param)
    bindings.emplace(y, Term::var(y));
  return Substitution::of(std::move(bindings));
}

Substitution from_solved_form(const SolvedForm& e) {
  FreshSource local(700000000);  // internal range, disjoint from derivations
  return from_solved_form(e, local);
}

}  // namespace eqlp
