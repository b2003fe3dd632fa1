#include "eqlp/term.hpp"

#include <algorithm>

namespace eqlp {

Term Term::var(std::string name) {
  auto rep = std::make_shared<Rep>();
  rep->is_var = true;
  rep->head = std::move(name);
  return Term(std::move(rep));
}

Term Term::app(std::string functor, std::vector<Term> args) {
  auto rep = std::make_shared<Rep>();
  rep->is_var = false;
  rep->head = std::move(functor);
  rep->args = std::move(args);
  return Term(std::move(rep));
}

std::size_t Term::depth() const {
  if (rep_->args.empty()) return 0;
  std::size_t d = 0;
  for (const Term& a : rep_->args) d = std::max(d, a.depth());
  return d + 1;
}

bool Term::is_ground() const {
  if (is_var()) return false;
  for (const Term& a : rep_->args)
    if (!a.is_ground()) return false;
  return true;
}

bool Term::contains_var(const std::string& v) const {
  if (is_var()) return rep_->head == v;
  for (const Term& a : rep_->args)
    if (a.contains_var(v)) return true;
  return false;
}

void Term::collect_vars(std::set<std::string>& out) const {
  if (is_var()) {
    out.insert(rep_->head);
    return;
  }
  for (const Term& a : rep_->args) a.collect_vars(out);
}

std::set<std::string> Term::vars() const {
  std::set<std::string> out;
  collect_vars(out);
  return out;
}

Term Term::replace(const std::map<std::string, Term>& bindings) const {
  if (is_var()) {
    auto it = bindings.find(rep_->head);
    return it == bindings.end() ? *this : it->second;
  }
  if (rep_->args.empty()) return *this;
  bool changed = false;
  std::vector<Term> args;
  args.reserve(rep_->args.size());
  for (const Term& a : rep_->args) {
    args.push_back(a.replace(bindings));
    if (args.back() != a) changed = true;
  }
  return changed ? app(rep_->head, std::move(args)) : *this;
}

bool Term::operator==(const Term& other) const {
  if (rep_ == other.rep_) return true;
  if (rep_->is_var != other.rep_->is_var || rep_->head != other.rep_->head)
    return false;
  if (rep_->args.size() != other.rep_->args.size()) return false;
  for (std::size_t i = 0; i < rep_->args.size(); ++i)
    if (!(rep_->args[i] == other.rep_->args[i])) return false;
  return true;
}

bool Term::operator<(const Term& other) const {
  if (rep_ == other.rep_) return false;
  if (rep_->is_var != other.rep_->is_var) return rep_->is_var;
  if (rep_->head != other.rep_->head) return rep_->head < other.rep_->head;
  return std::lexicographical_compare(rep_->args.begin(), rep_->args.end(),
                                      other.rep_->args.begin(),
                                      other.rep_->args.end());
}

void Atom::collect_vars(std::set<std::string>& out) const {
  for (const Term& a : args) a.collect_vars(out);
}

std::set<std::string> Atom::vars() const {
  std::set<std::string> out;
  collect_vars(out);
  return out;
}

Atom Atom::replace(const std::map<std::string, Term>& bindings) const {
  Atom out;
  out.predicate = predicate;
  out.args.reserve(args.size());
  for (const Term& a : args) out.args.push_back(a.replace(bindings));
  return out;
}

bool Atom::is_ground() const {
  for (const Term& a : args)
    if (!a.is_ground()) return false;
  return true;
}

bool Atom::operator==(const Atom& other) const {
  return predicate == other.predicate && args == other.args;
}

bool Atom::operator<(const Atom& other) const {
  if (predicate != other.predicate) return predicate < other.predicate;
  return std::lexicographical_compare(args.begin(), args.end(),
                                      other.args.begin(), other.args.end());
}

}  // namespace eqlp
