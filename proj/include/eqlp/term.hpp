#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace eqlp {

// First-order terms over a ranked alphabet. A term is either a variable or
// an application of a functor to argument terms (constants are 0-ary
// applications). Terms are immutable values sharing structure.
class Term {
 public:
  Term() : Term(var("_")) {}

  static Term var(std::string name);
  static Term app(std::string functor, std::vector<Term> args = {});

  bool is_var() const { return rep_->is_var; }
  bool is_app() const { return !rep_->is_var; }

  // Variable name or functor symbol.
  const std::string& name() const { return rep_->head; }
  const std::vector<Term>& args() const { return rep_->args; }

  // Constants and variables have depth 0; depth(f(ts)) = 1 + max depth(ts).
  std::size_t depth() const;
  bool is_ground() const;
  bool contains_var(const std::string& v) const;
  void collect_vars(std::set<std::string>& out) const;
  std::set<std::string> vars() const;

  // Simultaneous replacement of variables per the binding map.
  Term replace(const std::map<std::string, Term>& bindings) const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  bool operator<(const Term& other) const;  // structural, for ordered sets

 private:
  struct Rep {
    bool is_var;
    std::string head;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  void collect_vars(std::set<std::string>& out) const;
  std::set<std::string> vars() const;
  Atom replace(const std::map<std::string, Term>& bindings) const;
  bool is_ground() const;

  bool operator==(const Atom& other) const;
  bool operator!=(const Atom& other) const { return !(*this == other); }
  bool operator<(const Atom& other) const;
};

// Monotone source of generated variable names "_G0", "_G1", ...
// User identifiers may not start with "_G", so generated names never clash
// with parsed programs. One source is confined to a single derivation.
class FreshSource {
 public:
  explicit FreshSource(std::uint64_t start = 0) : next_(start) {}
  std::string fresh() { return "_G" + std::to_string(next_++); }
  std::uint64_t counter() const { return next_; }

 private:
  std::uint64_t next_;
};

inline bool is_reserved_name(const std::string& id) {
  return id.rfind("_G", 0) == 0;
}

}  // namespace eqlp
