#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eqlp/query.hpp"
#include "eqlp/term.hpp"

namespace eqlp {

// A query in solved form: TRUE, FALSE, or
//   (exists z1..zk)(x1 = s1 /\ ... /\ xn = sn /\ A1 /\ ... /\ Am)
// where the x_i and z_j are pairwise distinct, no x_i occurs in any
// right-hand side or atom, every z_j occurs in the matrix, and no s_i is
// itself one of the z_j.
class SolvedForm {
 public:
  enum class Kind { True, False, Shape };

  SolvedForm() : kind_(Kind::True) {}

  static SolvedForm truth() { return SolvedForm(); }
  static SolvedForm falsity() {
    SolvedForm s;
    s.kind_ = Kind::False;
    return s;
  }
  // Validates the solved-form conditions; throws std::invalid_argument.
  static SolvedForm shape(std::vector<std::string> bound,
                          std::vector<std::pair<std::string, Term>> bindings,
                          std::vector<Atom> atoms);

  Kind kind() const { return kind_; }
  bool is_true() const { return kind_ == Kind::True; }
  bool is_false() const { return kind_ == Kind::False; }

  const std::vector<std::string>& bound() const { return bound_; }
  const std::vector<std::pair<std::string, Term>>& bindings() const {
    return bindings_;
  }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool atom_free() const { return atoms_.empty(); }

  Query to_query() const;  // right-nested conjunction, equations then atoms
  std::set<std::string> free_vars() const;

  bool operator==(const SolvedForm& other) const;
  bool operator!=(const SolvedForm& other) const { return !(*this == other); }

 private:
  Kind kind_;
  std::vector<std::string> bound_;
  std::vector<std::pair<std::string, Term>> bindings_;
  std::vector<Atom> atoms_;
};

// Eliminable variables (binding left-hand sides), parameters (remaining free
// variables) and existentially bound variables. All empty for TRUE and FALSE.
struct VarPartition {
  std::set<std::string> elim;
  std::set<std::string> param;
  std::set<std::string> bound;
};

VarPartition var_partition(const SolvedForm& sf);

// Free variables of a solved form; the kernel of the EQ-formula it solves.
// Throws InconsistentAnswer for FALSE.
std::set<std::string> kernel_of(const SolvedForm& sf);

// Syntactic check of the solved-form conditions on a query. Conjunction is
// read flattened; equations must precede atoms.
bool is_solved_form(const Query& q);

// Equality up to binding order and bound-variable naming: bindings sorted by
// eliminable variable, bound variables renumbered in order of occurrence in
// the sorted matrix. Quantifier permutations are identified, which is sound
// here because adjacent existentials commute.
SolvedForm canonical_solved_form(const SolvedForm& sf);
bool variant_equal(const SolvedForm& a, const SolvedForm& b);

}  // namespace eqlp
