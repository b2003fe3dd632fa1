#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqlp/query.hpp"
#include "eqlp/solved_form.hpp"
#include "eqlp/term.hpp"

namespace eqlp {

// All ground terms of the alphabet up to a depth bound. Quantifiers and
// valuations range over these terms: the bounded approximation of the
// Herbrand semantics that the oracle works in. Exact when the alphabet is
// function-free (the Datalog regime).
struct UniverseBound {
  std::size_t max_term_depth = 0;
  std::vector<Term> terms;       // enumeration order: by depth, then term order
  std::set<Term> term_set;       // same contents, for membership tests
  std::vector<std::size_t> depth_prefix;  // #terms of depth <= d, d = 0..max

  bool contains(const Term& t) const { return term_set.count(t) > 0; }

  // Number of terms with depth at most d (the terms vector's prefix).
  std::size_t count_up_to(std::size_t d) const {
    if (depth_prefix.empty()) return terms.size();
    return depth_prefix[std::min(d, depth_prefix.size() - 1)];
  }
};

// Throws EmptyAlphabet when no constant is declared.
UniverseBound enumerate_universe(const Alphabet& alphabet, std::size_t depth);

// A Herbrand interpretation: a finite set of ground atoms.
using GroundAtomSet = std::set<Atom>;

// The immediate consequence operator, bounded: clause variables and body
// existentials range over the universe; derived heads outside the universe
// are dropped (nothing is lost when the alphabet is function-free).
GroundAtomSet tp_step(const Program& program, const GroundAtomSet& i,
                      const UniverseBound& u);

// n-fold iteration from the empty interpretation.
GroundAtomSet tp_power(const Program& program, std::size_t n,
                       const UniverseBound& u);

// True when every functor in sight is a constant, making the bounded
// semantics exact.
bool is_datalog(const Program& program);
bool is_datalog(const Program& program, const Query& q, const SolvedForm& e);

struct OracleVerdict {
  enum class Status { HoldsAt, Refuted, Inconclusive };
  Status status = Status::Inconclusive;
  std::size_t n = 0;                   // least power for HoldsAt
  std::map<std::string, Term> witness;  // for Refuted
  std::size_t bound = 0;               // for Inconclusive
  std::string to_string() const;
};

// Lazily computed powers of the consequence operator, shared between
// repeated answer checks over the same program and universe.
class TpPowerCache {
 public:
  TpPowerCache(const Program& program, const UniverseBound& u)
      : program_(&program), u_(&u) {}

  // The n-th power; powers beyond stabilization alias the fixpoint.
  const GroundAtomSet& power(std::size_t n);
  bool stabilized_by(std::size_t n);
  std::size_t stable_at() const { return stable_at_; }

 private:
  const Program* program_;
  const UniverseBound* u_;
  std::vector<GroundAtomSet> powers_{GroundAtomSet{}};
  bool stabilized_ = false;
  std::size_t stable_at_ = 0;
};

// Bounded semi-decision of "every solution of e satisfies q in some finite
// power of the consequence operator". Free variables of e and q range over
// the universe. holds_at(n) carries the least n; refuted is only reported
// in the exact (Datalog) regime after the fixpoint stabilizes; everything
// else is inconclusive. Requires e consistent and atom-free.
OracleVerdict check_correct_answer(const Program& program, const SolvedForm& e,
                                   const Query& q, const UniverseBound& u,
                                   std::size_t max_n,
                                   TpPowerCache* cache = nullptr);

// All ground valuations of the query's free variables satisfying it in the
// bounded fixpoint. Exact for Datalog programs.
std::set<std::map<std::string, Term>> enumerate_ground_answers(
    const Program& program, const Query& q, const UniverseBound& u,
    std::size_t max_n);

// Bounded truth of a query under a valuation covering its free variables.
bool eval_query(const Query& q, const std::map<std::string, Term>& h,
                const GroundAtomSet& i, const UniverseBound& u);

// The universe-valuations satisfying an atom-free solved form, restricted
// to its free variables. Exact for valuations into the universe.
std::set<std::map<std::string, Term>> solutions_of(const SolvedForm& e,
                                                   const UniverseBound& u);

}  // namespace eqlp
