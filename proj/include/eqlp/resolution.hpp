#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "eqlp/query.hpp"
#include "eqlp/solved_form.hpp"
#include "eqlp/solver.hpp"
#include "eqlp/subst.hpp"

namespace eqlp {

// A computation method pairs a selection rule with the deterministic
// rewriting rule (normalize). Selection depends only on the atom count and
// the derivation depth, so variant queries select corresponding positions.
enum class SelectionKind { Leftmost, AllAtoms, SeededRandom };

struct ComputationMethod {
  SelectionKind selection = SelectionKind::Leftmost;
  std::uint64_t seed = 0;
};

// Atom positions in left-to-right traversal order; nonempty for any
// nonempty query.
std::vector<std::size_t> select_positions(const ComputationMethod& cm,
                                          const Query& q, std::size_t depth);

// Replaces the selected atom by the existentially closed conjunction of the
// head-argument equations and the clause body, the clause renamed apart with
// fresh variables.
Query atomic_reduction(const Atom& a, const Clause& c, FreshSource& fresh);

// Simultaneously replaces each selected atom by its atomic reduction with
// the clause at the same index. Positions must be valid, distinct atom
// positions.
Query reduction(const Query& q, const std::vector<std::size_t>& positions,
                const std::vector<Clause>& clauses, FreshSource& fresh);

// Indices of program clauses whose head predicate matches.
std::vector<std::size_t> clause_candidates(const Program& program,
                                           const Atom& a);

// Reduction followed by normalization. clause_choice[i] indexes the program
// clause used for the i-th selected atom.
SolvedForm resolvent(const Query& q, const ComputationMethod& cm,
                     const Program& program,
                     const std::vector<std::size_t>& clause_choice,
                     FreshSource& fresh, std::size_t depth);

// A consistent atom-free computed answer with its substitution view.
struct Answer {
  SolvedForm eq_formula;
  Substitution as_substitution;
  std::set<std::string> query_vars;
};

struct DerivationNode {
  Query query;
  std::size_t depth = 0;
  std::vector<std::size_t> clause_choices;  // used to reach this node
  std::optional<std::vector<StepTrace>> trace;
};

struct Derivation {
  std::vector<DerivationNode> nodes;
};

enum class OutcomeKind { Refutation, Failed, DepthExhausted, Running };

struct DerivationOutcome {
  OutcomeKind kind = OutcomeKind::Running;
  std::optional<SolvedForm> answer;  // consistent EQ-formula on refutation
};

// Classifies the endpoint of a derivation: a refutation carries its answer;
// failed when the last query is FALSE or a nonempty query with no resolvent;
// running otherwise (depth_exhausted when at the given bound).
DerivationOutcome outcome_of(const Program& program, const Derivation& d,
                             const ComputationMethod& cm,
                             std::size_t max_depth);

struct DeriveLimits {
  std::size_t max_depth = 64;
  std::size_t max_answers = 10;
};

struct DeriveStats {
  std::size_t failed_branches = 0;        // FALSE resolvents
  std::size_t no_resolvent_branches = 0;  // no clause for a selected atom
  bool depth_exhausted = false;
};

struct DeriveResult {
  std::vector<Answer> answers;
  std::vector<Derivation> refutations;  // one per answer, same order
  DeriveStats stats;
};

// Invoked on every expansion edge (parent, child) the search visits.
using EdgeHook =
    std::function<void(const DerivationNode&, const DerivationNode&)>;

// Fair enumeration of refutations: iterative deepening on derivation depth,
// clause combinations tried in source order. Answers are emitted at the
// iteration matching their exact refutation length, so each refutation is
// reported once and in a deterministic order.
DeriveResult derive(const Program& program, const Query& q,
                    const ComputationMethod& cm, const DeriveLimits& limits,
                    FreshSource& fresh, const EdgeHook& hook = nullptr);

// Consistent conjunction of two answers; nullopt when inconsistent.
std::optional<Answer> parallel_compose(const Answer& a1, const Answer& a2);

// Concatenation of a derivation ending at q with one starting at q; the
// join queries must be structurally equal. Throws JoinMismatch.
Derivation derivation_concat(const Derivation& prefix,
                             const Derivation& suffix);

// Replays each step and checks the recorded resolvent is a variant of the
// recomputed one.
bool validate_derivation(const Program& program, const ComputationMethod& cm,
                         const Derivation& d);

}  // namespace eqlp
