#include "eqlp/resolution.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "eqlp/errors.hpp"

namespace eqlp {

namespace {

std::size_t count_atoms_upto(const Query& q) { return atom_count(q); }

}  // namespace

std::vector<std::size_t> select_positions(const ComputationMethod& cm,
                                          const Query& q, std::size_t depth) {
  std::size_t n = count_atoms_upto(q);
  if (n == 0) return {};
  switch (cm.selection) {
    case SelectionKind::Leftmost:
      return {0};
    case SelectionKind::AllAtoms: {
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      return all;
    }
    case SelectionKind::SeededRandom: {
      // Depends only on (seed, atom count, depth): variant-stable.
      std::mt19937_64 rng(cm.seed * 0x9E3779B97F4A7C15ull +
                          (static_cast<std::uint64_t>(n) << 32) + depth);
      std::size_t k = 1 + static_cast<std::size_t>(rng() % n);
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(all[i], all[j]);
      }
      all.resize(k);
      std::sort(all.begin(), all.end());
      return all;
    }
  }
  return {0};
}

Query atomic_reduction(const Atom& a, const Clause& c, FreshSource& fresh) {
  if (a.predicate != c.head.predicate ||
      a.args.size() != c.head.args.size())
    throw PredicateMismatch("clause head '" + c.head.predicate +
                            "' does not match atom '" + a.predicate + "'");
  Clause renamed = rename_clause(c, fresh);
  std::vector<std::string> prefix = clause_vars(renamed);

  std::vector<Query> items;
  items.reserve(a.args.size() + 1);
  for (std::size_t i = 0; i < a.args.size(); ++i)
    items.push_back(Query::eq(a.args[i], renamed.head.args[i]));
  items.push_back(renamed.body);
  return build_exists(prefix, build_conj(items));
}

namespace {

Query replace_atoms_rec(const Query& q, std::size_t& next_pos,
                        const std::map<std::size_t, Query>& replacements) {
  switch (q.kind()) {
    case Query::Kind::True:
    case Query::Kind::False:
    case Query::Kind::Eq:
      return q;
    case Query::Kind::Atom: {
      std::size_t pos = next_pos++;
      auto it = replacements.find(pos);
      return it == replacements.end() ? q : it->second;
    }
    case Query::Kind::And: {
      Query l = replace_atoms_rec(q.left(), next_pos, replacements);
      Query r = replace_atoms_rec(q.right(), next_pos, replacements);
      return Query::conj(std::move(l), std::move(r));
    }
    case Query::Kind::Exists: {
      Query b = replace_atoms_rec(q.body(), next_pos, replacements);
      return Query::exists(q.var(), std::move(b));
    }
  }
  return q;
}

void collect_atoms(const Query& q, std::vector<Atom>& out) {
  switch (q.kind()) {
    case Query::Kind::True:
    case Query::Kind::False:
    case Query::Kind::Eq:
      return;
    case Query::Kind::Atom:
      out.push_back(q.atom_ref());
      return;
    case Query::Kind::And:
      collect_atoms(q.left(), out);
      collect_atoms(q.right(), out);
      return;
    case Query::Kind::Exists:
      collect_atoms(q.body(), out);
      return;
  }
}

}  // namespace

Query reduction(const Query& q, const std::vector<std::size_t>& positions,
                const std::vector<Clause>& clauses, FreshSource& fresh) {
  if (positions.size() != clauses.size())
    throw std::invalid_argument("reduction: one clause per position");
  std::vector<Atom> atoms;
  collect_atoms(q, atoms);
  std::map<std::size_t, Query> replacements;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    std::size_t pos = positions[i];
    if (pos >= atoms.size())
      throw std::invalid_argument("reduction: position out of range");
    if (replacements.count(pos))
      throw std::invalid_argument("reduction: duplicate position");
    replacements.emplace(pos, atomic_reduction(atoms[pos], clauses[i], fresh));
  }
  std::size_t next = 0;
  return replace_atoms_rec(q, next, replacements);
}

std::vector<std::size_t> clause_candidates(const Program& program,
                                           const Atom& a) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < program.clauses.size(); ++i) {
    const Clause& c = program.clauses[i];
    if (c.head.predicate == a.predicate &&
        c.head.args.size() == a.args.size())
      out.push_back(i);
  }
  return out;
}

SolvedForm resolvent(const Query& q, const ComputationMethod& cm,
                     const Program& program,
                     const std::vector<std::size_t>& clause_choice,
                     FreshSource& fresh, std::size_t depth) {
  std::vector<std::size_t> positions = select_positions(cm, q, depth);
  if (positions.empty())
    throw std::invalid_argument("resolvent of an empty query");
  if (clause_choice.size() != positions.size())
    throw std::invalid_argument("resolvent: one clause per selected atom");
  std::vector<Clause> clauses;
  clauses.reserve(clause_choice.size());
  for (std::size_t idx : clause_choice) clauses.push_back(program.clauses.at(idx));
  Query reduced = reduction(q, positions, clauses, fresh);
  return normalize(reduced, fresh);
}

namespace {

struct SearchCtx {
  const Program& program;
  const ComputationMethod& cm;
  const DeriveLimits& limits;
  FreshSource& fresh;
  const EdgeHook& hook;
  std::size_t target_depth = 0;
  bool cut_by_depth = false;
  DeriveResult* result = nullptr;
  Derivation path;
};

// Enumerates clause-index tuples for the selected atoms in lexicographic
// order, source order per coordinate.
bool next_tuple(std::vector<std::size_t>& idx,
                const std::vector<std::vector<std::size_t>>& candidates) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (idx[i] + 1 < candidates[i].size()) {
      ++idx[i];
      for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = 0;
      return true;
    }
  }
  return false;
}

bool answers_full(const SearchCtx& ctx) {
  return ctx.result->answers.size() >= ctx.limits.max_answers;
}

void dfs(SearchCtx& ctx, const DerivationNode& node,
         const std::set<std::string>& query_vars) {
  if (answers_full(ctx)) return;

  const Query& q = node.query;
  if (atom_count(q) == 0) {
    // An EQ-formula: a refutation iff consistent; report at exact length.
    if (node.depth != ctx.target_depth) return;
    SolvedForm e = normalize(q, ctx.fresh);
    if (e.is_false()) {
      ctx.result->stats.failed_branches += 1;
      return;
    }
    Answer ans;
    ans.eq_formula = e;
    ans.as_substitution = from_solved_form(e, ctx.fresh);
    ans.query_vars = query_vars;
    ctx.result->answers.push_back(std::move(ans));
    ctx.result->refutations.push_back(ctx.path);
    return;
  }

  if (node.depth >= ctx.target_depth) {
    ctx.cut_by_depth = true;
    return;
  }

  std::vector<std::size_t> positions =
      select_positions(ctx.cm, q, node.depth);
  std::vector<Atom> atoms;
  collect_atoms(q, atoms);
  std::vector<std::vector<std::size_t>> candidates;
  candidates.reserve(positions.size());
  for (std::size_t pos : positions) {
    candidates.push_back(clause_candidates(ctx.program, atoms[pos]));
    if (candidates.back().empty()) {
      ctx.result->stats.no_resolvent_branches += 1;
      return;  // no resolvent via this computation method
    }
  }

  std::vector<std::size_t> idx(positions.size(), 0);
  do {
    std::vector<std::size_t> choice;
    choice.reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      choice.push_back(candidates[i][idx[i]]);

    SolvedForm next = resolvent(q, ctx.cm, ctx.program, choice, ctx.fresh,
                                node.depth);
    DerivationNode child;
    child.query = next.to_query();
    child.depth = node.depth + 1;
    child.clause_choices = choice;
    if (ctx.hook) ctx.hook(node, child);

    if (next.is_false()) {
      ctx.result->stats.failed_branches += 1;
    } else {
      ctx.path.nodes.push_back(child);
      dfs(ctx, child, query_vars);
      ctx.path.nodes.pop_back();
    }
    if (answers_full(ctx)) return;
  } while (next_tuple(idx, candidates));
}

}  // namespace

DeriveResult derive(const Program& program, const Query& q,
                    const ComputationMethod& cm, const DeriveLimits& limits,
                    FreshSource& fresh, const EdgeHook& hook) {
  DeriveResult result;
  std::set<std::string> query_vars = free_vars(q);

  for (std::size_t depth = 0; depth <= limits.max_depth; ++depth) {
    SearchCtx ctx{program, cm, limits, fresh, hook, depth, false, &result, {}};
    DerivationNode root;
    root.query = q;
    root.depth = 0;
    ctx.path.nodes.push_back(root);
    dfs(ctx, root, query_vars);
    ctx.path.nodes.pop_back();
    if (answers_full(ctx)) break;
    if (!ctx.cut_by_depth) break;  // tree exhausted below this depth
    if (depth == limits.max_depth) result.stats.depth_exhausted = true;
  }
  return result;
}

std::optional<Answer> parallel_compose(const Answer& a1, const Answer& a2) {
  Query conj = Query::conj(a1.eq_formula.to_query(), a2.eq_formula.to_query());
  SolvedForm composed = normalize(conj);
  if (composed.is_false()) return std::nullopt;
  Answer out;
  out.eq_formula = composed;
  out.as_substitution = from_solved_form(composed);
  out.query_vars = a1.query_vars;
  out.query_vars.insert(a2.query_vars.begin(), a2.query_vars.end());
  return out;
}

Derivation derivation_concat(const Derivation& prefix,
                             const Derivation& suffix) {
  if (suffix.nodes.empty()) return prefix;
  if (prefix.nodes.empty()) return suffix;
  if (!(prefix.nodes.back().query == suffix.nodes.front().query))
    throw JoinMismatch("derivations do not share the join query");
  Derivation out = prefix;
  for (std::size_t i = 1; i < suffix.nodes.size(); ++i) {
    DerivationNode n = suffix.nodes[i];
    n.depth = prefix.nodes.back().depth + i;
    out.nodes.push_back(std::move(n));
  }
  return out;
}

bool validate_derivation(const Program& program, const ComputationMethod& cm,
                         const Derivation& d) {
  for (std::size_t i = 0; i + 1 < d.nodes.size(); ++i) {
    const DerivationNode& cur = d.nodes[i];
    const DerivationNode& nxt = d.nodes[i + 1];
    if (nxt.depth != cur.depth + 1) return false;
    if (atom_count(cur.query) == 0) return false;
    FreshSource replay(1000000000ull + i * 1000000ull);
    SolvedForm re;
    try {
      re = resolvent(cur.query, cm, program, nxt.clause_choices, replay,
                     cur.depth);
    } catch (const std::exception&) {
      return false;
    }
    if (!variant_equal(re, normalize(nxt.query))) return false;
  }
  return true;
}

}  // namespace eqlp
