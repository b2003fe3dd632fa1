#include "eqlp/fixpoint.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "eqlp/errors.hpp"

namespace eqlp {

UniverseBound enumerate_universe(const Alphabet& alphabet, std::size_t depth) {
  if (!alphabet.has_constant())
    throw EmptyAlphabet("the alphabet declares no constant");

  UniverseBound u;
  u.max_term_depth = depth;
  std::set<Term> cur;
  for (const auto& [name, arity] : alphabet.functors)
    if (arity == 0) cur.insert(Term::app(name));
  for (std::size_t d = 1; d <= depth; ++d) {
    std::set<Term> next = cur;
    std::vector<Term> pool(cur.begin(), cur.end());
    for (const auto& [name, arity] : alphabet.functors) {
      if (arity == 0 || pool.empty()) continue;
      // All argument tuples over the previous layer.
      std::vector<std::size_t> idx(arity, 0);
      bool done = false;
      while (!done) {
        std::vector<Term> args;
        args.reserve(arity);
        for (std::size_t k = 0; k < arity; ++k) args.push_back(pool[idx[k]]);
        next.insert(Term::app(name, std::move(args)));
        done = true;
        for (std::size_t k = arity; k-- > 0;) {
          if (++idx[k] < pool.size()) {
            done = false;
            break;
          }
          idx[k] = 0;
        }
      }
    }
    cur = std::move(next);
  }
  u.term_set = std::move(cur);
  u.terms.assign(u.term_set.begin(), u.term_set.end());
  std::stable_sort(u.terms.begin(), u.terms.end(),
                   [](const Term& a, const Term& b) {
                     if (a.depth() != b.depth()) return a.depth() < b.depth();
                     return a < b;
                   });
  u.depth_prefix.assign(depth + 1, 0);
  for (const Term& t : u.terms)
    for (std::size_t d = t.depth(); d <= depth; ++d) ++u.depth_prefix[d];
  return u;
}

// ---------------------------------------------------------------------------
// Bounded query evaluation.

bool eval_query(const Query& q, const std::map<std::string, Term>& h,
                const GroundAtomSet& i, const UniverseBound& u) {
  switch (q.kind()) {
    case Query::Kind::True:
      return true;
    case Query::Kind::False:
      return false;
    case Query::Kind::Eq:
      return q.lhs().replace(h) == q.rhs().replace(h);
    case Query::Kind::Atom:
      return i.count(q.atom_ref().replace(h)) > 0;
    case Query::Kind::And:
      return eval_query(q.left(), h, i, u) && eval_query(q.right(), h, i, u);
    case Query::Kind::Exists: {
      std::map<std::string, Term> h2 = h;
      for (const Term& t : u.terms) {
        h2[q.var()] = t;
        if (eval_query(q.body(), h2, i, u)) return true;
      }
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// tp_step: per clause, a backtracking join over the interpretation for body
// atoms, ground matching for equations, and enumeration for what remains.

namespace {

struct FlatBody {
  bool is_false = false;
  std::vector<Atom> atoms;
  std::vector<std::pair<Term, Term>> eqs;
};

void flatten_body(const Query& q, const std::map<std::string, Term>& env,
                  std::size_t& next_bound, FlatBody& out) {
  switch (q.kind()) {
    case Query::Kind::True:
      return;
    case Query::Kind::False:
      out.is_false = true;
      return;
    case Query::Kind::Eq:
      out.eqs.emplace_back(q.lhs().replace(env), q.rhs().replace(env));
      return;
    case Query::Kind::Atom:
      out.atoms.push_back(q.atom_ref().replace(env));
      return;
    case Query::Kind::And:
      flatten_body(q.left(), env, next_bound, out);
      if (out.is_false) return;
      flatten_body(q.right(), env, next_bound, out);
      return;
    case Query::Kind::Exists: {
      std::map<std::string, Term> inner = env;
      inner[q.var()] = Term::var("%q" + std::to_string(next_bound++));
      flatten_body(q.body(), inner, next_bound, out);
      return;
    }
  }
}

using Assignment = std::map<std::string, Term>;

bool match_ground(const Term& pattern, const Term& ground, Assignment& h) {
  if (pattern.is_var()) {
    auto [it, inserted] = h.emplace(pattern.name(), ground);
    return inserted || it->second == ground;
  }
  if (pattern.name() != ground.name() ||
      pattern.args().size() != ground.args().size())
    return false;
  for (std::size_t k = 0; k < pattern.args().size(); ++k)
    if (!match_ground(pattern.args()[k], ground.args()[k], h)) return false;
  return true;
}

struct ClauseEval {
  const UniverseBound& u;
  const std::map<std::string, std::vector<const Atom*>>& by_pred;
  const FlatBody& body;
  const Atom& head;
  GroundAtomSet& out;

  // Solves the residual equations with the current assignment, extending it by
  // ground matching; enumerates a variable only when matching cannot decide.
  void solve_eqs(Assignment h, std::vector<std::pair<Term, Term>> pending) {
    bool progress = true;
    while (progress && !pending.empty()) {
      progress = false;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        Term l = pending[i].first.replace(h);
        Term r = pending[i].second.replace(h);
        bool lg = l.is_ground(), rg = r.is_ground();
        if (lg && rg) {
          if (l != r) return;
          pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
          progress = true;
          break;
        }
        if (lg || rg) {
          const Term& pat = lg ? r : l;
          const Term& gnd = lg ? l : r;
          Assignment h2 = h;
          if (!match_ground(pat, gnd, h2)) return;
          // Every matched variable must take a value inside the universe.
          for (const auto& [v, t] : h2)
            if (!h.count(v) && !u.contains(t)) return;
          h = std::move(h2);
          pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
          progress = true;
          break;
        }
      }
    }
    if (pending.empty()) {
      finish(std::move(h));
      return;
    }
    // Both sides open: enumerate one variable and retry.
    std::set<std::string> vars;
    pending.front().first.collect_vars(vars);
    pending.front().second.collect_vars(vars);
    for (const std::string& v : vars) {
      if (h.count(v)) continue;
      for (const Term& t : u.terms) {
        Assignment h2 = h;
        h2.emplace(v, t);
        solve_eqs(std::move(h2), pending);
      }
      return;
    }
  }

  // Remaining head variables take values shallow enough for the whole
  // argument to stay within the universe; leaf positions of already-ground
  // parts bound the instantiated depth directly.
  bool cap_walk(const Term& t, std::size_t pos_depth,
                std::map<std::string, std::size_t>& caps) {
    if (pos_depth > u.max_term_depth) return false;
    if (t.is_var()) {
      std::size_t cap = u.max_term_depth - pos_depth;
      auto [it, inserted] = caps.emplace(t.name(), cap);
      if (!inserted && cap < it->second) it->second = cap;
      return true;
    }
    for (const Term& a : t.args())
      if (!cap_walk(a, pos_depth + 1, caps)) return false;
    return true;
  }

  void finish(Assignment h) {
    std::map<std::string, std::size_t> caps;
    for (const Term& t : head.args)
      if (!cap_walk(t.replace(h), 0, caps)) return;  // ground part too deep
    std::vector<std::pair<std::string, std::size_t>> missing;
    for (const auto& [v, cap] : caps)
      if (!h.count(v)) missing.push_back({v, cap});
    emit_rec(h, missing, 0);
  }

  void emit_rec(Assignment& h,
                const std::vector<std::pair<std::string, std::size_t>>& missing,
                std::size_t k) {
    if (k == missing.size()) {
      out.insert(head.replace(h));  // within the base by the caps
      return;
    }
    std::size_t limit = u.count_up_to(missing[k].second);
    for (std::size_t i = 0; i < limit; ++i) {
      h[missing[k].first] = u.terms[i];
      emit_rec(h, missing, k + 1);
    }
    h.erase(missing[k].first);
  }

  void join(Assignment h, std::size_t atom_idx) {
    if (atom_idx == body.atoms.size()) {
      solve_eqs(std::move(h), body.eqs);
      return;
    }
    const Atom& pat = body.atoms[atom_idx];
    auto it = by_pred.find(pat.predicate);
    if (it == by_pred.end()) return;
    Atom inst = pat.replace(h);
    for (const Atom* fact : it->second) {
      if (fact->args.size() != inst.args.size()) continue;
      Assignment h2 = h;
      bool ok = true;
      for (std::size_t k = 0; k < inst.args.size() && ok; ++k)
        ok = match_ground(inst.args[k], fact->args[k], h2);
      if (ok) join(std::move(h2), atom_idx + 1);
    }
  }
};

}  // namespace

GroundAtomSet tp_step(const Program& program, const GroundAtomSet& i,
                      const UniverseBound& u) {
  std::map<std::string, std::vector<const Atom*>> by_pred;
  for (const Atom& a : i) by_pred[a.predicate].push_back(&a);

  GroundAtomSet out;
  for (const Clause& c : program.clauses) {
    FlatBody body;
    std::size_t next_bound = 0;
    flatten_body(c.body, {}, next_bound, body);
    if (body.is_false) continue;
    ClauseEval eval{u, by_pred, body, c.head, out};
    eval.join({}, 0);
  }
  return out;
}

GroundAtomSet tp_power(const Program& program, std::size_t n,
                       const UniverseBound& u) {
  GroundAtomSet cur;
  for (std::size_t k = 0; k < n; ++k) {
    GroundAtomSet next = tp_step(program, cur, u);
    if (next == cur) break;  // stabilized; later powers are equal
    cur = std::move(next);
  }
  return cur;
}

bool is_datalog(const Program& program) {
  for (const auto& [name, arity] : program.alphabet.functors)
    if (arity > 0) return false;
  return true;
}

namespace {

bool function_free(const Term& t) {
  if (t.is_var()) return true;
  return t.args().empty();
}

bool function_free(const Query& q) {
  switch (q.kind()) {
    case Query::Kind::True:
    case Query::Kind::False:
      return true;
    case Query::Kind::Eq:
      return function_free(q.lhs()) && function_free(q.rhs());
    case Query::Kind::Atom:
      for (const Term& t : q.atom_ref().args)
        if (!function_free(t)) return false;
      return true;
    case Query::Kind::And:
      return function_free(q.left()) && function_free(q.right());
    case Query::Kind::Exists:
      return function_free(q.body());
  }
  return true;
}

}  // namespace

bool is_datalog(const Program& program, const Query& q, const SolvedForm& e) {
  return is_datalog(program) && function_free(q) && function_free(e.to_query());
}

std::set<std::map<std::string, Term>> solutions_of(const SolvedForm& e,
                                                   const UniverseBound& u) {
  if (!e.atom_free())
    throw std::invalid_argument("solutions_of requires an atom-free form");
  std::set<std::map<std::string, Term>> out;
  if (e.is_false()) return out;
  if (e.is_true()) {
    out.insert({});
    return out;
  }

  std::set<std::string> kernel = e.free_vars();
  const auto& bindings = e.bindings();

  // Assign right-hand-side variables binding by binding; eliminable values
  // follow by evaluation, pruned to the universe as soon as computable.
  std::function<void(std::size_t, Assignment)> rec =
      [&](std::size_t i, Assignment h) {
        if (i == bindings.size()) {
          std::map<std::string, Term> sol;
          for (const std::string& v : kernel) sol.emplace(v, h.at(v));
          out.insert(std::move(sol));
          return;
        }
        const auto& [x, s] = bindings[i];
        // Depth caps keep the instantiated right-hand side inside the
        // universe without scanning it whole.
        Term inst = s.replace(h);
        std::map<std::string, std::size_t> caps;
        std::function<bool(const Term&, std::size_t)> walk =
            [&](const Term& t, std::size_t pos) -> bool {
          if (pos > u.max_term_depth) return false;
          if (t.is_var()) {
            std::size_t cap = u.max_term_depth - pos;
            auto [it, inserted] = caps.emplace(t.name(), cap);
            if (!inserted && cap < it->second) it->second = cap;
            return true;
          }
          for (const Term& a : t.args())
            if (!walk(a, pos + 1)) return false;
          return true;
        };
        if (!walk(inst, 0)) return;
        std::vector<std::pair<std::string, std::size_t>> missing(
            caps.begin(), caps.end());
        std::function<void(std::size_t, Assignment&)> assign =
            [&](std::size_t k, Assignment& cur) {
              if (k == missing.size()) {
                Term val = s.replace(cur);
                if (!u.contains(val)) return;
                Assignment next = cur;
                next.emplace(x, val);
                rec(i + 1, std::move(next));
                return;
              }
              std::size_t limit = u.count_up_to(missing[k].second);
              for (std::size_t t = 0; t < limit; ++t) {
                cur[missing[k].first] = u.terms[t];
                assign(k + 1, cur);
              }
              cur.erase(missing[k].first);
            };
        assign(0, h);
      };
  rec(0, {});
  return out;
}

const GroundAtomSet& TpPowerCache::power(std::size_t n) {
  while (!stabilized_ && powers_.size() <= n) {
    GroundAtomSet next = tp_step(*program_, powers_.back(), *u_);
    if (next == powers_.back()) {
      stabilized_ = true;
      stable_at_ = powers_.size() - 1;
      break;
    }
    powers_.push_back(std::move(next));
  }
  return powers_[std::min(n, powers_.size() - 1)];
}

bool TpPowerCache::stabilized_by(std::size_t n) {
  power(n);
  return stabilized_ && stable_at_ <= n;
}

OracleVerdict check_correct_answer(const Program& program, const SolvedForm& e,
                                   const Query& q, const UniverseBound& u,
                                   std::size_t max_n, TpPowerCache* cache) {
  if (e.is_false())
    throw InconsistentAnswer("check_correct_answer requires a consistent answer");

  // Solutions of e, extended over query variables e does not constrain.
  std::set<std::string> evars = e.is_true() ? std::set<std::string>{}
                                            : e.free_vars();
  std::vector<std::string> extras;
  for (const std::string& v : free_vars(q))
    if (!evars.count(v)) extras.push_back(v);

  std::vector<std::map<std::string, Term>> pending;
  for (const auto& base : solutions_of(e, u)) {
    std::vector<std::map<std::string, Term>> grow{base};
    for (const std::string& v : extras) {
      std::vector<std::map<std::string, Term>> next;
      next.reserve(grow.size() * u.terms.size());
      for (const auto& h : grow)
        for (const Term& t : u.terms) {
          auto h2 = h;
          h2.emplace(v, t);
          next.push_back(std::move(h2));
        }
      grow = std::move(next);
    }
    for (auto& h : grow) pending.push_back(std::move(h));
  }

  TpPowerCache local(program, u);
  TpPowerCache& powers = cache ? *cache : local;
  for (std::size_t n = 0; n <= max_n; ++n) {
    const GroundAtomSet& interp = powers.power(n);
    std::erase_if(pending, [&](const auto& h) {
      return eval_query(q, h, interp, u);
    });
    if (pending.empty()) {
      OracleVerdict v;
      v.status = OracleVerdict::Status::HoldsAt;
      v.n = n;
      return v;
    }
    if (powers.stabilized_by(n)) {
      // Later powers are identical and pending already failed this one:
      // the remaining solutions can never be satisfied.
      if (is_datalog(program, q, e)) {
        OracleVerdict v;
        v.status = OracleVerdict::Status::Refuted;
        v.witness = pending.front();
        return v;
      }
      OracleVerdict v;
      v.status = OracleVerdict::Status::Inconclusive;
      v.bound = n;
      return v;
    }
  }
  OracleVerdict v;
  v.status = OracleVerdict::Status::Inconclusive;
  v.bound = max_n;
  return v;
}

std::set<std::map<std::string, Term>> enumerate_ground_answers(
    const Program& program, const Query& q, const UniverseBound& u,
    std::size_t max_n) {
  GroundAtomSet interp;
  for (std::size_t n = 0; n < max_n; ++n) {
    GroundAtomSet next = tp_step(program, interp, u);
    if (next == interp) break;
    interp = std::move(next);
  }

  std::set<std::string> fv = free_vars(q);
  std::vector<std::string> vars(fv.begin(), fv.end());
  std::set<std::map<std::string, Term>> out;
  std::map<std::string, Term> h;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == vars.size()) {
      if (eval_query(q, h, interp, u)) out.insert(h);
      return;
    }
    for (const Term& t : u.terms) {
      h[vars[k]] = t;
      rec(k + 1);
    }
    h.erase(vars[k]);
  };
  rec(0);
  return out;
}

std::string OracleVerdict::to_string() const {
  switch (status) {
    case Status::HoldsAt:
      return "holds_at(" + std::to_string(n) + ")";
    case Status::Refuted: {
      std::string s = "refuted(";
      bool first = true;
      for (const auto& [v, t] : witness) {
        if (!first) s += ", ";
        first = false;
        s += v + " -> ";
        // Terms print through the printer module; keep the functor skeleton
        // here to avoid a dependency cycle.
        std::function<void(const Term&)> show = [&](const Term& x) {
          s += x.name();
          if (!x.args().empty()) {
            s += "(";
            for (std::size_t i = 0; i < x.args().size(); ++i) {
              if (i) s += ", ";
              show(x.args()[i]);
            }
            s += ")";
          }
        };
        show(t);
      }
      return s + ")";
    }
    case Status::Inconclusive:
      return "inconclusive(" + std::to_string(bound) + ")";
  }
  return "";
}

}  // namespace eqlp
