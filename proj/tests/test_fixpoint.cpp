#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqlp/errors.hpp"
#include "eqlp/fixpoint.hpp"
#include "eqlp/parser.hpp"
#include "eqlp/printer.hpp"
#include "eqlp/query.hpp"
#include "support/naive_datalog.hpp"
#include "support/suite.hpp"

using namespace eqlp;
using namespace eqlp::testing;

namespace {

Term V(const std::string& n) { return Term::var(n); }
Term A(const std::string& f, std::vector<Term> args = {}) {
  return Term::app(f, std::move(args));
}

Program prog(const std::string& text) {
  auto r = parse_program(text);
  REQUIRE(r.ok());
  Program p = std::move(*r.value);
  ensure_constant(p);
  return p;
}

Query Q(const std::string& s, const Alphabet& al = {}) {
  auto r = parse_query(s, al);
  REQUIRE_MESSAGE(r.ok(), s);
  return *r.value;
}

}  // namespace

TEST_CASE("enumerate_universe frozen examples") {
  Alphabet just_a;
  just_a.functors = {{"a", 0}};
  UniverseBound u1 = enumerate_universe(just_a, 2);
  CHECK(u1.terms == std::vector<Term>{A("a")});

  Alphabet af;
  af.functors = {{"a", 0}, {"f", 1}};
  UniverseBound u2 = enumerate_universe(af, 2);
  CHECK(u2.term_set ==
        std::set<Term>{A("a"), A("f", {A("a")}), A("f", {A("f", {A("a")})})});

  Alphabet abf;
  abf.functors = {{"a", 0}, {"b", 0}, {"f", 1}};
  UniverseBound u3 = enumerate_universe(abf, 1);
  CHECK(u3.term_set == std::set<Term>{A("a"), A("b"), A("f", {A("a")}),
                                      A("f", {A("b")})});

  Alphabet none;
  none.functors = {{"f", 1}};
  CHECK_THROWS_AS(enumerate_universe(none, 2), EmptyAlphabet);
}

TEST_CASE("tp_step frozen examples") {
  Program p1 = prog("p(a).");
  UniverseBound u = enumerate_universe(p1.alphabet, 2);
  CHECK(tp_step(p1, {}, u) == GroundAtomSet{Atom{"p", {A("a")}}});

  Program p2 = prog("p(a).\nq(X) :- p(X).");
  GroundAtomSet i{Atom{"p", {A("a")}}};
  UniverseBound u2 = enumerate_universe(p2.alphabet, 2);
  GroundAtomSet out = tp_step(p2, i, u2);
  CHECK(out == GroundAtomSet{Atom{"p", {A("a")}}, Atom{"q", {A("a")}}});

  // A body nobody satisfies contributes nothing beyond the facts.
  Program p3 = prog("p(a).\nq(X) :- r(X).");
  UniverseBound u3 = enumerate_universe(p3.alphabet, 2);
  CHECK(tp_step(p3, {}, u3) == GroundAtomSet{Atom{"p", {A("a")}}});
}

TEST_CASE("tp_power frozen examples") {
  Program p = prog("p(a).\nq(X) :- p(X).");
  UniverseBound u = enumerate_universe(p.alphabet, 2);
  CHECK(tp_power(p, 0, u).empty());
  CHECK(tp_power(p, 1, u) == GroundAtomSet{Atom{"p", {A("a")}}});
  GroundAtomSet fix{Atom{"p", {A("a")}}, Atom{"q", {A("a")}}};
  CHECK(tp_power(p, 2, u) == fix);
  CHECK(tp_power(p, 50, u) == fix);  // stabilized

  // Datalog: stabilizes within the base size.
  Program g = load_suite_program("graph6.lp");
  UniverseBound ug = enumerate_universe(g.alphabet, 0);
  GroundAtomSet prev;
  std::size_t base = 0;
  for (const auto& [name, arity] : g.alphabet.predicates) {
    std::size_t combos = 1;
    for (std::size_t k = 0; k < arity; ++k) combos *= ug.terms.size();
    base += combos;
  }
  bool stabilized = false;
  for (std::size_t n = 1; n <= base + 1; ++n) {
    GroundAtomSet cur = tp_power(g, n, ug);
    if (cur == prev) {
      stabilized = true;
      break;
    }
    prev = std::move(cur);
  }
  CHECK(stabilized);
}

TEST_CASE("tp properties: monotone iterates and the model criterion") {
  for (const std::string& file :
       {std::string("graph6.lp"), std::string("peano.lp"),
        std::string("eqbody.lp")}) {
    Program p = load_suite_program(file);
    UniverseBound u = enumerate_universe(p.alphabet, file == "graph6.lp" ? 0 : 2);
    GroundAtomSet prev;
    for (std::size_t n = 1; n <= 8; ++n) {
      GroundAtomSet cur = tp_step(p, prev, u);
      CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      prev = std::move(cur);
    }
    // At a reached fixpoint i, tp_step(i) stays inside i.
    GroundAtomSet fix = tp_power(p, 64, u);
    GroundAtomSet next = tp_step(p, fix, u);
    CHECK(std::includes(fix.begin(), fix.end(), next.begin(), next.end()));
  }
}

TEST_CASE("tp_step ignores clause variable names") {
  for (const std::string& file :
       {std::string("graph6.lp"), std::string("ancestor.lp"),
        std::string("peano.lp")}) {
    Program p = load_suite_program(file);
    Program renamed = p;
    FreshSource fresh(5000);
    for (Clause& c : renamed.clauses) c = rename_clause(c, fresh);
    UniverseBound u = enumerate_universe(p.alphabet, file == "peano.lp" ? 2 : 0);
    GroundAtomSet i;
    for (std::size_t n = 0; n < 4; ++n) {
      CHECK(tp_step(p, i, u) == tp_step(renamed, i, u));
      i = tp_step(p, i, u);
    }
  }
}

TEST_CASE("check_correct_answer frozen examples") {
  Program p = prog("p(f(Z)).");
  UniverseBound u = enumerate_universe(p.alphabet, 2);
  SolvedForm e = SolvedForm::shape({"Z"}, {{"X", A("f", {V("Z")})}}, {});
  OracleVerdict v = check_correct_answer(p, e, Q("p(X)", p.alphabet), u, 32);
  CHECK(v.status == OracleVerdict::Status::HoldsAt);
  CHECK(v.n == 1);
  CHECK(v.to_string() == "holds_at(1)");

  Program pd = prog("p(a).\nq(b).");  // puts both constants in the alphabet
  UniverseBound ud = enumerate_universe(pd.alphabet, 2);
  SolvedForm xb = SolvedForm::shape({}, {{"X", A("b")}}, {});
  OracleVerdict r = check_correct_answer(pd, xb, Q("p(X)", pd.alphabet), ud, 32);
  CHECK(r.status == OracleVerdict::Status::Refuted);
  REQUIRE(r.witness.count("X"));
  CHECK(r.witness.at("X") == A("b"));

  OracleVerdict t =
      check_correct_answer(pd, SolvedForm::truth(), Query::truth(), ud, 32);
  CHECK(t.status == OracleVerdict::Status::HoldsAt);
  CHECK(t.n == 0);

  // Bounded regime stays inconclusive rather than refuting.
  SolvedForm wrong = SolvedForm::shape({}, {{"X", A("a")}}, {});
  Program pf = prog("p(f(Z)).\nq(a).");
  UniverseBound uf = enumerate_universe(pf.alphabet, 2);
  OracleVerdict inc =
      check_correct_answer(pf, wrong, Q("p(X)", pf.alphabet), uf, 8);
  CHECK(inc.status == OracleVerdict::Status::Inconclusive);
}

TEST_CASE("enumerate_ground_answers frozen examples") {
  Program p = prog("p(a).\np(b).");
  UniverseBound u = enumerate_universe(p.alphabet, 2);
  auto answers = enumerate_ground_answers(p, Q("p(X)", p.alphabet), u, 32);
  std::set<std::map<std::string, Term>> expect{{{"X", A("a")}},
                                               {{"X", A("b")}}};
  CHECK(answers == expect);

  auto top = enumerate_ground_answers(p, Query::truth(), u, 32);
  CHECK(top == std::set<std::map<std::string, Term>>{{}});

  auto none = enumerate_ground_answers(p, Q("a = b", p.alphabet), u, 32);
  CHECK(none.empty());
}

TEST_CASE("solutions_of a solved form is exact over the universe") {
  Alphabet al;
  al.functors = {{"a", 0}, {"f", 1}};
  UniverseBound u = enumerate_universe(al, 2);
  SolvedForm e = SolvedForm::shape({"Z"}, {{"X", A("f", {V("Z")})}}, {});
  auto sols = solutions_of(e, u);
  // f(t) for t of depth <= 1: two solutions.
  CHECK(sols.size() == 2);
  for (const auto& h : sols) CHECK(h.at("X").name() == "f");

  // Parameters enumerate; eliminables follow.
  SolvedForm e2 = SolvedForm::shape({}, {{"X", A("f", {V("P")})}}, {});
  auto sols2 = solutions_of(e2, u);
  CHECK(sols2.size() == 2);  // P in {a, f(a)}: f(P) stays within depth 2
  for (const auto& h : sols2) CHECK(h.at("X") == A("f", {h.at("P")}));

  std::set<std::map<std::string, Term>> just_empty;
  just_empty.insert({});
  CHECK(solutions_of(SolvedForm::truth(), u) == just_empty);
  CHECK(solutions_of(SolvedForm::falsity(), u).empty());
}

TEST_CASE("bounded oracle matches the naive evaluator on Datalog") {
  for (const std::string& file :
       {std::string("graph6.lp"), std::string("ancestor.lp"),
        std::string("existsbody.lp")}) {
    Program p = load_suite_program(file);
    REQUIRE(is_datalog(p));
    UniverseBound u = enumerate_universe(p.alphabet, 0);

    // Whole-model agreement.
    GroundAtomSet fix = tp_power(p, 64, u);
    FactSet naive = naive_least_model(p);
    CHECK(fix == naive);

    // Query-level agreement.
    for (const SuiteEntry& entry : suite_entries()) {
      if (entry.file != file) continue;
      for (const std::string& qs : entry.queries) {
        Query q = Q(qs, p.alphabet);
        auto a = enumerate_ground_answers(p, q, u, 64);
        auto b = naive_query_answers(p, q);
        CHECK_MESSAGE(a == b, file << " " << qs);
      }
    }
  }
}
