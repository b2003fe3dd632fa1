#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eqlp/parser.hpp"
#include "eqlp/printer.hpp"
#include "support/generators.hpp"

using namespace eqlp;
using eqlp::testing::Gen;

TEST_CASE("parse_program basics") {
  auto res = parse_program("p(f(Z)).\n");
  REQUIRE(res.ok());
  REQUIRE(res.value->clauses.size() == 1);
  const Clause& c = res.value->clauses[0];
  CHECK(c.head == Atom{"p", {Term::app("f", {Term::var("Z")})}});
  CHECK(c.body == Query::truth());

  auto res2 = parse_program("q(X) :- p(X).");
  REQUIRE(res2.ok());
  CHECK(res2.value->clauses[0].body ==
        Query::atom(Atom{"p", {Term::var("X")}}));

  auto bad = parse_program("p(X, X, Y");
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.diagnostic->kind == Diagnostic::Kind::Syntax);
  CHECK(bad.diagnostic->line == 1);
  CHECK(bad.diagnostic->column == 10);  // one past the unclosed argument list
}

TEST_CASE("parse_program diagnostics") {
  auto arity = parse_program("p(a).\np(a, b).");
  REQUIRE_FALSE(arity.ok());
  CHECK(arity.diagnostic->kind == Diagnostic::Kind::ArityConflict);
  CHECK(arity.diagnostic->line == 2);

  auto reserved = parse_program("p(_G1).");
  REQUIRE_FALSE(reserved.ok());
  CHECK(reserved.diagnostic->kind == Diagnostic::Kind::ReservedName);

  auto headeq = parse_program("X = a.");
  REQUIRE_FALSE(headeq.ok());
  CHECK(headeq.diagnostic->kind == Diagnostic::Kind::Syntax);

  // Comments and facts parse.
  auto ok = parse_program("% nothing here\np(a). % trailing\n");
  CHECK(ok.ok());
}

TEST_CASE("parse_query basics") {
  auto q = parse_query("p(X), q(Y)");
  REQUIRE(q.ok());
  CHECK(*q.value == Query::conj(Query::atom(Atom{"p", {Term::var("X")}}),
                                Query::atom(Atom{"q", {Term::var("Y")}})));

  auto ex = parse_query("exists Z . (X = f(Z))");
  REQUIRE(ex.ok());
  CHECK(*ex.value ==
        Query::exists("Z", Query::eq(Term::var("X"),
                                     Term::app("f", {Term::var("Z")}))));

  auto t = parse_query("true");
  REQUIRE(t.ok());
  CHECK(*t.value == Query::truth());

  auto pref = parse_query("?- p(X).");
  REQUIRE(pref.ok());

  // Arity must stay consistent with the program alphabet.
  Alphabet al;
  al.predicates = {{"p", 2}};
  auto conflict = parse_query("p(X)", al);
  REQUIRE_FALSE(conflict.ok());
  CHECK(conflict.diagnostic->kind == Diagnostic::Kind::ArityConflict);
}

TEST_CASE("print_query round trips frozen forms") {
  Query q = Query::exists(
      "Z", Query::eq(Term::var("X"), Term::app("f", {Term::var("Z")})));
  CHECK(print_query(q) == "exists Z . (X = f(Z))");
  CHECK(print_query(Query::truth()) == "true");
  Query q2 = Query::conj(Query::eq(Term::var("X"), Term::app("a")),
                         Query::atom(Atom{"p", {Term::var("X")}}));
  CHECK(print_query(q2) == "X = a, p(X)");

  // Left-nested conjunctions carry their grouping.
  Query left = Query::conj(
      Query::conj(Query::truth(), Query::eq(Term::var("X"), Term::app("a"))),
      Query::truth());
  CHECK(print_query(left) == "(true, X = a), true");
  auto back = parse_query(print_query(left));
  REQUIRE(back.ok());
  CHECK(*back.value == left);
}

TEST_CASE("round trip on 1000 random queries") {
  Gen gen(4242);
  for (int i = 0; i < 1000; ++i) {
    Query q = gen.corpus_query(true);
    std::string text = print_query(q);
    auto back = parse_query(text);
    REQUIRE_MESSAGE(back.ok(), text);
    CHECK_MESSAGE(*back.value == q, text);
  }
}

TEST_CASE("parser is total on fuzzed byte strings") {
  std::mt19937_64 rng(5150);
  const char alphabet_bytes[] =
      "pqfgaXYZ_(),.=:-?% \t\ntruefalseexists\x01\x7f\xc3\xa9";
  for (int i = 0; i < 10000; ++i) {
    std::size_t len = rng() % 64;
    std::string s;
    for (std::size_t k = 0; k < len; ++k)
      s += alphabet_bytes[rng() % (sizeof(alphabet_bytes) - 1)];
    auto p = parse_program(s);
    auto q = parse_query(s);
    // Every outcome is a value or a diagnostic; reaching here is the test.
    CHECK((p.ok() || p.diagnostic.has_value()));
    CHECK((q.ok() || q.diagnostic.has_value()));
  }
}

TEST_CASE("ensure_constant adds one only when missing") {
  auto res = parse_program("p(f(Z)).");
  REQUIRE(res.ok());
  Program p = std::move(*res.value);
  CHECK_FALSE(p.alphabet.has_constant());
  ensure_constant(p);
  CHECK(p.alphabet.has_constant());

  auto res2 = parse_program("p(a).");
  Program p2 = std::move(*res2.value);
  auto before = p2.alphabet.functors;
  ensure_constant(p2);
  CHECK(p2.alphabet.functors == before);
}
