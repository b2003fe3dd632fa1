#include "eqlp/parser.hpp"

#include <cctype>
#include <utility>

namespace eqlp {

std::string Diagnostic::to_string() const {
  const char* k = "syntax";
  if (kind == Kind::ArityConflict) k = "arity-conflict";
  if (kind == Kind::ReservedName) k = "reserved-name";
  return std::string(k) + " error at " + std::to_string(line) + ":" +
         std::to_string(column) + ": " + message;
}

namespace {

enum class Tok {
  Ident,    // variable or name, classified by first character
  LParen,
  RParen,
  Comma,
  Dot,
  Equals,
  ColonDash,
  QueryDash,
  KwTrue,
  KwFalse,
  KwExists,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void fail(Diagnostic::Kind kind, const std::string& message,
                       std::size_t line, std::size_t column) {
  throw Diagnostic{kind, message, line, column};
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += k;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '%') {  // line comment
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    std::size_t tl = line, tc = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string id = text.substr(i, j - i);
      advance(j - i);
      Tok kind = Tok::Ident;
      if (id == "true") kind = Tok::KwTrue;
      else if (id == "false") kind = Tok::KwFalse;
      else if (id == "exists") kind = Tok::KwExists;
      out.push_back({kind, id, tl, tc});
      continue;
    }
    switch (c) {
      case '(':
        out.push_back({Tok::LParen, "(", tl, tc});
        advance(1);
        continue;
      case ')':
        out.push_back({Tok::RParen, ")", tl, tc});
        advance(1);
        continue;
      case ',':
        out.push_back({Tok::Comma, ",", tl, tc});
        advance(1);
        continue;
      case '.':
        out.push_back({Tok::Dot, ".", tl, tc});
        advance(1);
        continue;
      case '=':
        out.push_back({Tok::Equals, "=", tl, tc});
        advance(1);
        continue;
      case ':':
        if (i + 1 < text.size() && text[i + 1] == '-') {
          out.push_back({Tok::ColonDash, ":-", tl, tc});
          advance(2);
          continue;
        }
        fail(Diagnostic::Kind::Syntax, "expected ':-'", tl, tc);
      case '?':
        if (i + 1 < text.size() && text[i + 1] == '-') {
          out.push_back({Tok::QueryDash, "?-", tl, tc});
          advance(2);
          continue;
        }
        fail(Diagnostic::Kind::Syntax, "expected '?-'", tl, tc);
      default:
        fail(Diagnostic::Kind::Syntax,
             "unexpected character '" + std::string(1, c) + "'", tl, tc);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_variable_name(const std::string& id) {
  return !id.empty() &&
         (std::isupper(static_cast<unsigned char>(id[0])) || id[0] == '_');
}

// Raw term structure before symbol classification.
class Parser {
 public:
  Parser(std::vector<Token> tokens, Alphabet& alphabet)
      : toks_(std::move(tokens)), alphabet_(alphabet) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& get() { return toks_[pos_++]; }

  bool at(Tok k) const { return peek().kind == k; }

  const Token& expect(Tok k, const std::string& what) {
    if (!at(k))
      fail(Diagnostic::Kind::Syntax, "expected " + what, peek().line,
           peek().column);
    return get();
  }

  void check_identifier(const Token& t) {
    if (is_reserved_name(t.text))
      fail(Diagnostic::Kind::ReservedName,
           "identifier '" + t.text + "' uses the reserved \"_G\" prefix",
           t.line, t.column);
  }

  // Terms are parsed without declaring symbols; the caller classifies the
  // outermost symbol (functor vs predicate) and then declares the rest.
  Term parse_term() {
    const Token& t = expect(Tok::Ident, "a term");
    check_identifier(t);
    if (is_variable_name(t.text)) return Term::var(t.text);
    std::vector<Term> args;
    if (at(Tok::LParen)) {
      get();
      args.push_back(parse_term());
      while (at(Tok::Comma)) {
        get();
        args.push_back(parse_term());
      }
      expect(Tok::RParen, "')'");
    }
    return Term::app(t.text, std::move(args));
  }

  void declare_functors(const Term& t, const Token& at_tok) {
    if (t.is_var()) return;
    if (!alphabet_.declare_functor(t.name(), t.args().size()))
      fail(Diagnostic::Kind::ArityConflict,
           "functor '" + t.name() + "' used with arity " +
               std::to_string(t.args().size()) + " but declared with arity " +
               std::to_string(alphabet_.functors.at(t.name())),
           at_tok.line, at_tok.column);
    for (const Term& a : t.args()) declare_functors(a, at_tok);
  }

  Atom term_to_atom(const Term& t, const Token& at_tok) {
    if (t.is_var())
      fail(Diagnostic::Kind::Syntax,
           "a variable is not a formula; expected '=' or a predicate",
           at_tok.line, at_tok.column);
    if (!alphabet_.declare_predicate(t.name(), t.args().size()))
      fail(Diagnostic::Kind::ArityConflict,
           "predicate '" + t.name() + "' used with arity " +
               std::to_string(t.args().size()) + " but declared with arity " +
               std::to_string(alphabet_.predicates.at(t.name())),
           at_tok.line, at_tok.column);
    for (const Term& a : t.args()) declare_functors(a, at_tok);
    return Atom{t.name(), t.args()};
  }

  Query parse_conjunct() {
    if (at(Tok::KwTrue)) {
      get();
      return Query::truth();
    }
    if (at(Tok::KwFalse)) {
      get();
      return Query::falsity();
    }
    if (at(Tok::LParen)) {
      get();
      Query inner = parse_body();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (at(Tok::KwExists)) return parse_exists();
    const Token& start = peek();
    Term t = parse_term();
    if (at(Tok::Equals)) {
      get();
      const Token& rstart = peek();
      Term r = parse_term();
      declare_functors(t, start);
      declare_functors(r, rstart);
      return Query::eq(std::move(t), std::move(r));
    }
    return Query::atom(term_to_atom(t, start));
  }

  Query parse_exists() {
    expect(Tok::KwExists, "'exists'");
    const Token& v = expect(Tok::Ident, "a variable after 'exists'");
    check_identifier(v);
    if (!is_variable_name(v.text))
      fail(Diagnostic::Kind::Syntax,
           "'" + v.text + "' is not a variable (must start uppercase or '_')",
           v.line, v.column);
    expect(Tok::Dot, "'.' after the quantified variable");
    Query body;
    if (at(Tok::KwExists)) {
      body = parse_exists();
    } else {
      expect(Tok::LParen, "'(' opening the quantifier body");
      body = parse_body();
      expect(Tok::RParen, "')'");
    }
    return Query::exists(v.text, std::move(body));
  }

  Query parse_body() {
    Query first = parse_conjunct();
    if (!at(Tok::Comma)) return first;
    get();
    Query rest = parse_body();  // right-associative
    return Query::conj(std::move(first), std::move(rest));
  }

  Clause parse_clause() {
    const Token& start = peek();
    Term head_term = parse_term();
    if (at(Tok::Equals))
      fail(Diagnostic::Kind::Syntax, "an equation cannot head a clause",
           start.line, start.column);
    Atom head = term_to_atom(head_term, start);
    Clause c;
    c.head = std::move(head);
    if (at(Tok::ColonDash)) {
      get();
      c.body = parse_body();
    } else {
      c.body = Query::truth();  // fact
    }
    expect(Tok::Dot, "'.' ending the clause");
    return c;
  }

  std::vector<Clause> parse_clauses() {
    std::vector<Clause> out;
    while (!at(Tok::End)) out.push_back(parse_clause());
    return out;
  }

  Query parse_query_text() {
    if (at(Tok::QueryDash)) get();
    Query q = parse_body();
    if (at(Tok::Dot)) get();
    expect(Tok::End, "end of query");
    return q;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Alphabet& alphabet_;
};

}  // namespace

ParseResult<Program> parse_program(const std::string& text,
                                   const std::string& origin) {
  return parse_program_into(Program{}, text, origin);
}

ParseResult<Program> parse_program_into(Program base, const std::string& text,
                                        const std::string& origin) {
  (void)origin;
  try {
    Parser p(lex(text), base.alphabet);
    std::vector<Clause> clauses = p.parse_clauses();
    for (Clause& c : clauses) base.clauses.push_back(std::move(c));
    return {std::move(base), std::nullopt};
  } catch (const Diagnostic& d) {
    return {std::nullopt, d};
  }
}

ParseResult<Query> parse_query(const std::string& text,
                               const Alphabet& alphabet, Alphabet* extended) {
  Alphabet scratch = alphabet;
  try {
    Parser p(lex(text), scratch);
    Query q = p.parse_query_text();
    if (extended) *extended = std::move(scratch);
    return {std::move(q), std::nullopt};
  } catch (const Diagnostic& d) {
    return {std::nullopt, d};
  }
}

void ensure_constant(Program& program) {
  if (program.alphabet.has_constant()) return;
  std::string name = "o";
  for (std::size_t k = 1; program.alphabet.functors.count(name); ++k)
    name = "o" + std::to_string(k);
  program.alphabet.functors.emplace(name, 0);
}

}  // namespace eqlp
