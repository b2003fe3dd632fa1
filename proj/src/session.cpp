#include "eqlp/session.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "eqlp/printer.hpp"
#include "eqlp/solver.hpp"

namespace eqlp {

SolvedForm presented_answer(const SolvedForm& sf) {
  if (sf.kind() != SolvedForm::Kind::Shape) return sf;
  std::set<std::string> avoid = sf.free_vars();
  std::map<std::string, Term> renaming;
  std::vector<std::string> bound;
  std::size_t k = 0;
  for (const std::string& z : sf.bound()) {
    std::string name;
    do {
      name = "Z" + std::to_string(++k);
    } while (avoid.count(name));
    renaming.emplace(z, Term::var(name));
    bound.push_back(name);
  }
  std::vector<std::pair<std::string, Term>> bindings;
  bindings.reserve(sf.bindings().size());
  for (const auto& [x, s] : sf.bindings())
    bindings.emplace_back(x, s.replace(renaming));
  std::vector<Atom> atoms;
  for (const Atom& a : sf.atoms()) atoms.push_back(a.replace(renaming));
  return SolvedForm::shape(std::move(bound), std::move(bindings),
                           std::move(atoms));
}

namespace {

nlohmann::ordered_json answer_json(const Answer& answer,
                                   const OracleVerdict* verdict) {
  SolvedForm shown = presented_answer(answer.eq_formula);
  nlohmann::ordered_json j;
  j["eq_formula"] = print_query(shown.to_query());
  nlohmann::ordered_json bindings = nlohmann::ordered_json::object();
  for (const auto& [x, s] : shown.bindings()) bindings[x] = print_term(s);
  j["bindings"] = std::move(bindings);
  auto part = var_partition(shown);
  j["parameters"] = std::vector<std::string>(part.param.begin(), part.param.end());
  j["bound"] = shown.bound();
  auto kernel = shown.is_true() ? std::set<std::string>{} : kernel_of(shown);
  j["kernel"] = std::vector<std::string>(kernel.begin(), kernel.end());
  if (verdict) j["verdict"] = verdict->to_string();
  return j;
}

}  // namespace

std::string emit_json(const std::vector<Answer>& answers,
                      const std::vector<OracleVerdict>* verdicts) {
  std::string out;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    const OracleVerdict* v =
        verdicts && i < verdicts->size() ? &(*verdicts)[i] : nullptr;
    out += answer_json(answers[i], v).dump();
    out += "\n";
  }
  return out;
}

std::string answer_text(const Answer& answer, const OracleVerdict* verdict) {
  SolvedForm shown = presented_answer(answer.eq_formula);
  std::string out = print_query(shown.to_query());
  out += "\n  subst: ";
  if (shown.is_true()) {
    out += "{}";
  } else {
    std::string b = "{";
    bool first = true;
    for (const auto& [x, s] : shown.bindings()) {
      if (!first) b += ", ";
      first = false;
      b += x + " = " + print_term(s);
    }
    b += "}";
    out += b;
    if (!shown.bound().empty()) {
      out += "  fresh: ";
      for (std::size_t i = 0; i < shown.bound().size(); ++i) {
        if (i) out += ", ";
        out += shown.bound()[i];
      }
    }
  }
  if (verdict) out += "\n  verified: " + verdict->to_string();
  return out;
}

namespace {

struct LoadedProgram {
  Program program;
  bool ok = false;
};

LoadedProgram load_programs(const SessionConfig& config, std::ostream& err) {
  LoadedProgram lp;
  Program program;
  for (const std::string& path : config.program_paths) {
    std::ifstream in(path);
    if (!in) {
      err << "error: cannot open program file '" << path << "'\n";
      return lp;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto res = parse_program_into(std::move(program), buf.str(), path);
    if (!res.ok()) {
      err << path << ": " << res.diagnostic->to_string() << "\n";
      return lp;
    }
    program = std::move(*res.value);
  }
  ensure_constant(program);
  lp.program = std::move(program);
  lp.ok = true;
  return lp;
}

ComputationMethod method_of(const SessionConfig& config) {
  ComputationMethod cm;
  cm.selection = config.selection;
  cm.seed = config.seed.value_or(0);
  return cm;
}

// Runs one query; returns 0 (answers), 1 (none) or 2 (diagnostic).
int run_query(const Program& program, const SessionConfig& config,
              const std::string& query_text, std::ostream& out,
              std::ostream& err) {
  Alphabet extended;
  auto parsed = parse_query(query_text, program.alphabet, &extended);
  if (!parsed.ok()) {
    err << parsed.diagnostic->to_string() << "\n";
    return 2;
  }
  const Query& q = *parsed.value;

  FreshSource fresh(0);  // reset per query: identical runs print identically
  DeriveLimits limits{config.max_depth, config.max_answers};
  DeriveResult result =
      derive(program, q, method_of(config), limits, fresh);

  std::vector<OracleVerdict> verdicts;
  if (config.verify && !result.answers.empty()) {
    UniverseBound u = enumerate_universe(extended, config.universe_depth);
    TpPowerCache powers(program, u);
    for (const Answer& a : result.answers)
      verdicts.push_back(check_correct_answer(program, a.eq_formula, q, u,
                                              config.verify_max_n, &powers));
  }

  if (config.json) {
    out << emit_json(result.answers, config.verify ? &verdicts : nullptr);
  } else {
    for (std::size_t i = 0; i < result.answers.size(); ++i) {
      const OracleVerdict* v =
          config.verify && i < verdicts.size() ? &verdicts[i] : nullptr;
      out << answer_text(result.answers[i], v) << "\n";
      if (config.trace && i < result.refutations.size()) {
        const Derivation& d = result.refutations[i];
        for (std::size_t k = 0; k < d.nodes.size(); ++k) {
          const DerivationNode& n = d.nodes[k];
          out << "  step " << k << ":";
          if (!n.clause_choices.empty()) {
            out << " [clauses";
            for (std::size_t ci : n.clause_choices) out << " " << ci;
            out << "]";
          }
          out << " " << print_query(n.query) << "\n";
        }
      }
    }
    if (result.answers.empty()) out << "no\n";
  }
  return result.answers.empty() ? 1 : 0;
}

int repl(Program program, const SessionConfig& config, std::istream& in,
         std::ostream& out, std::ostream& err) {
  SessionConfig cfg = config;
  std::string line;
  out << "eqlp. commands: :quit, :load FILE, :verify on|off; queries end with '.'\n";
  while (true) {
    out << "?- " << std::flush;
    if (!std::getline(in, line)) break;
    std::string trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t'))
      trimmed.pop_back();
    std::size_t start = trimmed.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    trimmed = trimmed.substr(start);

    if (trimmed == ":quit" || trimmed == ":q") break;
    if (trimmed.rfind(":load ", 0) == 0) {
      std::string path = trimmed.substr(6);
      std::ifstream f(path);
      if (!f) {
        err << "error: cannot open '" << path << "'\n";
        continue;
      }
      std::stringstream buf;
      buf << f.rdbuf();
      auto res = parse_program_into(std::move(program), buf.str(), path);
      if (!res.ok()) {
        err << path << ": " << res.diagnostic->to_string() << "\n";
        // program was consumed; reload from scratch
        auto lp = load_programs(cfg, err);
        if (!lp.ok) return 2;
        program = std::move(lp.program);
        continue;
      }
      program = std::move(*res.value);
      ensure_constant(program);
      out << "loaded " << path << "\n";
      continue;
    }
    if (trimmed == ":verify on") {
      cfg.verify = true;
      continue;
    }
    if (trimmed == ":verify off") {
      cfg.verify = false;
      continue;
    }

    Alphabet extended;
    auto parsed = parse_query(trimmed, program.alphabet, &extended);
    if (!parsed.ok()) {
      err << parsed.diagnostic->to_string() << "\n";
      continue;
    }
    FreshSource fresh(0);
    DeriveLimits limits{cfg.max_depth, cfg.max_answers};
    DeriveResult result =
        derive(program, *parsed.value, method_of(cfg), limits, fresh);
    if (result.answers.empty()) {
      out << "no\n";
      continue;
    }
    std::optional<UniverseBound> u;
    std::optional<TpPowerCache> powers;
    if (cfg.verify) {
      u = enumerate_universe(extended, cfg.universe_depth);
      powers.emplace(program, *u);
    }
    for (std::size_t i = 0; i < result.answers.size(); ++i) {
      std::optional<OracleVerdict> v;
      if (cfg.verify)
        v = check_correct_answer(program, result.answers[i].eq_formula,
                                 *parsed.value, *u, cfg.verify_max_n,
                                 &*powers);
      out << answer_text(result.answers[i], v ? &*v : nullptr) << "\n";
      if (i + 1 == result.answers.size()) {
        out << "." << "\n";
        break;
      }
      out << "more? (;) " << std::flush;
      std::string cont;
      if (!std::getline(in, cont) || cont != ";") break;
    }
  }
  return 0;
}

}  // namespace

int run(const SessionConfig& config,
        const std::optional<std::string>& query_text, std::istream& in,
        std::ostream& out, std::ostream& err) {
  auto lp = load_programs(config, err);
  if (!lp.ok) return 2;
  if (query_text) return run_query(lp.program, config, *query_text, out, err);
  return repl(std::move(lp.program), config, in, out, err);
}

}  // namespace eqlp
