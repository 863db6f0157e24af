#include "cdd/logic/formula.hpp"

#include "cdd/error.hpp"

namespace cdd::logic {

TermPtr variable(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Variable;
  t->name = std::move(name);
  return t;
}

TermPtr literal(Rational value) { return literal(value, value.to_string()); }

TermPtr literal(Rational value, std::string source_text) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Literal;
  t->literal = value;
  t->name = std::move(source_text);
  return t;
}

TermPtr apply(std::string symbol, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Apply;
  t->name = std::move(symbol);
  t->args = std::move(args);
  return t;
}

namespace {

FormulaPtr node(Formula::Kind kind, std::vector<FormulaPtr> children, std::string name = {}) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->name = std::move(name);
  f->children = std::move(children);
  return f;
}

void collect_free(const Term& t, const std::set<std::string>& bound, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Variable && !bound.contains(t.name)) out.insert(t.name);
  for (const auto& a : t.args) collect_free(*a, bound, out);
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  for (const auto& t : f.terms) collect_free(*t, bound, out);
  if (f.kind == Formula::Kind::ForAll || f.kind == Formula::Kind::Exists) {
    bool was_bound = bound.contains(f.name);
    bound.insert(f.name);
    collect_free(*f.children.front(), bound, out);
    if (!was_bound) bound.erase(f.name);
    return;
  }
  for (const auto& c : f.children) collect_free(*c, bound, out);
}

void check_term(const Term& t, const Signature& sig) {
  if (t.kind != Term::Kind::Apply) return;
  auto arity = sig.function_arity(t.name);
  if (!arity) {
    if (sig.predicate_arity(t.name))
      throw Error(Errc::ArityMismatch, "predicate '" + t.name + "' used as a term");
    throw Error(Errc::UnknownSymbol, "undeclared function symbol '" + t.name + "'");
  }
  if (*arity != t.args.size())
    throw Error(Errc::ArityMismatch, "'" + t.name + "' expects " + std::to_string(*arity) +
                                         " arguments, got " + std::to_string(t.args.size()));
  for (const auto& a : t.args) check_term(*a, sig);
}

bool is_quantifier(const Formula& f) {
  return f.kind == Formula::Kind::ForAll || f.kind == Formula::Kind::Exists;
}

std::string operand(const Formula& f) {
  std::string s = to_string(f);
  return is_quantifier(f) ? "(" + s + ")" : s;
}

std::string join_terms(const std::vector<TermPtr>& terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ", ";
    out += to_string(*terms[i]);
  }
  return out;
}

}  // namespace

FormulaPtr predicate(std::string symbol, std::vector<TermPtr> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Predicate;
  f->name = std::move(symbol);
  f->terms = std::move(args);
  return f;
}

FormulaPtr equal(TermPtr lhs, TermPtr rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Equal;
  f->terms = {std::move(lhs), std::move(rhs)};
  return f;
}

FormulaPtr compare(Comparison op, TermPtr lhs, TermPtr rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Compare;
  f->comparison = op;
  f->terms = {std::move(lhs), std::move(rhs)};
  return f;
}

FormulaPtr negation(FormulaPtr f) { return node(Formula::Kind::Not, {std::move(f)}); }
FormulaPtr conjunction(FormulaPtr l, FormulaPtr r) { return node(Formula::Kind::And, {std::move(l), std::move(r)}); }
FormulaPtr disjunction(FormulaPtr l, FormulaPtr r) { return node(Formula::Kind::Or, {std::move(l), std::move(r)}); }
FormulaPtr implication(FormulaPtr l, FormulaPtr r) { return node(Formula::Kind::Implies, {std::move(l), std::move(r)}); }
FormulaPtr forall(std::string var, FormulaPtr body) { return node(Formula::Kind::ForAll, {std::move(body)}, std::move(var)); }
FormulaPtr exists(std::string var, FormulaPtr body) { return node(Formula::Kind::Exists, {std::move(body)}, std::move(var)); }

FormulaPtr conjunction_of(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) throw Error(Errc::SchemaError, "empty conjunction");
  FormulaPtr acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conjunction(acc, parts[i]);
  return acc;
}

bool structurally_equal(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if (a.kind == Term::Kind::Literal) {
    if (a.literal != b.literal) return false;
  } else if (a.name != b.name) {
    return false;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.name != b.name || a.terms.size() != b.terms.size() ||
      a.children.size() != b.children.size())
    return false;
  if (a.kind == Formula::Kind::Compare && a.comparison != b.comparison) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (!structurally_equal(*a.terms[i], *b.terms[i])) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

void check_well_formed(const Formula& f, const Signature& sig) {
  switch (f.kind) {
    case Formula::Kind::Predicate: {
      auto arity = sig.predicate_arity(f.name);
      if (!arity) throw Error(Errc::UnknownSymbol, "undeclared predicate symbol '" + f.name + "'");
      if (*arity != f.terms.size())
        throw Error(Errc::ArityMismatch, "'" + f.name + "' expects " + std::to_string(*arity) +
                                             " arguments, got " + std::to_string(f.terms.size()));
      break;
    }
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      if (sig.declares(f.name))
        throw Error(Errc::SchemaError, "quantified variable '" + f.name + "' shadows a symbol");
      break;
    default:
      break;
  }
  for (const auto& t : f.terms) check_term(*t, sig);
  for (const auto& c : f.children) check_well_formed(*c, sig);
}

std::string_view to_string(Comparison op) {
  switch (op) {
    case Comparison::Less: return "<";
    case Comparison::LessEq: return "<=";
    case Comparison::Greater: return ">";
    case Comparison::GreaterEq: return ">=";
  }
  return "?";
}

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Variable: return t.name;
    case Term::Kind::Literal: return t.literal.to_string();
    case Term::Kind::Apply:
      if (t.args.empty()) return t.name;
      return t.name + "(" + join_terms(t.args) + ")";
  }
  return {};
}

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Predicate: return f.name + "(" + join_terms(f.terms) + ")";
    case Formula::Kind::Equal: return to_string(*f.terms[0]) + " = " + to_string(*f.terms[1]);
    case Formula::Kind::Compare:
      return to_string(*f.terms[0]) + " " + std::string(to_string(f.comparison)) + " " + to_string(*f.terms[1]);
    case Formula::Kind::Not: return "not " + operand(*f.children[0]);
    case Formula::Kind::And: return "(" + operand(*f.children[0]) + " and " + operand(*f.children[1]) + ")";
    case Formula::Kind::Or: return "(" + operand(*f.children[0]) + " or " + operand(*f.children[1]) + ")";
    case Formula::Kind::Implies: return "(" + operand(*f.children[0]) + " -> " + operand(*f.children[1]) + ")";
    case Formula::Kind::ForAll: return "forall " + f.name + ". " + to_string(*f.children[0]);
    case Formula::Kind::Exists: return "exists " + f.name + ". " + to_string(*f.children[0]);
  }
  return {};
}

}  // namespace cdd::logic
