#pragma once

#include "cdd/logic/rational.hpp"
#include "cdd/logic/signature.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace cdd::logic {

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

// Constants are applications of nullary function symbols.
struct Term {
  enum class Kind { Variable, Literal, Apply };

  Kind kind = Kind::Variable;
  std::string name;  // variable or function symbol; literal source text
  Rational literal;
  std::vector<TermPtr> args;
};

enum class Comparison { Less, LessEq, Greater, GreaterEq };

struct Formula {
  enum class Kind { Predicate, Equal, Compare, Not, And, Or, Implies, ForAll, Exists };

  Kind kind = Kind::Predicate;
  std::string name;  // predicate symbol, or the bound variable of a quantifier
  Comparison comparison = Comparison::LessEq;
  std::vector<TermPtr> terms;
  std::vector<FormulaPtr> children;
};

TermPtr variable(std::string name);
TermPtr literal(Rational value);
TermPtr literal(Rational value, std::string source_text);
TermPtr apply(std::string symbol, std::vector<TermPtr> args = {});

FormulaPtr predicate(std::string symbol, std::vector<TermPtr> args);
FormulaPtr equal(TermPtr lhs, TermPtr rhs);
FormulaPtr compare(Comparison op, TermPtr lhs, TermPtr rhs);
FormulaPtr negation(FormulaPtr f);
FormulaPtr conjunction(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr disjunction(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr implication(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr forall(std::string var, FormulaPtr body);
FormulaPtr exists(std::string var, FormulaPtr body);

// Left-nested conjunction; an empty list is rejected.
FormulaPtr conjunction_of(const std::vector<FormulaPtr>& parts);

bool structurally_equal(const Term& a, const Term& b);
bool structurally_equal(const Formula& a, const Formula& b);

std::set<std::string> free_variables(const Formula& f);
bool is_sentence(const Formula& f);

// Throws UnknownSymbol / ArityMismatch when the formula is not well formed
// over the signature.
void check_well_formed(const Formula& f, const Signature& sig);

std::string to_string(const Term& t);
// Canonical concrete syntax; reparsing yields a structurally equal formula.
std::string to_string(const Formula& f);
std::string_view to_string(Comparison op);

}  // namespace cdd::logic
