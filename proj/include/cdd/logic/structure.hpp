#pragma once

#include "cdd/logic/arithmetic.hpp"
#include "cdd/logic/rational.hpp"
#include "cdd/logic/signature.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace cdd::logic {

// A domain element: an opaque token or an exact rational.
class Element {
 public:
  Element() = default;
  static Element token(std::string name) { return Element(std::move(name)); }
  Element(Rational value) : value_(value) {}  // NOLINT(implicit)
  Element(std::int64_t value) : value_(Rational(value)) {}  // NOLINT(implicit)

  bool is_rational() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  const std::string& token_name() const;
  std::string to_string() const;

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b);

 private:
  explicit Element(std::string token) : value_(std::move(token)) {}
  std::variant<std::string, Rational> value_;
};

using Tuple = std::vector<Element>;

struct Relation {
  std::size_t arity = 1;
  std::set<Tuple> tuples;
};

struct FunctionTable {
  std::size_t arity = 0;
  std::map<Tuple, Element> entries;
};

// Either a finite table over the domain or built-in rational arithmetic whose
// values may lie outside the domain.
using FunctionInterpretation = std::variant<FunctionTable, ArithmeticExpression>;

std::size_t arity_of(const FunctionInterpretation& f);

struct RelationalStructure {
  std::vector<Element> domain;
  std::map<std::string, Relation> relations;
  std::map<std::string, FunctionInterpretation> functions;

  bool contains(const Element& e) const;
};

// Maps signature symbols to the structure's relations and functions. Symbols
// absent from symbol_map are interpreted by the structure entry of the same
// name. variable_ranges optionally restricts the elements a named quantified
// variable ranges over (a sort per variable); each range must be a subset of
// the domain.
struct Interpretation {
  std::map<std::string, std::string> symbol_map;
  std::map<std::string, std::vector<Element>> variable_ranges;

  const std::string& target(const std::string& symbol) const;
};

// Throws InvalidStructure / ArityMismatch / UnknownSymbol when the triple is
// inconsistent: unmapped symbols, arity differences, tuples or table entries
// outside the domain, partial tables, or ranges outside the domain.
void validate(const Signature& sig, const RelationalStructure& s, const Interpretation& interp);

}  // namespace cdd::logic
