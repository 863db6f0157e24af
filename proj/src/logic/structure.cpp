#include "cdd/logic/structure.hpp"

#include "cdd/error.hpp"

#include <algorithm>

namespace cdd::logic {

const Rational& Element::rational() const {
  if (auto* r = std::get_if<Rational>(&value_)) return *r;
  throw Error(Errc::TypeMismatch, "element '" + to_string() + "' is not a rational");
}

const std::string& Element::token_name() const {
  if (auto* t = std::get_if<std::string>(&value_)) return *t;
  throw Error(Errc::TypeMismatch, "element '" + to_string() + "' is not a token");
}

std::string Element::to_string() const {
  if (auto* r = std::get_if<Rational>(&value_)) return r->to_string();
  return std::get<std::string>(value_);
}

std::strong_ordering operator<=>(const Element& a, const Element& b) {
  if (a.value_.index() != b.value_.index()) return a.value_.index() <=> b.value_.index();
  if (auto* r = std::get_if<Rational>(&a.value_)) return *r <=> std::get<Rational>(b.value_);
  return std::get<std::string>(a.value_) <=> std::get<std::string>(b.value_);
}

std::size_t arity_of(const FunctionInterpretation& f) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, FunctionTable>) return v.arity;
        else return v.arity();
      },
      f);
}

bool RelationalStructure::contains(const Element& e) const {
  return std::find(domain.begin(), domain.end(), e) != domain.end();
}

const std::string& Interpretation::target(const std::string& symbol) const {
  auto it = symbol_map.find(symbol);
  return it == symbol_map.end() ? symbol : it->second;
}

namespace {

void check_tuple(const RelationalStructure& s, const Tuple& t, std::size_t arity, const std::string& owner) {
  if (t.size() != arity)
    throw Error(Errc::ArityMismatch, "tuple of '" + owner + "' has " + std::to_string(t.size()) +
                                         " entries, expected " + std::to_string(arity));
  for (const auto& e : t)
    if (!s.contains(e)) throw Error(Errc::InvalidStructure, "element " + e.to_string() + " of '" + owner + "' not in domain");
}

std::size_t count_tuples(std::size_t domain_size, std::size_t arity) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) n *= domain_size;
  return n;
}

}  // namespace

void validate(const Signature& sig, const RelationalStructure& s, const Interpretation& interp) {
  for (std::size_t i = 0; i < s.domain.size(); ++i)
    for (std::size_t k = i + 1; k < s.domain.size(); ++k)
      if (s.domain[i] == s.domain[k])
        throw Error(Errc::InvalidStructure, "duplicate domain element " + s.domain[i].to_string());

  for (const auto& [name, rel] : s.relations)
    for (const auto& t : rel.tuples) check_tuple(s, t, rel.arity, name);

  for (const auto& [name, fn] : s.functions) {
    if (const auto* table = std::get_if<FunctionTable>(&fn)) {
      for (const auto& [args, value] : table->entries) {
        check_tuple(s, args, table->arity, name);
        if (!s.contains(value))
          throw Error(Errc::InvalidStructure, "value " + value.to_string() + " of '" + name + "' not in domain");
      }
      if (table->entries.size() != count_tuples(s.domain.size(), table->arity))
        throw Error(Errc::InvalidStructure, "function table '" + name + "' is not total");
    }
  }

  for (const auto& p : sig.predicates()) {
    const auto& target = interp.target(p.name);
    auto it = s.relations.find(target);
    if (it == s.relations.end())
      throw Error(Errc::UnknownSymbol, "predicate '" + p.name + "' has no interpretation");
    if (it->second.arity != p.arity)
      throw Error(Errc::ArityMismatch, "predicate '" + p.name + "' interpreted by relation of arity " +
                                           std::to_string(it->second.arity));
  }
  for (const auto& f : sig.functions()) {
    const auto& target = interp.target(f.name);
    auto it = s.functions.find(target);
    if (it == s.functions.end())
      throw Error(Errc::UnknownSymbol, "function '" + f.name + "' has no interpretation");
    if (arity_of(it->second) != f.arity)
      throw Error(Errc::ArityMismatch, "function '" + f.name + "' interpreted with arity " +
                                           std::to_string(arity_of(it->second)));
  }
  for (const auto& [var, range] : interp.variable_ranges)
    for (const auto& e : range)
      if (!s.contains(e))
        throw Error(Errc::InvalidStructure, "range of '" + var + "' has element " + e.to_string() + " outside the domain");
}

}  // namespace cdd::logic
