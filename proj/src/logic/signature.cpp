#include "cdd/logic/signature.hpp"

#include "cdd/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace cdd::logic {

namespace {

constexpr std::array<std::string_view, 5> kKeywords = {"forall", "exists", "and", "or", "not"};

std::optional<std::size_t> find_arity(const std::vector<SymbolDecl>& decls, std::string_view name) {
  auto it = std::find_if(decls.begin(), decls.end(), [&](const SymbolDecl& d) { return d.name == name; });
  if (it == decls.end()) return std::nullopt;
  return it->arity;
}

}  // namespace

bool is_keyword(std::string_view text) {
  return std::find(kKeywords.begin(), kKeywords.end(), text) != kKeywords.end();
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto head = static_cast<unsigned char>(text.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

Signature::Signature(std::vector<SymbolDecl> predicates, std::vector<SymbolDecl> functions) {
  for (auto& p : predicates) add_predicate(std::move(p.name), p.arity);
  for (auto& f : functions) add_function(std::move(f.name), f.arity);
}

void Signature::add_predicate(std::string name, std::size_t arity) {
  if (!is_identifier(name) || is_keyword(name))
    throw Error(Errc::SchemaError, "invalid predicate symbol '" + name + "'");
  if (arity == 0) throw Error(Errc::ArityMismatch, "predicate '" + name + "' must have arity >= 1");
  if (declares(name)) throw Error(Errc::SchemaError, "duplicate symbol '" + name + "'");
  predicates_.push_back({std::move(name), arity});
}

void Signature::add_function(std::string name, std::size_t arity) {
  if (!is_identifier(name) || is_keyword(name))
    throw Error(Errc::SchemaError, "invalid function symbol '" + name + "'");
  if (declares(name)) throw Error(Errc::SchemaError, "duplicate symbol '" + name + "'");
  functions_.push_back({std::move(name), arity});
}

std::optional<std::size_t> Signature::predicate_arity(std::string_view name) const {
  return find_arity(predicates_, name);
}

std::optional<std::size_t> Signature::function_arity(std::string_view name) const {
  return find_arity(functions_, name);
}

bool Signature::declares(std::string_view name) const {
  return predicate_arity(name).has_value() || function_arity(name).has_value();
}

}  // namespace cdd::logic
