#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cdd::logic {

struct SymbolDecl {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
};

// Predicate and function symbols of a first-order language. Equality is
// always available and never declared. Nullary functions are constants.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<SymbolDecl> predicates, std::vector<SymbolDecl> functions);

  void add_predicate(std::string name, std::size_t arity);
  void add_function(std::string name, std::size_t arity);

  const std::vector<SymbolDecl>& predicates() const noexcept { return predicates_; }
  const std::vector<SymbolDecl>& functions() const noexcept { return functions_; }

  std::optional<std::size_t> predicate_arity(std::string_view name) const;
  std::optional<std::size_t> function_arity(std::string_view name) const;
  bool declares(std::string_view name) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<SymbolDecl> predicates_;
  std::vector<SymbolDecl> functions_;
};

bool is_identifier(std::string_view text);
bool is_keyword(std::string_view text);

}  // namespace cdd::logic
