#pragma once

#include "cdd/logic/rational.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cdd::logic {

// Built-in rational arithmetic used to interpret function symbols over
// numeric domains, e.g. params (a, b) with body "a^2 + b^2".
// Operators: + - * / and ^ with a non-negative integer literal exponent.
class ArithmeticExpression {
 public:
  ArithmeticExpression() = default;
  ArithmeticExpression(std::vector<std::string> params, std::string_view body);

  const std::vector<std::string>& params() const noexcept { return params_; }
  const std::string& source() const noexcept { return source_; }
  std::size_t arity() const noexcept { return params_.size(); }

  // Throws EvaluationOverflow when an intermediate value's numerator or
  // denominator exceeds magnitude_bound.
  Rational evaluate(std::span<const Rational> args, std::uint64_t magnitude_bound) const;

  struct Node;

 private:
  std::vector<std::string> params_;
  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace cdd::logic
