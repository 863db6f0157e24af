#pragma once

#include "cdd/logic/formula.hpp"
#include "cdd/logic/signature.hpp"

#include <string_view>

namespace cdd::logic {

enum class Closure { RequireSentence, AllowFreeVariables };

// Grammar (precedence low to high): '->' (right assoc), 'or', 'and', 'not',
// quantifiers "forall v." / "exists v." whose scope extends to the right,
// atoms P(t, ...), t = t, and the built-in orders t <= t, t < t, t >= t, t > t.
// A bare identifier is a constant when the signature declares it as a nullary
// function, otherwise a variable.
FormulaPtr parse_formula(std::string_view text, const Signature& sig,
                         Closure closure = Closure::RequireSentence);

inline FormulaPtr parse_sentence(std::string_view text, const Signature& sig) {
  return parse_formula(text, sig, Closure::RequireSentence);
}

}  // namespace cdd::logic
