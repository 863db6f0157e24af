#pragma once

#include "cdd/logic/formula.hpp"
#include "cdd/logic/structure.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cdd::logic {

struct EvaluationOptions {
  // Bound on |numerator| and denominator of every intermediate rational.
  std::uint64_t magnitude_bound = 1'000'000'000'000'000'000ULL;
};

using Assignment = std::map<std::string, Element>;

// Tarski truth of a formula under a variable assignment. Quantifiers
// enumerate the domain (or the variable's configured range) exhaustively;
// an empty quantifier domain throws DomainEmpty.
bool holds(const RelationalStructure& s, const Formula& f, const Interpretation& interp,
           const Assignment& assignment, const EvaluationOptions& options = {});

// Sentence-only entry point; throws FreeVariable for open formulas.
bool satisfies(const RelationalStructure& s, const Formula& sentence, const Interpretation& interp,
               const EvaluationOptions& options = {});

Element evaluate_term(const RelationalStructure& s, const Term& t, const Interpretation& interp,
                      const Assignment& assignment, const EvaluationOptions& options = {});

// A named, ordered list of sentences over one signature.
class Theory {
 public:
  Theory(std::string name, Signature signature, std::vector<FormulaPtr> sentences);

  const std::string& name() const noexcept { return name_; }
  const Signature& signature() const noexcept { return signature_; }
  const std::vector<FormulaPtr>& sentences() const noexcept { return sentences_; }

 private:
  std::string name_;
  Signature signature_;
  std::vector<FormulaPtr> sentences_;
};

struct TheoryVerdict {
  std::vector<bool> per_sentence;
  bool is_model = false;
};

TheoryVerdict check_theory(const Theory& t, const RelationalStructure& s, const Interpretation& interp,
                           const EvaluationOptions& options = {});

}  // namespace cdd::logic
