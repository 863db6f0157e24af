#include "cdd/logic/satisfaction.hpp"

#include "cdd/error.hpp"

namespace cdd::logic {

namespace {

class Evaluator {
 public:
  Evaluator(const RelationalStructure& s, const Interpretation& interp, const EvaluationOptions& options)
      : s_(s), interp_(interp), options_(options) {}

  Element term(const Term& t, const Assignment& a) const {
    switch (t.kind) {
      case Term::Kind::Variable: {
        auto it = a.find(t.name);
        if (it == a.end()) throw Error(Errc::FreeVariable, "unassigned variable '" + t.name + "'");
        return it->second;
      }
      case Term::Kind::Literal:
        if (t.literal.magnitude() > options_.magnitude_bound)
          throw Error(Errc::EvaluationOverflow, "literal " + t.literal.to_string() + " exceeds magnitude bound");
        return Element(t.literal);
      case Term::Kind::Apply: {
        const auto& target = interp_.target(t.name);
        auto it = s_.functions.find(target);
        if (it == s_.functions.end())
          throw Error(Errc::UnknownSymbol, "function '" + t.name + "' has no interpretation");
        Tuple args;
        args.reserve(t.args.size());
        for (const auto& arg : t.args) args.push_back(term(*arg, a));
        return apply(t.name, it->second, args);
      }
    }
    return {};
  }

  bool formula(const Formula& f, Assignment& a) const {
    switch (f.kind) {
      case Formula::Kind::Predicate: {
        const auto& target = interp_.target(f.name);
        auto it = s_.relations.find(target);
        if (it == s_.relations.end())
          throw Error(Errc::UnknownSymbol, "predicate '" + f.name + "' has no interpretation");
        Tuple args;
        args.reserve(f.terms.size());
        for (const auto& t : f.terms) args.push_back(term(*t, a));
        return it->second.tuples.contains(args);
      }
      case Formula::Kind::Equal: return term(*f.terms[0], a) == term(*f.terms[1], a);
      case Formula::Kind::Compare: {
        Rational lhs = term(*f.terms[0], a).rational();
        Rational rhs = term(*f.terms[1], a).rational();
        switch (f.comparison) {
          case Comparison::Less: return lhs < rhs;
          case Comparison::LessEq: return lhs <= rhs;
          case Comparison::Greater: return lhs > rhs;
          case Comparison::GreaterEq: return lhs >= rhs;
        }
        return false;
      }
      case Formula::Kind::Not: return !formula(*f.children[0], a);
      case Formula::Kind::And: return formula(*f.children[0], a) && formula(*f.children[1], a);
      case Formula::Kind::Or: return formula(*f.children[0], a) || formula(*f.children[1], a);
      case Formula::Kind::Implies: return !formula(*f.children[0], a) || formula(*f.children[1], a);
      case Formula::Kind::ForAll:
      case Formula::Kind::Exists: return quantified(f, a);
    }
    return false;
  }

 private:
  const std::vector<Element>& range_of(const std::string& var) const {
    auto it = interp_.variable_ranges.find(var);
    return it == interp_.variable_ranges.end() ? s_.domain : it->second;
  }

  bool quantified(const Formula& f, Assignment& a) const {
    const auto& range = range_of(f.name);
    if (range.empty()) throw Error(Errc::DomainEmpty, "quantifier over empty domain for '" + f.name + "'");
    const bool universal = f.kind == Formula::Kind::ForAll;
    std::optional<Element> saved;
    if (auto it = a.find(f.name); it != a.end()) saved = it->second;
    bool result = universal;
    for (const auto& e : range) {
      a[f.name] = e;
      bool v = formula(*f.children[0], a);
      if (universal && !v) { result = false; break; }
      if (!universal && v) { result = true; break; }
    }
    if (saved) a[f.name] = *saved;
    else a.erase(f.name);
    return result;
  }

  Element apply(const std::string& symbol, const FunctionInterpretation& fn, const Tuple& args) const {
    if (const auto* table = std::get_if<FunctionTable>(&fn)) {
      auto it = table->entries.find(args);
      if (it == table->entries.end())
        throw Error(Errc::InvalidStructure, "function '" + symbol + "' undefined at given arguments");
      return it->second;
    }
    const auto& expr = std::get<ArithmeticExpression>(fn);
    std::vector<Rational> values;
    values.reserve(args.size());
    for (const auto& e : args) values.push_back(e.rational());
    return Element(expr.evaluate(values, options_.magnitude_bound));
  }

  const RelationalStructure& s_;
  const Interpretation& interp_;
  const EvaluationOptions& options_;
};

bool has_quantifier(const Formula& f) {
  if (f.kind == Formula::Kind::ForAll || f.kind == Formula::Kind::Exists) return true;
  for (const auto& c : f.children)
    if (has_quantifier(*c)) return true;
  return false;
}

}  // namespace

bool holds(const RelationalStructure& s, const Formula& f, const Interpretation& interp,
           const Assignment& assignment, const EvaluationOptions& options) {
  Assignment a = assignment;
  return Evaluator(s, interp, options).formula(f, a);
}

bool satisfies(const RelationalStructure& s, const Formula& sentence, const Interpretation& interp,
               const EvaluationOptions& options) {
  auto free = free_variables(sentence);
  if (!free.empty()) throw Error(Errc::FreeVariable, "not a sentence: '" + *free.begin() + "' is free");
  if (s.domain.empty() && has_quantifier(sentence))
    throw Error(Errc::DomainEmpty, "quantified sentence over an empty domain");
  return holds(s, sentence, interp, {}, options);
}

Element evaluate_term(const RelationalStructure& s, const Term& t, const Interpretation& interp,
                      const Assignment& assignment, const EvaluationOptions& options) {
  return Evaluator(s, interp, options).term(t, assignment);
}

Theory::Theory(std::string name, Signature signature, std::vector<FormulaPtr> sentences)
    : name_(std::move(name)), signature_(std::move(signature)), sentences_(std::move(sentences)) {
  for (const auto& s : sentences_) {
    check_well_formed(*s, signature_);
    auto free = free_variables(*s);
    if (!free.empty()) throw Error(Errc::FreeVariable, "theory sentence has free variable '" + *free.begin() + "'");
  }
}

TheoryVerdict check_theory(const Theory& t, const RelationalStructure& s, const Interpretation& interp,
                           const EvaluationOptions& options) {
  validate(t.signature(), s, interp);
  TheoryVerdict verdict;
  verdict.is_model = true;
  for (const auto& sentence : t.sentences()) {
    bool v = satisfies(s, *sentence, interp, options);
    verdict.per_sentence.push_back(v);
    verdict.is_model = verdict.is_model && v;
  }
  return verdict;
}

}  // namespace cdd::logic
