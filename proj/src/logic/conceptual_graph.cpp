#include "cdd/logic/conceptual_graph.hpp"

#include "cdd/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace cdd::logic {

std::string symbol_name(const std::string& label) {
  std::string out;
  for (char c : label) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(out.begin(), '_');
  if (is_keyword(out)) out += '_';
  return out;
}

ConceptualGraph::ConceptualGraph(std::vector<ConceptNode> concepts, std::vector<RelationNode> relations)
    : concepts_(std::move(concepts)), relations_(std::move(relations)) {
  if (concepts_.empty()) throw Error(Errc::SchemaError, "conceptual graph has no concept nodes");
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    if (concepts_[i].name.empty()) throw Error(Errc::SchemaError, "concept node without a name");
    for (std::size_t k = i + 1; k < concepts_.size(); ++k)
      if (concepts_[i].name == concepts_[k].name)
        throw Error(Errc::SchemaError, "duplicate concept node '" + concepts_[i].name + "'");
  }
  auto is_relation = [&](const std::string& n) {
    return std::any_of(relations_.begin(), relations_.end(), [&](const RelationNode& r) { return r.name == n; });
  };
  for (const auto& r : relations_) {
    if (r.arguments.empty())
      throw Error(Errc::SchemaError, "relation node '" + r.name + "' has no arguments");
    for (const auto& c : concepts_)
      if (c.name == r.name) throw Error(Errc::SchemaError, "'" + r.name + "' is both a concept and a relation");
    for (const auto& arg : r.arguments) {
      bool concept_arg = std::any_of(concepts_.begin(), concepts_.end(), [&](const ConceptNode& c) { return c.name == arg; });
      if (concept_arg) continue;
      if (is_relation(arg))
        throw Error(Errc::HigherOrderGraph, "relation '" + r.name + "' references relation '" + arg + "'");
      throw Error(Errc::SchemaError, "relation '" + r.name + "' references unknown node '" + arg + "'");
    }
  }
}

std::size_t ConceptualGraph::concept_index(const std::string& name) const {
  auto it = std::find_if(concepts_.begin(), concepts_.end(), [&](const ConceptNode& c) { return c.name == name; });
  if (it == concepts_.end()) throw Error(Errc::UnknownSymbol, "no concept node '" + name + "'");
  return static_cast<std::size_t>(it - concepts_.begin());
}

namespace {

void declare_predicate(Signature& sig, const std::string& name, std::size_t arity) {
  if (auto existing = sig.predicate_arity(name)) {
    if (*existing != arity)
      throw Error(Errc::ArityMismatch, "predicate '" + name + "' used with arities " +
                                           std::to_string(*existing) + " and " + std::to_string(arity));
    return;
  }
  sig.add_predicate(name, arity);
}

}  // namespace

GraphSentence graph_to_sentence(const ConceptualGraph& g) {
  Signature sig;
  std::vector<TermPtr> concept_terms;
  std::vector<std::string> variables;

  for (const auto& c : g.concepts()) {
    if (!c.type.empty()) declare_predicate(sig, symbol_name(c.type), 1);
  }
  for (const auto& r : g.relations()) declare_predicate(sig, symbol_name(r.name), r.arguments.size());

  for (const auto& c : g.concepts()) {
    if (c.referent) {
      std::string constant = symbol_name(*c.referent);
      if (auto arity = sig.function_arity(constant); !arity) {
        if (sig.declares(constant))
          throw Error(Errc::SchemaError, "referent '" + *c.referent + "' clashes with a predicate name");
        sig.add_function(constant, 0);
      }
      concept_terms.push_back(apply(constant));
    } else {
      std::string var = "v" + std::to_string(variables.size() + 1);
      while (sig.declares(var)) var += "_";
      variables.push_back(var);
      concept_terms.push_back(variable(var));
    }
  }

  std::vector<FormulaPtr> atoms;
  for (std::size_t i = 0; i < g.concepts().size(); ++i) {
    const auto& c = g.concepts()[i];
    if (!c.type.empty()) atoms.push_back(predicate(symbol_name(c.type), {concept_terms[i]}));
  }
  for (const auto& r : g.relations()) {
    std::vector<TermPtr> args;
    for (const auto& a : r.arguments) args.push_back(concept_terms[g.concept_index(a)]);
    atoms.push_back(predicate(symbol_name(r.name), std::move(args)));
  }

  FormulaPtr body;
  if (atoms.empty()) {
    // An untyped, unrelated graph asserts only existence.
    body = equal(concept_terms.front(), concept_terms.front());
  } else {
    body = conjunction_of(atoms);
  }
  for (auto it = variables.rbegin(); it != variables.rend(); ++it) body = exists(*it, body);

  check_well_formed(*body, sig);
  return {std::move(sig), std::move(body)};
}

GraphModel canonical_model(const ConceptualGraph& g) {
  GraphSentence gs = graph_to_sentence(g);
  GraphModel m;
  std::vector<Element> elements;
  for (const auto& c : g.concepts()) {
    Element e = Element::token(c.referent ? *c.referent : c.name);
    elements.push_back(e);
    if (!m.structure.contains(e)) m.structure.domain.push_back(e);
  }
  for (const auto& p : gs.signature.predicates()) m.structure.relations[p.name] = Relation{p.arity, {}};
  for (std::size_t i = 0; i < g.concepts().size(); ++i) {
    const auto& c = g.concepts()[i];
    if (!c.type.empty()) m.structure.relations[symbol_name(c.type)].tuples.insert({elements[i]});
  }
  for (const auto& r : g.relations()) {
    Tuple t;
    for (const auto& a : r.arguments) t.push_back(elements[g.concept_index(a)]);
    m.structure.relations[symbol_name(r.name)].tuples.insert(std::move(t));
  }
  for (const auto& c : g.concepts()) {
    if (!c.referent) continue;
    FunctionTable table{0, {{Tuple{}, Element::token(*c.referent)}}};
    m.structure.functions[symbol_name(*c.referent)] = table;
  }
  return m;
}

}  // namespace cdd::logic
