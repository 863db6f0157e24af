#pragma once

#include "cdd/logic/formula.hpp"
#include "cdd/logic/signature.hpp"
#include "cdd/logic/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cdd::logic {

struct ConceptNode {
  std::string name;
  std::string type;                     // monadic type predicate; empty when untyped
  std::optional<std::string> referent;  // fixed individual, becomes a constant
};

// Arguments name concept nodes, in order.
struct RelationNode {
  std::string name;
  std::vector<std::string> arguments;
};

// Bipartite concept/relation graph: [Concept 1] -> (Relation) -> [Concept 2].
class ConceptualGraph {
 public:
  ConceptualGraph(std::vector<ConceptNode> concepts, std::vector<RelationNode> relations);

  const std::vector<ConceptNode>& concepts() const noexcept { return concepts_; }
  const std::vector<RelationNode>& relations() const noexcept { return relations_; }
  std::size_t concept_index(const std::string& name) const;

 private:
  std::vector<ConceptNode> concepts_;
  std::vector<RelationNode> relations_;
};

struct GraphSentence {
  Signature signature;
  FormulaPtr sentence;
};

// One existential variable per concept without a referent (v1, v2, ... in node
// order), one constant per distinct referent, then the conjunction of the
// type atoms (node order) followed by one atom per relation node. Names are
// mapped onto identifiers by replacing other characters with '_'.
GraphSentence graph_to_sentence(const ConceptualGraph& g);

struct GraphModel {
  RelationalStructure structure;
  Interpretation interpretation;
};

// The model read off the graph itself: one element per concept node, type
// predicates and relations holding exactly on the graph's edges.
GraphModel canonical_model(const ConceptualGraph& g);

std::string symbol_name(const std::string& label);

}  // namespace cdd::logic
