#pragma once

#include "cdd/logic/conceptual_graph.hpp"
#include "cdd/logic/satisfaction.hpp"
#include "cdd/logic/signature.hpp"
#include "cdd/logic/structure.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace cdd::logic {

// Document layout:
//   {"signature": {"predicates": [{"name", "arity"}...], "functions": [...]},
//    "domain": [...],
//    "relations": {"R": [[a, b], ...]},            monadic tuples may be bare
//    "functions": {"f": {"table": [[args..., value], ...]}
//                  "g": {"params": ["a", "b"], "expr": "a^2 + b^2"}},
//    "interpretation": {"symbol": "structure name"},   optional
//    "ranges": {"v1": [...]}}                          optional
// Numbers and strings shaped like "p/q" are rationals; other strings are tokens.
struct StructureDocument {
  Signature signature;
  RelationalStructure structure;
  Interpretation interpretation;
};

Element element_from_json(const nlohmann::json& j);
nlohmann::json element_to_json(const Element& e);

Signature signature_from_json(const nlohmann::json& j);
nlohmann::json signature_to_json(const Signature& sig);

StructureDocument structure_from_json(const nlohmann::json& j);
nlohmann::json structure_to_json(const RelationalStructure& s);

// {"concepts": [{"name", "type", "referent"?}...],
//  "relations": [{"name", "arguments": [concept names]}...]}
ConceptualGraph graph_from_json(const nlohmann::json& j);

// One sentence per non-blank line; '#' starts a comment line.
Theory theory_from_text(std::string name, std::string_view text, const Signature& sig);

}  // namespace cdd::logic
