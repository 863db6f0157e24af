#include "cdd/logic/json_io.hpp"

#include "cdd/error.hpp"
#include "cdd/logic/parser.hpp"

#include <regex>
#include <sstream>

namespace cdd::logic {

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::SchemaError, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<SymbolDecl> decls_from_json(const nlohmann::json& j) {
  std::vector<SymbolDecl> out;
  if (!j.is_array()) throw Error(Errc::SchemaError, "symbol list must be an array");
  for (const auto& d : j) {
    const auto& name = require(d, "name");
    const auto& arity = require(d, "arity");
    if (!name.is_string() || !arity.is_number_unsigned())
      throw Error(Errc::SchemaError, "symbol needs a string name and non-negative arity");
    out.push_back({name.get<std::string>(), arity.get<std::size_t>()});
  }
  return out;
}

Tuple tuple_from_json(const nlohmann::json& j) {
  if (!j.is_array()) return {element_from_json(j)};
  Tuple t;
  for (const auto& e : j) t.push_back(element_from_json(e));
  return t;
}

std::size_t relation_arity(const std::string& name, const nlohmann::json& tuples, const Signature& sig,
                           const Interpretation& interp) {
  for (const auto& p : sig.predicates())
    if (interp.target(p.name) == name) return p.arity;
  if (tuples.is_array() && !tuples.empty()) return tuples.front().is_array() ? tuples.front().size() : 1;
  return 1;
}

std::size_t function_arity(const std::string& name, const Signature& sig, const Interpretation& interp) {
  for (const auto& f : sig.functions())
    if (interp.target(f.name) == name) return f.arity;
  throw Error(Errc::SchemaError, "function table '" + name + "' does not interpret any declared symbol");
}

}  // namespace

Element element_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Element(Rational(j.get<std::int64_t>()));
  if (j.is_number_float()) return Element(Rational::parse(j.dump()));
  if (j.is_string()) {
    static const std::regex rational_shape(R"(^[+-]?\d+/\d+$)");
    const auto& s = j.get_ref<const std::string&>();
    if (std::regex_match(s, rational_shape)) return Element(Rational::parse(s));
    return Element::token(s);
  }
  throw Error(Errc::SchemaError, "domain elements must be numbers or strings");
}

nlohmann::json element_to_json(const Element& e) {
  if (!e.is_rational()) return e.token_name();
  const auto& r = e.rational();
  if (r.is_integer()) return r.numerator();
  return r.to_string();
}

Signature signature_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::SchemaError, "signature must be an object");
  std::vector<SymbolDecl> predicates, functions;
  if (j.contains("predicates")) predicates = decls_from_json(j.at("predicates"));
  if (j.contains("functions")) functions = decls_from_json(j.at("functions"));
  return Signature(std::move(predicates), std::move(functions));
}

nlohmann::json signature_to_json(const Signature& sig) {
  nlohmann::json j = {{"predicates", nlohmann::json::array()}, {"functions", nlohmann::json::array()}};
  for (const auto& p : sig.predicates()) j["predicates"].push_back({{"name", p.name}, {"arity", p.arity}});
  for (const auto& f : sig.functions()) j["functions"].push_back({{"name", f.name}, {"arity", f.arity}});
  return j;
}

StructureDocument structure_from_json(const nlohmann::json& j) {
  StructureDocument doc;
  doc.signature = signature_from_json(require(j, "signature"));

  if (j.contains("interpretation")) {
    for (const auto& [symbol, target] : j.at("interpretation").items()) {
      if (!target.is_string()) throw Error(Errc::SchemaError, "interpretation targets must be strings");
      doc.interpretation.symbol_map[symbol] = target.get<std::string>();
    }
  }

  const auto& domain = require(j, "domain");
  if (!domain.is_array()) throw Error(Errc::SchemaError, "domain must be an array");
  for (const auto& e : domain) doc.structure.domain.push_back(element_from_json(e));

  if (j.contains("relations")) {
    for (const auto& [name, tuples] : j.at("relations").items()) {
      if (!tuples.is_array()) throw Error(Errc::SchemaError, "relation '" + name + "' must be an array");
      Relation r{relation_arity(name, tuples, doc.signature, doc.interpretation), {}};
      for (const auto& t : tuples) r.tuples.insert(tuple_from_json(t));
      doc.structure.relations.emplace(name, std::move(r));
    }
  }

  if (j.contains("functions")) {
    for (const auto& [name, spec] : j.at("functions").items()) {
      if (spec.contains("expr")) {
        std::vector<std::string> params;
        if (spec.contains("params")) params = spec.at("params").get<std::vector<std::string>>();
        doc.structure.functions.emplace(name, ArithmeticExpression(std::move(params), spec.at("expr").get<std::string>()));
        continue;
      }
      FunctionTable table{function_arity(name, doc.signature, doc.interpretation), {}};
      if (spec.contains("value")) {
        table.entries.emplace(Tuple{}, element_from_json(spec.at("value")));
      } else {
        for (const auto& row : require(spec, "table")) {
          if (!row.is_array() || row.size() != table.arity + 1)
            throw Error(Errc::SchemaError, "table rows of '" + name + "' need " + std::to_string(table.arity + 1) + " entries");
          Tuple args;
          for (std::size_t k = 0; k < table.arity; ++k) args.push_back(element_from_json(row[k]));
          table.entries.emplace(std::move(args), element_from_json(row[table.arity]));
        }
      }
      doc.structure.functions.emplace(name, std::move(table));
    }
  }

  if (j.contains("ranges")) {
    for (const auto& [var, elems] : j.at("ranges").items()) {
      std::vector<Element> range;
      for (const auto& e : elems) range.push_back(element_from_json(e));
      doc.interpretation.variable_ranges[var] = std::move(range);
    }
  }

  validate(doc.signature, doc.structure, doc.interpretation);
  return doc;
}

nlohmann::json structure_to_json(const RelationalStructure& s) {
  nlohmann::json j;
  j["domain"] = nlohmann::json::array();
  for (const auto& e : s.domain) j["domain"].push_back(element_to_json(e));
  j["relations"] = nlohmann::json::object();
  for (const auto& [name, rel] : s.relations) {
    auto& tuples = j["relations"][name] = nlohmann::json::array();
    for (const auto& t : rel.tuples) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& e : t) row.push_back(element_to_json(e));
      tuples.push_back(std::move(row));
    }
  }
  j["functions"] = nlohmann::json::object();
  for (const auto& [name, fn] : s.functions) {
    if (const auto* table = std::get_if<FunctionTable>(&fn)) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& [args, value] : table->entries) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& e : args) row.push_back(element_to_json(e));
        row.push_back(element_to_json(value));
        rows.push_back(std::move(row));
      }
      j["functions"][name] = {{"table", std::move(rows)}};
    } else {
      const auto& expr = std::get<ArithmeticExpression>(fn);
      j["functions"][name] = {{"params", expr.params()}, {"expr", expr.source()}};
    }
  }
  return j;
}

ConceptualGraph graph_from_json(const nlohmann::json& j) {
  std::vector<ConceptNode> concepts;
  for (const auto& c : require(j, "concepts")) {
    ConceptNode node;
    node.name = require(c, "name").get<std::string>();
    if (c.contains("type")) node.type = c.at("type").get<std::string>();
    if (c.contains("referent") && !c.at("referent").is_null()) node.referent = c.at("referent").get<std::string>();
    concepts.push_back(std::move(node));
  }
  std::vector<RelationNode> relations;
  if (j.contains("relations")) {
    for (const auto& r : j.at("relations")) {
      relations.push_back({require(r, "name").get<std::string>(),
                           require(r, "arguments").get<std::vector<std::string>>()});
    }
  }
  return ConceptualGraph(std::move(concepts), std::move(relations));
}

Theory theory_from_text(std::string name, std::string_view text, const Signature& sig) {
  std::vector<FormulaPtr> sentences;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    sentences.push_back(parse_sentence(line, sig));
  }
  return Theory(std::move(name), sig, std::move(sentences));
}

}  // namespace cdd::logic
