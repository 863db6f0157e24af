#include "cdd/error.hpp"
#include "cdd/logic/conceptual_graph.hpp"
#include "cdd/logic/enumerate.hpp"
#include "cdd/logic/json_io.hpp"
#include "cdd/logic/parser.hpp"
#include "cdd/logic/satisfaction.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace cdd;
using namespace cdd::logic;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CDD_DATA_DIR) + "/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::IoError;
}

Signature pr_signature() {
  Signature sig;
  sig.add_predicate("P", 1);
  sig.add_predicate("R", 2);
  return sig;
}

RelationalStructure mask_structure(int n, std::uint64_t pmask, std::uint64_t rmask) {
  RelationalStructure s;
  s.domain = canonical_domain(static_cast<std::size_t>(n));
  Relation p{1, {}}, r{2, {}};
  for (int x = 0; x < n; ++x) {
    if ((pmask >> x) & 1u) p.tuples.insert({Element(x)});
    for (int y = 0; y < n; ++y)
      if ((rmask >> (x * n + y)) & 1u) r.tuples.insert({Element(x), Element(y)});
  }
  s.relations["P"] = p;
  s.relations["R"] = r;
  return s;
}

}  // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
  CHECK(Rational(6, 8).to_string() == "3/4");
  CHECK(Rational(-3, -4) == Rational(3, 4));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("1.5e3") == Rational(1500));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) < Rational(3, 4));
}

TEST_CASE("parse_sentence builds the orthogonality sentence") {
  Signature sig;
  sig.add_function("P1", 2);
  sig.add_function("P2", 1);
  auto f = parse_sentence("forall v1. forall v2. forall v3. P1(v1,v2) = P2(v3)", sig);
  REQUIRE(f->kind == Formula::Kind::ForAll);
  CHECK(f->name == "v1");
  const Formula* body = f.get();
  while (body->kind == Formula::Kind::ForAll) body = body->children[0].get();
  REQUIRE(body->kind == Formula::Kind::Equal);
  CHECK(body->terms[0]->name == "P1");
  CHECK(body->terms[0]->args.size() == 2);
  CHECK(body->terms[1]->name == "P2");
  CHECK(is_sentence(*f));
}

TEST_CASE("parse_sentence handles existential graphs and rejects open formulas") {
  Signature sig;
  sig.add_predicate("P", 2);
  auto f = parse_sentence("exists v1. exists v2. P(v1,v2)", sig);
  CHECK(f->kind == Formula::Kind::Exists);
  CHECK(f->children[0]->kind == Formula::Kind::Exists);

  Signature mono;
  mono.add_predicate("P", 1);
  CHECK(code_of([&] { parse_sentence("P(v1)", mono); }) == Errc::FreeVariable);
  CHECK_NOTHROW(parse_formula("P(v1)", mono, Closure::AllowFreeVariables));
}

TEST_CASE("parser errors carry codes and positions") {
  Signature sig;
  sig.add_predicate("P", 1);
  CHECK(code_of([&] { parse_sentence("forall v. Q(v)", sig); }) == Errc::UnknownSymbol);
  CHECK(code_of([&] { parse_sentence("forall v. P(v, v)", sig); }) == Errc::ArityMismatch);
  try {
    parse_sentence("forall v. P(v", sig);
    FAIL("expected a syntax error");
  } catch (const cdd::SyntaxError& e) {
    CHECK(e.position() == 13);
    CHECK(e.expected().find(')') != std::string::npos);
  }
}

TEST_CASE("precedence: implication is weakest and right associative") {
  Signature sig;
  sig.add_predicate("A", 1);
  sig.add_predicate("B", 1);
  sig.add_predicate("C", 1);
  auto f = parse_formula("A(x) -> B(x) -> C(x)", sig, Closure::AllowFreeVariables);
  REQUIRE(f->kind == Formula::Kind::Implies);
  CHECK(f->children[1]->kind == Formula::Kind::Implies);
  auto g = parse_formula("not A(x) and B(x) or C(x)", sig, Closure::AllowFreeVariables);
  REQUIRE(g->kind == Formula::Kind::Or);
  CHECK(g->children[0]->kind == Formula::Kind::And);
  CHECK(g->children[0]->children[0]->kind == Formula::Kind::Not);
}

TEST_CASE("print then parse is the identity on random formulas") {
  std::mt19937_64 rng(11);
  const auto sig = pr_signature();
  for (int i = 0; i < 300; ++i) {
    auto mini = cdd::testing::random_mini_sentence(rng, 4);
    auto f = parse_sentence(cdd::testing::mini_text(*mini), sig);
    auto again = parse_sentence(to_string(*f), sig);
    CHECK(structurally_equal(*f, *again));
    CHECK(to_string(*again) == to_string(*f));
  }
}

TEST_CASE("orthogonality holds on 3-4-5 and fails on 2-3-4") {
  auto doc345 = structure_from_json(nlohmann::json::parse(slurp("triangle_345.json")));
  auto doc234 = structure_from_json(nlohmann::json::parse(slurp("triangle_234.json")));
  const char* text = "forall v1. forall v2. forall v3. P1(v1,v2) = P2(v3)";
  auto s = parse_sentence(text, doc345.signature);
  CHECK(satisfies(doc345.structure, *s, doc345.interpretation));
  // 2^2 + 3^2 = 13 while 4^2 = 16.
  CHECK_FALSE(satisfies(doc234.structure, *s, doc234.interpretation));

  // Without sorted ranges the sentence quantifies over every side triple.
  Interpretation unsorted;
  CHECK_FALSE(satisfies(doc345.structure, *s, unsorted));
}

TEST_CASE("reflexivity of equality holds in every structure") {
  Signature sig;
  auto f = parse_sentence("forall v. v = v", sig);
  RelationalStructure s;
  s.domain = {Element::token("a"), Element::token("b"), Element(Rational(1, 2))};
  CHECK(satisfies(s, *f, {}));
}

TEST_CASE("empty domains are rejected for quantified sentences") {
  Signature sig;
  auto f = parse_sentence("forall v. v = v", sig);
  RelationalStructure empty;
  CHECK(code_of([&] { satisfies(empty, *f, {}); }) == Errc::DomainEmpty);
}

TEST_CASE("arithmetic beyond the magnitude bound overflows") {
  Signature sig;
  sig.add_function("f", 1);
  RelationalStructure s;
  s.domain = {Element(1000000)};
  s.functions["f"] = ArithmeticExpression({"x"}, "x^3");
  auto f = parse_sentence("forall v. f(v) = f(v)", sig);
  EvaluationOptions tight;
  tight.magnitude_bound = 1'000'000'000;
  CHECK(code_of([&] { satisfies(s, *f, {}, tight); }) == Errc::EvaluationOverflow);
  CHECK(satisfies(s, *f, {}));
}

TEST_CASE("compositional semantics on random formulas") {
  std::mt19937_64 rng(7);
  const auto sig = pr_signature();
  std::uniform_int_distribution<int> size(1, 3);
  for (int i = 0; i < 300; ++i) {
    const int n = size(rng);
    std::uniform_int_distribution<std::uint64_t> pm(0, (1u << n) - 1), rm(0, (1u << (n * n)) - 1);
    const auto pmask = pm(rng), rmask = rm(rng);
    auto s = mask_structure(n, pmask, rmask);
    auto a = cdd::testing::random_mini_sentence(rng, 3);
    auto b = cdd::testing::random_mini_sentence(rng, 3);
    auto fa = parse_sentence(cdd::testing::mini_text(*a), sig);
    auto fb = parse_sentence(cdd::testing::mini_text(*b), sig);
    const bool ta = satisfies(s, *fa, {}), tb = satisfies(s, *fb, {});
    CHECK(ta == cdd::testing::mini_eval(*a, n, pmask, rmask, {0, 0, 0}));
    CHECK(satisfies(s, *negation(fa), {}) == !ta);
    CHECK(satisfies(s, *conjunction(fa, fb), {}) == (ta && tb));
    CHECK(satisfies(s, *disjunction(fa, fb), {}) == (ta || tb));
  }
}

TEST_CASE("enumerate_models examples") {
  Signature p1;
  p1.add_predicate("P", 1);
  CHECK(enumerate_models(p1, *parse_sentence("exists v. P(v)", p1), 1).size() == 1);
  CHECK(enumerate_models(p1, *parse_sentence("forall v. P(v) or not P(v)", p1), 2).size() == 4);
  Signature r2;
  r2.add_predicate("R", 2);
  // Both diagonal bits forced, two off-diagonal bits free.
  CHECK(enumerate_models(r2, *parse_sentence("forall v. R(v,v)", r2), 2).size() == 4);
  CHECK(structure_count(r2, 2) == 16);
  CHECK(code_of([&] { enumerate_models(p1, *parse_sentence("exists v. P(v)", p1), 5); }) == Errc::CapExceeded);
}

TEST_CASE("enumeration order follows the relation bitmasks") {
  Signature p1;
  p1.add_predicate("P", 1);
  std::vector<std::uint64_t> masks;
  for_each_structure(p1, 2, [&](const RelationalStructure& s) {
    std::uint64_t m = 0;
    for (const auto& t : s.relations.at("P").tuples) m |= 1u << t[0].rational().numerator();
    masks.push_back(m);
  });
  CHECK(masks == std::vector<std::uint64_t>{0, 1, 2, 3});
}

TEST_CASE("function symbols of arity above two are unsupported") {
  Signature sig;
  sig.add_function("g", 3);
  CHECK(code_of([&] { enumerate_models(sig, *parse_sentence("forall v. v = v", sig), 1); }) == Errc::Unsupported);
}

TEST_CASE("check_theory reports per-sentence verdicts") {
  auto doc = structure_from_json(nlohmann::json::parse(slurp("triangle_345.json")));
  auto theory = theory_from_text("orthogonality", slurp("orthogonality.txt"), doc.signature);
  REQUIRE(theory.sentences().size() == 1);
  auto verdict = check_theory(theory, doc.structure, doc.interpretation);
  CHECK(verdict.per_sentence == std::vector<bool>{true});
  CHECK(verdict.is_model);

  Signature empty;
  Theory taut("tautology", empty, {parse_sentence("forall v. v = v", empty)});
  RelationalStructure one;
  one.domain = {Element(0)};
  CHECK(check_theory(taut, one, {}).per_sentence == std::vector<bool>{true});
}

TEST_CASE("graph_to_sentence on the ECS functionality graph") {
  auto g = graph_from_json(nlohmann::json::parse(slurp("ecs_graph.json")));
  auto gs = graph_to_sentence(g);
  CHECK(is_sentence(*gs.sentence));
  const std::string text = to_string(*gs.sentence);
  CHECK(text.find("Controls(v1, v2)") != std::string::npos);
  CHECK(text.find("Provides_Calibrations(v1, v3)") != std::string::npos);
  auto model = canonical_model(g);
  CHECK(model.structure.domain.size() == 3);
  CHECK(satisfies(model.structure, *gs.sentence, model.interpretation));
}

TEST_CASE("graph_to_sentence on a single typed concept") {
  ConceptualGraph g({{"thing", "T", std::nullopt}}, {});
  auto gs = graph_to_sentence(g);
  CHECK(to_string(*gs.sentence) == "exists v1. T(v1)");
}

TEST_CASE("referents become constants") {
  ConceptualGraph g({{"ecs", "System", std::string("ECS")}, {"engine", "Actor", std::nullopt}},
                    {{"Calibrates", {"ecs", "engine"}}});
  auto gs = graph_to_sentence(g);
  CHECK(gs.signature.function_arity("ECS") == std::optional<std::size_t>(0));
  CHECK(to_string(*gs.sentence) == "exists v1. ((System(ECS) and Actor(v1)) and Calibrates(ECS, v1))");
  auto model = canonical_model(g);
  CHECK(satisfies(model.structure, *gs.sentence, model.interpretation));
}

TEST_CASE("the constraint transformation graph translates to a satisfiable sentence") {
  auto g = graph_from_json(nlohmann::json::parse(slurp("cdd_graph.json")));
  auto gs = graph_to_sentence(g);
  CHECK(is_sentence(*gs.sentence));
  CHECK(to_string(*gs.sentence).find("Maps_To(v3, v1)") != std::string::npos);
  auto model = canonical_model(g);
  CHECK(model.structure.domain.size() <= g.concepts().size());
  CHECK(satisfies(model.structure, *gs.sentence, model.interpretation));
}

TEST_CASE("relations over relations are higher order") {
  auto build = [] {
    ConceptualGraph g({{"ECS", "System", std::nullopt}, {"Engine", "Actor", std::nullopt}},
                      {{"Provides", {"ECS", "Engine"}}, {"Includes", {"Provides", "ECS"}}});
  };
  CHECK(code_of(build) == Errc::HigherOrderGraph);
}

TEST_CASE("structure validation catches bad tables") {
  auto bad = nlohmann::json::parse(R"({
    "signature": {"predicates": [{"name": "R", "arity": 2}]},
    "domain": [0, 1],
    "relations": {"R": [[0, 2]]}
  })");
  CHECK(code_of([&] { structure_from_json(bad); }) == Errc::InvalidStructure);
}
