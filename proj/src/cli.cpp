#include "cdd/cli.hpp"

#include "cdd/designspace.hpp"
#include "cdd/error.hpp"
#include "cdd/logic/conceptual_graph.hpp"
#include "cdd/logic/json_io.hpp"
#include "cdd/logic/satisfaction.hpp"
#include "cdd/numfmt.hpp"
#include "cdd/orthotope.hpp"
#include "cdd/rosetta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace cdd::cli {

namespace {

using nlohmann::json;

std::string pretty(double v) { return format_significant(v, 10); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::SchemaError, "'" + path + "': " + e.what());
  }
}

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string field = text.substr(start, end - start);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
      throw Error(Errc::SchemaError, std::string("malformed ") + what + " '" + text + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

Ranking parse_ranking(const std::string& text) {
  Ranking r;
  for (double v : parse_numbers(text, "ranking")) {
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
      throw Error(Errc::SchemaError, "ranking entries must be variable indices");
    r.push_back(static_cast<std::size_t>(v));
  }
  return r;
}

std::uint64_t grid_cap() {
  const char* env = std::getenv("CDD_MAX_GRID");
  if (!env || !*env) return kDefaultGridCap;
  std::uint64_t cap = 0;
  std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
  if (ec != std::errc() || ptr != s.data() + s.size() || cap == 0)
    throw Error(Errc::SchemaError, "CDD_MAX_GRID must be a positive integer");
  return cap;
}

std::string interval_text(const Interval& iv) { return "[" + pretty(iv.lo) + ", " + pretty(iv.hi) + "]"; }

std::string names_in_order(const DesignProblem& p, const Ranking& r) {
  std::string s;
  for (std::size_t k = 0; k < r.size(); ++k) s += (k ? ", " : "") + p.variables[r[k]].name;
  return s;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::IoError, "cannot write '" + path.string() + "'");
}

// ---- evaluate ---------------------------------------------------------------

int cmd_evaluate(const std::string& problem_path, const std::string& point_text, bool as_json, std::ostream& out) {
  auto p = load_problem_file(problem_path);
  auto x = parse_numbers(point_text, "point");
  FeasibleRegion region(p);
  auto verdict = region.is_point_feasible(x);

  if (as_json) {
    json j;
    j["point"] = x;
    json objectives = json::object();
    for (const auto& s : p.surfaces) objectives[s.name()] = evaluate(s, x);
    j["objectives"] = objectives;
    auto& cons = j["constraints"] = json::array();
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
      cons.push_back({{"surface", p.constraints[i].surface},
                      {"bound", p.constraints[i].bound},
                      {"slack", verdict.slacks[i]}});
    j["in_ambient"] = verdict.in_ambient;
    j["feasible"] = verdict.feasible;
    out << j.dump(2) << '\n';
    return kOk;
  }

  out << "point:";
  for (std::size_t k = 0; k < x.size(); ++k) out << (k ? ", " : " ") << p.variables[k].name << "=" << pretty(x[k]);
  out << '\n';
  for (const auto& s : p.surfaces) {
    out << "  " << s.name() << " = " << pretty(evaluate(s, x));
    if (!s.unit().empty()) out << ' ' << s.unit();
    out << '\n';
  }
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    out << "  " << to_string(p.constraints[i]) << "  slack " << pretty(verdict.slacks[i])
        << (verdict.slacks[i] >= 0 ? "" : "  VIOLATED") << '\n';
  out << "in ambient: " << (verdict.in_ambient ? "yes" : "no") << '\n';
  out << "feasible: " << (verdict.feasible ? "yes" : "no") << '\n';
  return kOk;
}

// ---- solve ------------------------------------------------------------------

void print_result(const DesignProblem& p, const SolveResult& r, std::ostream& out) {
  out << "ranking: " << names_in_order(p, r.ranking) << '\n';
  for (std::size_t t = 0; t < r.steps.size(); ++t) {
    const auto& s = r.steps[t];
    out << "step " << t + 1 << ": " << p.variables[s.factor].name << ' ' << interval_text(s.before) << " -> "
        << interval_text(s.after) << "  lo bound by " << s.lo_binding << ", hi bound by " << s.hi_binding
        << (s.degenerate ? "  (no constraint depends on this variable)" : "") << '\n';
  }
  out << "orthotope:\n";
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    out << "  " << p.variables[j].name << ' ' << interval_text(r.orthotope.intervals[j]);
    if (!p.variables[j].unit.empty()) out << ' ' << p.variables[j].unit;
    out << '\n';
  }
  out << "normalized volume: " << pretty(r.orthotope.normalized_volume(p)) << '\n';
  out << "certificate: " << (r.certificate.maximal ? "maximal" : "NOT maximal") << '\n';
  for (const auto& f : r.certificate.faces) {
    out << "  " << p.variables[f.factor].name << ' ' << to_string(f.side) << ": " << to_string(f.status);
    if (f.status == FaceStatus::Blocked) out << " by " << f.constraint;
    out << '\n';
  }
}

int cmd_solve(const std::string& problem_path, const std::string& ranking_text, double epsilon,
              const std::string& out_dir, bool as_json, std::ostream& out) {
  auto p = load_problem_file(problem_path);
  std::optional<Ranking> ranking;
  if (!ranking_text.empty()) ranking = parse_ranking(ranking_text);
  auto result = solve_greedy(p, ranking, epsilon);

  json doc = result_to_json(result);
  doc["problem"] = p.name;
  const auto path = std::filesystem::path(out_dir) / (p.name + "_result.json");
  write_json_file(path, doc);

  if (as_json) {
    out << doc.dump(2) << '\n';
  } else {
    out << "problem: " << p.name << '\n';
    print_result(p, result, out);
    out << "wrote " << path.string() << '\n';
  }
  return result.certificate.maximal ? kOk : kCertificateFailed;
}

// ---- verify -----------------------------------------------------------------

int cmd_verify(const std::string& problem_path, const std::string& result_path, std::size_t resolution,
               double epsilon, bool as_json, std::ostream& out) {
  auto p = load_problem_file(problem_path);
  auto stored = result_from_json(read_json(result_path));
  if (stored.orthotope.dimension() != p.dimension())
    throw Error(Errc::DimensionMismatch, "result has " + std::to_string(stored.orthotope.dimension()) + " intervals");
  // The oracle runs first so cap violations surface before any verdict.
  auto oracle = oracle_solve(p, resolution, stored.ranking, true);

  std::vector<std::string> violations;
  const Orthotope& box = stored.orthotope;
  bool inside = true;
  for (std::size_t j = 0; j < p.dimension(); ++j)
    if (!p.variables[j].ambient.contains(box.intervals[j])) {
      inside = false;
      violations.push_back(p.variables[j].name + " interval " + interval_text(box.intervals[j]) +
                           " leaves the ambient bounds");
    }
  if (!box.contains(p.seed)) violations.push_back("orthotope does not contain the seed");

  FeasibleRegion region(p);
  std::optional<MaximalityCertificate> cert;
  if (inside) {
    auto verdict = region.is_box_feasible(box.intervals);
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
      if (verdict.slacks[i] < 0)
        violations.push_back("constraint " + to_string(p.constraints[i]) + " violated inside the box by " +
                             pretty(-verdict.slacks[i]));
    if (verdict.feasible) {
      cert = verify_maximality(p, box, epsilon);
      for (const auto& f : cert->faces)
        if (f.status == FaceStatus::Unblocked)
          violations.push_back("face " + p.variables[f.factor].name + " " + std::string(to_string(f.side)) +
                               " can still grow");
    }
  }
  // Replay: each factor, given the stored intervals of the factors ranked
  // before it, must match the brute-force lattice expansion within one step.
  Orthotope replay = Orthotope::point(p.seed);
  std::vector<Interval> replayed(p.dimension());
  for (std::size_t j : stored.ranking) {
    const Interval expected = oracle_expand(p, replay, j, resolution);
    replayed[j] = expected;
    const Interval& got = box.intervals[j];
    const double h = oracle.step[j];
    if (std::abs(got.lo - expected.lo) > h)
      violations.push_back("face " + p.variables[j].name + " lo is " + pretty(got.lo) + ", lattice expansion gives " +
                           pretty(expected.lo));
    if (std::abs(got.hi - expected.hi) > h)
      violations.push_back("face " + p.variables[j].name + " hi is " + pretty(got.hi) + ", lattice expansion gives " +
                           pretty(expected.hi));
    replay.intervals[j] = got;
  }
  const double volume = box.normalized_volume(p);
  const double oracle_volume = oracle.greedy_order.normalized_volume(p);

  const bool agree = violations.empty();
  if (as_json) {
    json j;
    j["resolution"] = resolution;
    j["oracle_greedy_order"] = orthotope_to_json(oracle.greedy_order);
    j["oracle_max_volume"] = orthotope_to_json(*oracle.max_volume);
    j["oracle_max_volume_resolution"] = oracle.max_volume_resolution;
    auto& steps = j["replay"] = json::array();
    for (std::size_t k : stored.ranking)
      steps.push_back({{"factor", k}, {"lo", replayed[k].lo}, {"hi", replayed[k].hi}});
    j["volume"] = volume;
    j["oracle_volume"] = oracle_volume;
    j["maximal"] = cert && cert->maximal;
    j["violations"] = violations;
    j["agreement"] = agree;
    out << j.dump(2) << '\n';
  } else {
    out << "oracle resolution: " << resolution << " per axis (seed inserted)\n";
    out << "oracle greedy-order box (whole path on the lattice):";
    for (const auto& iv : oracle.greedy_order.intervals) out << ' ' << interval_text(iv);
    out << "\noracle max-volume box at " << oracle.max_volume_resolution << " per axis:";
    for (const auto& iv : oracle.max_volume->intervals) out << ' ' << interval_text(iv);
    out << "\nnormalized volume: result " << pretty(volume) << ", oracle greedy-order " << pretty(oracle_volume)
        << ", oracle max-volume " << pretty(oracle.max_volume->normalized_volume(p)) << '\n';
    out << "lattice replay:";
    for (std::size_t k : stored.ranking) out << ' ' << p.variables[k].name << ' ' << interval_text(replayed[k]);
    out << '\n';
    out << "maximality: " << (cert ? (cert->maximal ? "certified" : "failed") : "not checked (box infeasible)")
        << '\n';
    for (const auto& v : violations) out << "violation: " << v << '\n';
    out << "agreement: " << (agree ? "yes" : "no") << '\n';
  }
  return agree ? kOk : kDisagreement;
}

// ---- rosetta ----------------------------------------------------------------

int cmd_rosetta(const std::string& problem_path, const std::string& solution_path, bool svg, bool csv,
                const std::string& out_dir, std::size_t resolution, const std::string& point_text,
                std::ostream& out) {
  auto p = load_problem_file(problem_path);
  std::optional<Orthotope> solution;
  if (!solution_path.empty()) solution = result_from_json(read_json(solution_path)).orthotope;
  std::optional<DesignPoint> point;
  if (!point_text.empty()) point = parse_numbers(point_text, "point");
  auto report = rosetta::build_report(p, solution, resolution, point, grid_cap());
  if (!svg && !csv) svg = true;
  std::vector<std::filesystem::path> written;
  if (csv)
    for (auto& f : rosetta::emit(report, rosetta::Format::Csv, out_dir)) written.push_back(f);
  if (svg)
    for (auto& f : rosetta::emit(report, rosetta::Format::Svg, out_dir)) written.push_back(f);
  out << "lattice: " << report.lattice.size() << " points, feasible fraction "
      << pretty(report.lattice.feasible_fraction()) << '\n';
  for (const auto& f : written) out << "wrote " << f.string() << '\n';
  return kOk;
}

// ---- logic ------------------------------------------------------------------

int cmd_logic(const std::string& theory_path, const std::string& structure_path, const std::string& graph_path,
              bool as_json, std::ostream& out) {
  if (!graph_path.empty()) {
    auto g = logic::graph_from_json(read_json(graph_path));
    auto gs = logic::graph_to_sentence(g);
    auto model = logic::canonical_model(g);
    bool sat = logic::satisfies(model.structure, *gs.sentence, model.interpretation);
    if (as_json) {
      out << json{{"signature", logic::signature_to_json(gs.signature)},
                  {"sentence", logic::to_string(*gs.sentence)},
                  {"canonical_model_satisfies", sat}}
                 .dump(2)
          << '\n';
    } else {
      out << "sentence: " << logic::to_string(*gs.sentence) << '\n';
      out << "canonical model (" << model.structure.domain.size() << " elements): " << (sat ? "satisfies" : "refutes")
          << '\n';
    }
    return kOk;
  }
  if (theory_path.empty() || structure_path.empty())
    throw Error(Errc::SchemaError, "logic needs a theory file and a structure file, or --graph");
  auto doc = logic::structure_from_json(read_json(structure_path));
  auto stem = std::filesystem::path(theory_path).stem().string();
  auto theory = logic::theory_from_text(stem, read_file(theory_path), doc.signature);
  auto verdict = logic::check_theory(theory, doc.structure, doc.interpretation);
  if (as_json) {
    json j;
    auto& per = j["sentences"] = json::array();
    for (std::size_t i = 0; i < theory.sentences().size(); ++i)
      per.push_back({{"sentence", logic::to_string(*theory.sentences()[i])}, {"holds", bool(verdict.per_sentence[i])}});
    j["model"] = verdict.is_model;
    out << j.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < theory.sentences().size(); ++i)
      out << (verdict.per_sentence[i] ? "true   " : "false  ") << logic::to_string(*theory.sentences()[i]) << '\n';
    out << "model: " << (verdict.is_model ? "yes" : "no") << '\n';
  }
  return kOk;
}

// ---- quantify ---------------------------------------------------------------

int cmd_quantify(const std::string& problem_path, const std::string& text, bool as_json, std::ostream& out) {
  auto p = load_problem_file(problem_path);
  auto c = quantify_requirement(text, p);
  if (as_json)
    out << json{{"surface", c.surface}, {"op", "<="}, {"bound", c.bound}}.dump(2) << '\n';
  else
    out << to_string(c) << '\n';
  return kOk;
}

int exit_code(const Error& e) {
  return e.code() == Errc::InfeasibleSeed ? kInfeasibleSeed : kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constraint-driven design toolkit: response surfaces, maximal orthotopes, ROSETTA reports, "
               "and finite model checking"};
  app.name("cdd");
  app.require_subcommand(1);

  std::string problem, point, ranking, out_dir = ".", result, solution, theory, structure, graph, text;
  bool as_json = false, svg = false, csv = false;
  double epsilon = kDefaultRelativeEpsilon;
  std::size_t verify_resolution = kOracleMaxResolution, rosetta_resolution = rosetta::kDefaultResolution;

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate every surface and constraint at a point");
  evaluate_cmd->add_option("problem", problem, "Problem JSON")->required();
  evaluate_cmd->add_option("--point", point, "Comma-separated coordinates")->required();
  evaluate_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* solve_cmd = app.add_subcommand("solve", "Greedy maximal orthotope through the seed");
  solve_cmd->add_option("problem", problem, "Problem JSON")->required();
  solve_cmd->add_option("--ranking", ranking, "Comma-separated variable indices, first expanded first");
  solve_cmd->add_option("--epsilon", epsilon, "Face push, as a fraction of each ambient width");
  solve_cmd->add_option("--out", out_dir, "Directory for {problem}_result.json");
  solve_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* verify_cmd = app.add_subcommand("verify", "Check a stored result against the brute-force oracle");
  verify_cmd->add_option("problem", problem, "Problem JSON")->required();
  verify_cmd->add_option("result", result, "Result JSON written by solve")->required();
  verify_cmd->add_option("--resolution", verify_resolution, "Oracle lattice points per axis (<= 201)");
  verify_cmd->add_option("--epsilon", epsilon, "Face push, as a fraction of each ambient width");
  verify_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* rosetta_cmd = app.add_subcommand("rosetta", "Emit the M, N and Q matrices as CSV or SVG");
  rosetta_cmd->add_option("problem", problem, "Problem JSON")->required();
  rosetta_cmd->add_option("--solution", solution, "Result JSON whose orthotope is projected into N");
  rosetta_cmd->add_option("--point", point, "Design point for Q (default: seed)");
  rosetta_cmd->add_option("--resolution", rosetta_resolution, "Lattice points per axis");
  rosetta_cmd->add_option("--out", out_dir, "Output directory");
  rosetta_cmd->add_flag("--svg", svg, "Write SVG (default when no format is given)");
  rosetta_cmd->add_flag("--csv", csv, "Write CSV");

  auto* logic_cmd = app.add_subcommand("logic", "Check a theory against a structure, or translate a graph");
  logic_cmd->add_option("theory", theory, "Theory text, one sentence per line");
  logic_cmd->add_option("structure", structure, "Structure JSON");
  logic_cmd->add_option("--graph", graph, "Conceptual graph JSON to translate");
  logic_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* quantify_cmd = app.add_subcommand("quantify", "Turn 'NAME <= NUMBER' into a bound constraint");
  quantify_cmd->add_option("problem", problem, "Problem JSON")->required();
  quantify_cmd->add_option("requirement", text, "Requirement sentence")->required();
  quantify_cmd->add_flag("--json", as_json, "Machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*evaluate_cmd) return cmd_evaluate(problem, point, as_json, out);
    if (*solve_cmd) return cmd_solve(problem, ranking, epsilon, out_dir, as_json, out);
    if (*verify_cmd) return cmd_verify(problem, result, verify_resolution, epsilon, as_json, out);
    if (*rosetta_cmd)
      return cmd_rosetta(problem, solution, svg, csv, out_dir, rosetta_resolution, point, out);
    if (*logic_cmd) return cmd_logic(theory, structure, graph, as_json, out);
    if (*quantify_cmd) return cmd_quantify(problem, text, as_json, out);
  } catch (const Error& e) {
    err << "cdd: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "cdd: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cdd::cli
