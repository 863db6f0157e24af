// Acceptance run: one PASS/FAIL line per criterion. Exit status is zero only
// when the set of failing criteria equals the set named by --expect-fail.

#include "cdd/cli.hpp"
#include "cdd/logic/enumerate.hpp"
#include "cdd/logic/json_io.hpp"
#include "cdd/logic/parser.hpp"
#include "cdd/logic/satisfaction.hpp"
#include "cdd/numfmt.hpp"
#include "cdd/orthotope.hpp"
#include "cdd/rosetta.hpp"
#include "support/oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace cdd;
using cdd::testing::MiniAtoms;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit = 0.0;  // runtime bound in seconds; 0 means none stated
};

std::string data(const std::string& leaf) { return std::string(CDD_DATA_DIR) + "/" + leaf; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Timed section; only the work inside body counts toward the runtime bound.
template <class F>
double timed(F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  body();
  return seconds_since(t0);
}

// ---------------------------------------------------------------------------

Outcome ac1_surface_constants() {
  Outcome o;
  o.limit = 1e-3;
  std::ifstream in(data("emissions_surfaces.json"));
  auto surfaces = surfaces_from_json(nlohmann::json::parse(in));
  // Reference beta0 and linear coefficients, typed in independently of the data file.
  const double beta0[3] = {5.97, -4.01, 1.22};
  const std::vector<double> beta[3] = {{-1.21, -11.31, -0.07}, {6.53, 2.89, -0.24}, {-0.34, -0.42, -0.02}};
  const std::vector<double> origin{0.0, 0.0, 0.0};
  std::vector<double> values;
  std::vector<std::vector<double>> grads;
  o.seconds = timed([&] {
    for (const auto& s : surfaces) {
      values.push_back(evaluate(s, origin));
      grads.push_back(gradient(s, origin));
    }
  });
  bool ok = surfaces.size() == 3;
  for (std::size_t i = 0; ok && i < 3; ++i) ok = values[i] == beta0[i] && grads[i] == beta[i];
  o.pass = ok;
  o.detail = ok ? "z(0) = (5.97, -4.01, 1.22), gradient(0) = linear columns, exact" : "mismatch against reference coefficients";
  return o;
}

Outcome ac2_finite_differences() {
  Outcome o;
  o.limit = 1.0;
  std::mt19937_64 rng(20240602);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  int bad = 0;
  double worst = 0.0;
  o.seconds = timed([&] {
    for (int i = 0; i < 1000; ++i) {
      const std::size_t n = dim(rng);
      auto s = cdd::testing::random_surface(rng, n, "z");
      std::vector<double> x(n);
      for (auto& v : x) v = u(rng);
      auto g = gradient(s, x);
      for (std::size_t j = 0; j < n; ++j) {
        double fd = cdd::testing::central_difference(
            [&](std::span<const double> y) { return cdd::testing::direct_eval(s, y); }, x, j, 1e-4);
        double rel = std::abs(g[j] - fd) / std::max(1.0, std::abs(g[j]));
        worst = std::max(worst, rel);
        if (rel > 1e-6) ++bad;
      }
    }
  });
  o.pass = bad == 0;
  o.detail = "1000 pairs, " + std::to_string(bad) + " outside 1e-6, worst scaled error " + format_significant(worst, 3);
  return o;
}

Outcome ac3_box_extremum() {
  Outcome o;
  o.limit = 10.0;
  std::mt19937_64 rng(20240603);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  const std::size_t grid = 101;
  int below_sample = 0, off_grid = 0;
  o.seconds = timed([&] {
    for (int i = 0; i < 500; ++i) {
      const std::size_t n = dim(rng);
      auto s = cdd::testing::random_surface(rng, n, "z");
      std::vector<Interval> box(n);
      for (auto& b : box) {
        b.lo = -2.0 + 2.0 * u01(rng);
        b.hi = b.lo + 0.05 + 2.0 * u01(rng);
      }
      auto mx = box_extremum(s, box, Extremum::Max);
      double oracle = s.beta0(), tol = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        oracle += cdd::testing::grid_term_max(s.linear()[j], s.quadratic()[j], box[j].lo, box[j].hi, grid);
        const double step = box[j].width() / static_cast<double>(grid - 1);
        tol += step * step * std::abs(s.quadratic()[j]);
      }
      if (std::abs(mx.value - oracle) > tol) ++off_grid;
      std::vector<double> x(n);
      for (int k = 0; k < 10000; ++k) {
        for (std::size_t j = 0; j < n; ++j) x[j] = box[j].lo + box[j].width() * u01(rng);
        if (evaluate(s, x) > mx.value) ++below_sample;
      }
    }
  });
  o.pass = below_sample == 0 && off_grid == 0;
  o.detail = "500 boxes x 1e4 samples: " + std::to_string(below_sample) + " samples above the maximum, " +
             std::to_string(off_grid) + " boxes off the 1-D grid oracle";
  return o;
}

Outcome ac4_greedy_solver() {
  Outcome o;
  o.limit = 60.0;
  std::mt19937_64 rng(20240601);
  int infeasible = 0, not_maximal = 0, whole_path_off = 0, step_off = 0;
  double whole_worst = 0.0, step_worst = 0.0;
  o.seconds = timed([&] {
    for (int t = 0; t < 200; ++t) {
      auto p = cdd::testing::random_problem(rng);
      auto r = solve_greedy(p);
      if (!FeasibleRegion(p).is_box_feasible(r.orthotope.intervals).feasible) ++infeasible;
      if (!verify_maximality(p, r.orthotope, 1e-6).maximal) ++not_maximal;

      // (c) as stated: the oracle's own greedy path on the 201-point lattice.
      auto oracle = oracle_solve(p, 201, r.ranking);
      double dev = 0.0;
      for (std::size_t j = 0; j < p.dimension(); ++j) {
        const auto& a = oracle.greedy_order.intervals[j];
        const auto& b = r.orthotope.intervals[j];
        dev = std::max(dev, std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi)) / oracle.step[j]);
      }
      whole_worst = std::max(whole_worst, dev);
      if (dev > 1.0) ++whole_path_off;

      // Supplementary: each brute-force step from the solver's own previous box.
      auto box = Orthotope::point(p.seed);
      double sdev = 0.0;
      for (const auto& step : r.steps) {
        auto brute = oracle_expand(p, box, step.factor, 201);
        const double h = p.variables[step.factor].ambient.width() / 200.0;
        sdev = std::max(sdev, std::max(std::abs(brute.lo - step.after.lo), std::abs(brute.hi - step.after.hi)) / h);
        box.intervals[step.factor] = step.after;
      }
      step_worst = std::max(step_worst, sdev);
      if (sdev > 1.0) ++step_off;
    }
  });
  o.pass = infeasible == 0 && not_maximal == 0 && whole_path_off == 0;
  o.detail = "200 problems: (a) " + std::to_string(200 - infeasible) + "/200 feasible, (b) " +
             std::to_string(200 - not_maximal) + "/200 maximal, (c) " + std::to_string(200 - whole_path_off) +
             "/200 within one step of the oracle greedy-order box (worst " + format_fixed(whole_worst, 2) +
             " steps); per-step oracle " + std::to_string(200 - step_off) + "/200 (worst " +
             format_fixed(step_worst, 2) + " steps)";
  return o;
}

Outcome ac5_adas() {
  Outcome o;
  auto tall_p = load_problem_file(data("adas.json"));
  auto bal_p = load_problem_file(data("adas_balanced.json"));
  SolveResult tall, bal;
  o.seconds = timed([&] {
    tall = solve_greedy(tall_p);
    bal = solve_greedy(bal_p);
  });
  // Widths relative to the ambient ranges, torque over speed.
  auto ratio = [](const DesignProblem& p, const Orthotope& b) {
    double speed = b.intervals[0].width() / p.variables[0].ambient.width();
    double torque = b.intervals[1].width() / p.variables[1].ambient.width();
    return torque / speed;
  };
  const double rt = ratio(tall_p, tall.orthotope), rb = ratio(bal_p, bal.orthotope);
  const bool certified = tall.certificate.maximal && bal.certificate.maximal &&
                         verify_maximality(tall_p, tall.orthotope).maximal &&
                         verify_maximality(bal_p, bal.orthotope).maximal &&
                         FeasibleRegion(tall_p).is_box_feasible(tall.orthotope.intervals).feasible &&
                         FeasibleRegion(bal_p).is_box_feasible(bal.orthotope.intervals).feasible;
  const bool distinct = !(tall.orthotope == bal.orthotope);
  o.pass = certified && distinct && rt >= 2.0 && rb >= 0.5 && rb <= 2.0;
  auto show = [](const Orthotope& b) {
    return "[" + format_significant(b.intervals[0].lo, 6) + ", " + format_significant(b.intervals[0].hi, 6) +
           "] RPM x [" + format_significant(b.intervals[1].lo, 6) + ", " + format_significant(b.intervals[1].hi, 6) +
           "] Nm";
  };
  o.detail = "tall " + show(tall.orthotope) + " ratio " + format_fixed(rt, 2) + "; balanced " + show(bal.orthotope) +
             " ratio " + format_fixed(rb, 2) + (certified ? "; both certified" : "; certificate failed");
  return o;
}

Outcome ac6_emissions() {
  Outcome o;
  const auto root = fs::temp_directory_path() / "cdd_acceptance_ac6";
  fs::remove_all(root);
  fs::create_directories(root / "a");
  fs::create_directories(root / "b");
  auto p = load_problem_file(data("emissions.json"));
  int solve_code = -1, verify_code = -1;
  bool q_exact = true, identical = true;
  o.seconds = timed([&] {
    std::ostringstream out, err;
    solve_code = cli::run({"solve", data("emissions.json"), "--out", root.string()}, out, err);
    verify_code = cli::run({"verify", data("emissions.json"), (root / "emissions_result.json").string(),
                            "--resolution", "201"},
                           out, err);

    auto sol = result_from_json(nlohmann::json::parse(slurp(root / "emissions_result.json")));
    auto report = rosetta::build_report(p, sol.orthotope);
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
      const auto& s = p.surface_for(p.constraints[i]);
      for (std::size_t j = 0; j < p.dimension(); ++j) {
        const double hand = s.linear()[j] + 2.0 * s.quadratic()[j] * p.seed[j];
        if (report.q_matrix[i][j] != hand) q_exact = false;
      }
    }
    for (auto fmt : {rosetta::Format::Csv, rosetta::Format::Svg}) {
      auto first = rosetta::emit(report, fmt, root / "a");
      auto second = rosetta::emit(rosetta::build_report(p, sol.orthotope), fmt, root / "b");
      for (std::size_t k = 0; k < first.size(); ++k)
        if (slurp(first[k]) != slurp(second[k])) identical = false;
    }
  });
  o.pass = solve_code == 0 && verify_code == 0 && q_exact && identical;
  o.detail = "solve exit " + std::to_string(solve_code) + ", verify exit " + std::to_string(verify_code) +
             (q_exact ? ", Q = beta_j + 2 beta_jj x_j exactly" : ", Q mismatch") +
             (identical ? ", CSV/SVG byte-identical on re-emit" : ", re-emitted files differ");
  return o;
}

// Structure over the canonical domain whose relations are read from bitmasks.
logic::RelationalStructure mask_structure(const logic::Signature& sig, int n, std::uint64_t pmask,
                                          std::uint64_t rmask) {
  logic::RelationalStructure s;
  s.domain = logic::canonical_domain(static_cast<std::size_t>(n));
  if (sig.predicate_arity("P")) {
    logic::Relation p{1, {}};
    for (int x = 0; x < n; ++x)
      if ((pmask >> x) & 1u) p.tuples.insert({logic::Element(x)});
    s.relations["P"] = p;
  }
  if (sig.predicate_arity("R")) {
    logic::Relation r{2, {}};
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if ((rmask >> (x * n + y)) & 1u) r.tuples.insert({logic::Element(x), logic::Element(y)});
    s.relations["R"] = r;
  }
  return s;
}

std::uint64_t relation_mask(const logic::RelationalStructure& s, const std::string& name, int n) {
  auto it = s.relations.find(name);
  if (it == s.relations.end()) return 0;
  std::uint64_t m = 0;
  for (const auto& t : it->second.tuples) {
    std::int64_t bit = 0;
    for (const auto& e : t) bit = bit * n + e.rational().numerator();
    m |= std::uint64_t{1} << bit;
  }
  return m;
}

Outcome ac7_model_theory() {
  Outcome o;
  o.limit = 30.0;
  std::string failures;
  auto note = [&](const std::string& what) {
    if (failures.size() < 200) failures += (failures.empty() ? "" : "; ") + what;
  };
  std::size_t structures_checked = 0;
  o.seconds = timed([&] {
    // The orthogonality sentence on the two triangles.
    auto t345 = logic::structure_from_json(nlohmann::json::parse(slurp(data("triangle_345.json"))));
    auto t234 = logic::structure_from_json(nlohmann::json::parse(slurp(data("triangle_234.json"))));
    auto theory = logic::theory_from_text("orthogonality", slurp(data("orthogonality.txt")), t345.signature);
    if (!logic::check_theory(theory, t345.structure, t345.interpretation).is_model) note("3-4-5 refuted");
    if (logic::check_theory(theory, t234.structure, t234.interpretation).is_model) note("2-3-4 satisfied");

    // Exhaustive enumeration against per-structure satisfaction and the bitmask oracle.
    std::mt19937_64 rng(20240607);
    for (auto atoms : {MiniAtoms::OnlyP, MiniAtoms::OnlyR}) {
      logic::Signature sig;
      if (atoms == MiniAtoms::OnlyP) sig.add_predicate("P", 1);
      else sig.add_predicate("R", 2);
      const std::string rel = atoms == MiniAtoms::OnlyP ? "P" : "R";
      for (int i = 0; i < 40; ++i) {
        auto mini = cdd::testing::random_mini_sentence(rng, 3, atoms);
        auto sentence = logic::parse_sentence(cdd::testing::mini_text(*mini), sig);
        for (int n = 1; n <= 3; ++n) {
          std::vector<std::uint64_t> by_satisfies, by_oracle, by_enumerate;
          logic::for_each_structure(sig, static_cast<std::size_t>(n), [&](const logic::RelationalStructure& s) {
            const auto m = relation_mask(s, rel, n);
            if (logic::satisfies(s, *sentence, {})) by_satisfies.push_back(m);
            const bool truth = atoms == MiniAtoms::OnlyP ? cdd::testing::mini_eval(*mini, n, m, 0, {0, 0, 0})
                                                         : cdd::testing::mini_eval(*mini, n, 0, m, {0, 0, 0});
            if (truth) by_oracle.push_back(m);
            ++structures_checked;
          });
          for (const auto& s : logic::enumerate_models(sig, *sentence, static_cast<std::size_t>(n)))
            by_enumerate.push_back(relation_mask(s, rel, n));
          if (by_enumerate != by_satisfies) note("enumerate vs satisfies on " + logic::to_string(*sentence));
          if (std::set(by_oracle.begin(), by_oracle.end()) != std::set(by_satisfies.begin(), by_satisfies.end()))
            note("oracle vs satisfies on " + logic::to_string(*sentence));
        }
      }
    }

    // Compositional semantics on 1000 random formulas over {P/1, R/2}.
    logic::Signature sig;
    sig.add_predicate("P", 1);
    sig.add_predicate("R", 2);
    std::uniform_int_distribution<int> size(1, 3);
    for (int i = 0; i < 1000; ++i) {
      const int n = size(rng);
      std::uniform_int_distribution<std::uint64_t> pm(0, (1u << n) - 1), rm(0, (1u << (n * n)) - 1);
      const auto pmask = pm(rng), rmask = rm(rng);
      auto s = mask_structure(sig, n, pmask, rmask);
      auto a = cdd::testing::random_mini_sentence(rng, 3);
      auto b = cdd::testing::random_mini_sentence(rng, 3);
      auto fa = logic::parse_sentence(cdd::testing::mini_text(*a), sig);
      auto fb = logic::parse_sentence(cdd::testing::mini_text(*b), sig);
      const bool ta = logic::satisfies(s, *fa, {}), tb = logic::satisfies(s, *fb, {});
      if (ta != cdd::testing::mini_eval(*a, n, pmask, rmask, {0, 0, 0})) note("truth of " + logic::to_string(*fa));
      if (logic::satisfies(s, *logic::negation(fa), {}) == ta) note("negation of " + logic::to_string(*fa));
      if (logic::satisfies(s, *logic::conjunction(fa, fb), {}) != (ta && tb)) note("conjunction");

      // Quantifier expansion: the body keeps v1 free and is checked per element.
      auto body_mini = cdd::testing::mini_close(rng, cdd::testing::random_mini(rng, 3), {true, false, false});
      auto body = logic::parse_formula(cdd::testing::mini_text(*body_mini), sig, logic::Closure::AllowFreeVariables);
      bool all = true, any = false;
      for (const auto& d : s.domain) {
        const bool h = logic::holds(s, *body, {}, {{"v1", d}});
        all = all && h;
        any = any || h;
      }
      if (logic::satisfies(s, *logic::forall("v1", body), {}) != all) note("forall expansion");
      if (logic::satisfies(s, *logic::exists("v1", body), {}) != any) note("exists expansion");
    }
  });
  o.pass = failures.empty();
  o.detail = "orthogonality 3-4-5 yes / 2-3-4 no; " + std::to_string(structures_checked) +
             " enumerated structures; 1000 compositional cases" + (failures.empty() ? "" : "; FAILED: " + failures);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> expected;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected.insert(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--expect-fail ACn]...\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1_surface_constants}, {"AC2", ac2_finite_differences}, {"AC3", ac3_box_extremum},
      {"AC4", ac4_greedy_solver},  {"AC5", ac5_adas},                {"AC6", ac6_emissions},
      {"AC7", ac7_model_theory},
  };

  std::set<std::string> failed;
  for (const auto& [id, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const bool in_time = o.limit == 0.0 || o.seconds < o.limit;
    const bool pass = o.pass && in_time;
    if (!pass) failed.insert(id);
    std::cout << id << (pass ? " PASS" : " FAIL");
    if (!pass && expected.count(id)) std::cout << " (expected red, see README)";
    std::cout << "  " << o.detail << "  [" << format_fixed(o.seconds, 4) << " s";
    if (o.limit > 0.0) std::cout << ", limit " << format_number(o.limit) << " s";
    std::cout << "]\n";
  }

  if (failed != expected) {
    std::cout << "acceptance: failing set differs from the expected set\n";
    return 1;
  }
  return 0;
}
