#include "cdd/designspace.hpp"

#include "cdd/error.hpp"
#include "cdd/logic/parser.hpp"
#include "cdd/numfmt.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace cdd {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(Errc::SchemaError, msg); }

void check_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw Error(Errc::DimensionMismatch,
                std::string(what) + " has " + std::to_string(got) + " entries, expected " + std::to_string(want));
}

void check_permutation(std::span<const std::size_t> perm, std::size_t n, const char* what) {
  check_dim(perm.size(), n, what);
  std::vector<bool> seen(n, false);
  for (auto k : perm) {
    if (k >= n) throw Error(Errc::IndexOutOfRange, std::string(what) + ": index " + std::to_string(k));
    if (seen[k]) schema(std::string(what) + " is not a permutation");
    seen[k] = true;
  }
}

}  // namespace

std::string to_string(const ObjectiveConstraint& c) { return c.surface + " <= " + format_number(c.bound); }

std::vector<Interval> DesignProblem::ambient() const {
  std::vector<Interval> out;
  out.reserve(variables.size());
  for (const auto& v : variables) out.push_back(v.ambient);
  return out;
}

std::size_t DesignProblem::surface_index(std::string_view name) const {
  for (std::size_t i = 0; i < surfaces.size(); ++i)
    if (surfaces[i].name() == name) return i;
  throw Error(Errc::UnknownSurfaceReference, "no surface named '" + std::string(name) + "'");
}

const QuadraticResponseSurface& DesignProblem::surface_for(const ObjectiveConstraint& c) const {
  return surfaces[surface_index(c.surface)];
}

void validate_problem(const DesignProblem& p) {
  const std::size_t n = p.dimension();
  if (n == 0) schema("problem has no variables");
  std::set<std::string> names;
  for (const auto& v : p.variables) {
    if (v.name.empty()) schema("variable without a name");
    if (!names.insert(v.name).second) schema("duplicate variable '" + v.name + "'");
    if (!std::isfinite(v.ambient.lo) || !std::isfinite(v.ambient.hi) || !(v.ambient.lo < v.ambient.hi))
      schema("variable '" + v.name + "' needs finite bounds with lo < hi");
  }
  std::set<std::string> surface_names;
  for (const auto& s : p.surfaces) {
    if (!surface_names.insert(s.name()).second) schema("duplicate surface '" + s.name() + "'");
    check_dim(s.dimension(), n, ("surface '" + s.name() + "'").c_str());
  }
  for (const auto& c : p.constraints) {
    p.surface_index(c.surface);
    if (!std::isfinite(c.bound)) schema("constraint on '" + c.surface + "' has a non-finite bound");
  }
  check_dim(p.seed.size(), n, "seed");
  if (p.ranking) check_permutation(*p.ranking, n, "ranking");
  if (!std::isfinite(p.tolerance) || p.tolerance < 0.0) schema("tolerance must be finite and non-negative");

  for (std::size_t j = 0; j < n; ++j)
    if (!p.variables[j].ambient.contains(p.seed[j]))
      throw Error(Errc::InfeasibleSeed, "seed coordinate '" + p.variables[j].name + "' = " +
                                            format_number(p.seed[j]) + " lies outside its ambient bounds");
  for (const auto& c : p.constraints) {
    double slack = c.bound - evaluate(p.surface_for(c), p.seed);
    if (!(slack >= p.tolerance))
      throw Error(Errc::InfeasibleSeed,
                  "seed slack on '" + to_string(c) + "' is " + format_number(slack) + ", below tolerance");
  }
}

DesignProblem problem_from_json(const nlohmann::json& j, std::string name) {
  DesignProblem p;
  p.name = std::move(name);
  try {
    if (!j.is_object()) schema("problem document must be an object");
    if (j.contains("name")) p.name = j.at("name").get<std::string>();
    for (const auto& v : j.at("variables"))
      p.variables.push_back({v.at("name").get<std::string>(), v.value("unit", std::string()),
                             {v.at("lo").get<double>(), v.at("hi").get<double>()}});
    p.surfaces = surfaces_from_json(j.at("surfaces"));
    for (const auto& c : j.value("constraints", nlohmann::json::array())) {
      std::string op = c.value("op", std::string("<="));
      if (op != "<=")
        throw Error(Errc::UnsupportedRelation, "constraint operator '" + op + "'; only <= is supported");
      p.constraints.push_back({c.at("surface").get<std::string>(), c.at("bound").get<double>()});
    }
    p.seed = j.at("seed").get<std::vector<double>>();
    if (j.contains("ranking")) {
      const auto& r = j.at("ranking");
      if (r.is_string()) {
        if (r.get<std::string>() != "auto") schema("ranking must be \"auto\" or a list of indices");
      } else {
        p.ranking = r.get<std::vector<std::size_t>>();
      }
    }
    p.tolerance = j.value("tolerance", 1e-6);
  } catch (const nlohmann::json::exception& e) {
    schema(std::string("problem: ") + e.what());
  }
  validate_problem(p);
  return p;
}

DesignProblem load_problem(std::string_view document, std::string name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    schema(std::string("problem JSON: ") + e.what());
  }
  return problem_from_json(j, std::move(name));
}

DesignProblem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos) stem.resize(dot);
  return load_problem(buf.str(), stem);
}

nlohmann::json problem_to_json(const DesignProblem& p) {
  nlohmann::json j;
  j["name"] = p.name;
  auto& vars = j["variables"] = nlohmann::json::array();
  for (const auto& v : p.variables)
    vars.push_back({{"name", v.name}, {"unit", v.unit}, {"lo", v.ambient.lo}, {"hi", v.ambient.hi}});
  auto& surfs = j["surfaces"] = nlohmann::json::array();
  for (const auto& s : p.surfaces) surfs.push_back(surface_to_json(s));
  auto& cons = j["constraints"] = nlohmann::json::array();
  for (const auto& c : p.constraints) cons.push_back({{"surface", c.surface}, {"op", "<="}, {"bound", c.bound}});
  j["seed"] = p.seed;
  if (p.ranking)
    j["ranking"] = *p.ranking;
  else
    j["ranking"] = "auto";
  j["tolerance"] = p.tolerance;
  return j;
}

DesignProblem permute_problem(const DesignProblem& p, std::span<const std::size_t> order) {
  const std::size_t n = p.dimension();
  check_permutation(order, n, "variable order");
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

  DesignProblem q = p;
  for (std::size_t k = 0; k < n; ++k) {
    q.variables[k] = p.variables[order[k]];
    q.seed[k] = p.seed[order[k]];
  }
  q.surfaces.clear();
  for (const auto& s : p.surfaces) {
    std::vector<double> lin(n), quad(n);
    for (std::size_t k = 0; k < n; ++k) {
      lin[k] = s.linear()[order[k]];
      quad[k] = s.quadratic()[order[k]];
    }
    q.surfaces.emplace_back(s.name(), s.unit(), s.beta0(), std::move(lin), std::move(quad));
  }
  if (p.ranking)
    for (auto& r : *q.ranking) r = position[r];
  return q;
}

ObjectiveConstraint quantify_requirement(std::string_view text, const DesignProblem& p) {
  logic::Signature sig;
  for (const auto& s : p.surfaces)
    if (logic::is_identifier(s.name()) && !logic::is_keyword(s.name())) sig.add_function(s.name(), 0);

  auto f = logic::parse_formula(text, sig, logic::Closure::AllowFreeVariables);
  if (f->kind != logic::Formula::Kind::Compare)
    throw Error(Errc::UnsupportedRelation, "requirement must be a single comparison 'NAME <= NUMBER'");
  if (f->comparison != logic::Comparison::LessEq)
    throw Error(Errc::UnsupportedRelation,
                "relation '" + std::string(logic::to_string(f->comparison)) + "' is not supported; only <= is");

  const auto& lhs = *f->terms[0];
  const auto& rhs = *f->terms[1];
  if (lhs.kind == logic::Term::Kind::Variable)
    throw Error(Errc::UnknownSurfaceReference, "no surface named '" + lhs.name + "'");
  if (lhs.kind != logic::Term::Kind::Apply || !lhs.args.empty() || rhs.kind != logic::Term::Kind::Literal)
    throw Error(Errc::UnsupportedRelation, "requirement must have the form 'NAME <= NUMBER'");

  double bound = 0.0;
  const std::string& src = rhs.name;
  auto [ptr, ec] = std::from_chars(src.data(), src.data() + src.size(), bound);
  if (ec != std::errc() || ptr != src.data() + src.size()) bound = rhs.literal.to_double();
  return {lhs.name, bound};
}

PointVerdict FeasibleRegion::is_point_feasible(std::span<const double> x) const {
  const auto& p = *problem_;
  check_dim(x.size(), p.dimension(), "point");
  PointVerdict v;
  v.in_ambient = true;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!p.variables[j].ambient.contains(x[j])) v.in_ambient = false;
  v.feasible = v.in_ambient;
  v.slacks.reserve(p.constraints.size());
  for (const auto& c : p.constraints) {
    double slack = c.bound - evaluate(p.surface_for(c), x);
    v.slacks.push_back(slack);
    if (!(slack >= 0.0)) v.feasible = false;
  }
  return v;
}

BoxVerdict FeasibleRegion::is_box_feasible(std::span<const Interval> box) const {
  const auto& p = *problem_;
  check_dim(box.size(), p.dimension(), "box");
  for (std::size_t j = 0; j < box.size(); ++j)
    if (!(box[j].lo <= box[j].hi) || !p.variables[j].ambient.contains(box[j]))
      throw Error(Errc::BoxOutsideAmbient, "interval for '" + p.variables[j].name + "' is [" +
                                               format_number(box[j].lo) + ", " + format_number(box[j].hi) +
                                               "], outside its ambient bounds");
  BoxVerdict v;
  v.feasible = true;
  v.slacks.reserve(p.constraints.size());
  for (const auto& c : p.constraints) {
    double slack = c.bound - box_extremum(p.surface_for(c), box, Extremum::Max).value;
    v.slacks.push_back(slack);
    if (!(slack >= 0.0)) v.feasible = false;
  }
  return v;
}

std::vector<double> lattice_axis(const Interval& ambient, std::size_t n) {
  if (n < 2) throw Error(Errc::SchemaError, "lattice resolution must be at least 2");
  std::vector<double> axis(n);
  const double step = ambient.width() / static_cast<double>(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) axis[i] = ambient.lo + step * static_cast<double>(i);
  axis[n - 1] = ambient.hi;
  return axis;
}

DesignPoint FeasibilityLattice::point(std::size_t flat) const {
  DesignPoint x(axes.size());
  for (std::size_t j = axes.size(); j-- > 0;) {
    x[j] = axes[j][flat % resolution[j]];
    flat /= resolution[j];
  }
  return x;
}

double FeasibilityLattice::feasible_fraction() const {
  if (feasible.empty()) return 0.0;
  auto count = std::count(feasible.begin(), feasible.end(), true);
  return static_cast<double>(count) / static_cast<double>(feasible.size());
}

FeasibilityLattice FeasibleRegion::grid_feasible_set(std::size_t resolution, std::uint64_t cap) const {
  std::vector<std::size_t> res(problem_->dimension(), resolution);
  return grid_feasible_set(res, cap);
}

FeasibilityLattice FeasibleRegion::grid_feasible_set(std::span<const std::size_t> resolution,
                                                     std::uint64_t cap) const {
  const auto& p = *problem_;
  check_dim(resolution.size(), p.dimension(), "resolution");
  std::uint64_t total = 1;
  for (auto r : resolution) {
    if (r < 2) throw Error(Errc::SchemaError, "lattice resolution must be at least 2");
    if (total > cap / r) throw Error(Errc::CapExceeded, "lattice exceeds the cap of " + std::to_string(cap) + " points");
    total *= r;
  }

  FeasibilityLattice g;
  g.resolution.assign(resolution.begin(), resolution.end());
  for (std::size_t j = 0; j < p.dimension(); ++j) g.axes.push_back(lattice_axis(p.variables[j].ambient, resolution[j]));

  // Per constraint and axis, precompute the term values so each lattice point
  // costs one addition per coordinate.
  const std::size_t n = p.dimension();
  std::vector<std::vector<std::vector<double>>> terms(p.constraints.size());
  std::vector<double> offsets(p.constraints.size());
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& s = p.surface_for(p.constraints[i]);
    offsets[i] = s.beta0();
    terms[i].resize(n);
    for (std::size_t j = 0; j < n; ++j)
      for (double x : g.axes[j]) terms[i][j].push_back(s.term(j, x));
  }

  g.feasible.assign(total, true);
  std::vector<std::size_t> idx(n, 0);
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    bool ok = true;
    for (std::size_t i = 0; i < p.constraints.size() && ok; ++i) {
      double z = offsets[i];
      for (std::size_t j = 0; j < n; ++j) z += terms[i][j][idx[j]];
      ok = z <= p.constraints[i].bound;
    }
    g.feasible[flat] = ok;
    for (std::size_t j = n; j-- > 0;) {
      if (++idx[j] < resolution[j]) break;
      idx[j] = 0;
    }
  }
  return g;
}

}  // namespace cdd
