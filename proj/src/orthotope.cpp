#include "cdd/orthotope.hpp"

#include "cdd/error.hpp"
#include "cdd/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cdd {

bool Orthotope::contains(std::span<const double> x) const {
  if (x.size() != intervals.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!intervals[j].contains(x[j])) return false;
  return true;
}

bool Orthotope::contains(const Orthotope& other) const {
  if (other.intervals.size() != intervals.size()) return false;
  for (std::size_t j = 0; j < intervals.size(); ++j)
    if (!intervals[j].contains(other.intervals[j])) return false;
  return true;
}

double Orthotope::volume() const {
  double v = 1.0;
  for (const auto& iv : intervals) v *= iv.width();
  return v;
}

double Orthotope::normalized_volume(const DesignProblem& p) const {
  double v = 1.0;
  for (std::size_t j = 0; j < intervals.size(); ++j) v *= intervals[j].width() / p.variables[j].ambient.width();
  return v;
}

Orthotope Orthotope::point(std::span<const double> x) {
  Orthotope o;
  for (double v : x) o.intervals.push_back(Interval::point(v));
  return o;
}

Orthotope Orthotope::ambient(const DesignProblem& p) { return {p.ambient()}; }

std::vector<double> rank_scores(const DesignProblem& p) {
  std::vector<std::size_t> used;
  for (const auto& c : p.constraints) {
    std::size_t i = p.surface_index(c.surface);
    if (std::find(used.begin(), used.end(), i) == used.end()) used.push_back(i);
  }
  std::vector<double> score(p.dimension(), 0.0);
  for (std::size_t j = 0; j < p.dimension(); ++j)
    for (auto i : used)
      score[j] += std::abs(sensitivity(p.surfaces[i], j, p.seed)) * p.variables[j].ambient.width();
  return score;
}

Ranking auto_rank(const DesignProblem& p) {
  auto score = rank_scores(p);
  Ranking r(p.dimension());
  std::iota(r.begin(), r.end(), std::size_t{0});
  std::stable_sort(r.begin(), r.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  return r;
}

Ranking effective_ranking(const DesignProblem& p) { return p.ranking ? *p.ranking : auto_rank(p); }

namespace {

constexpr double kNegligible = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Component of {x : beta x + gamma x^2 <= r} that contains the anchor.
// Bounds may be infinite.
Interval admitted_set(double beta, double gamma, double r, double anchor, const Interval& fallback) {
  if (std::abs(gamma) < kNegligible && std::abs(beta) < kNegligible) return {-kInf, kInf};
  if (std::abs(gamma) < kNegligible) {
    double limit = r / beta;
    return beta > 0.0 ? Interval{-kInf, limit} : Interval{limit, kInf};
  }
  const double disc = beta * beta + 4.0 * gamma * r;
  if (disc <= 0.0) {
    // Concave: the term never exceeds its vertex value, which is within budget.
    // Convex: only rounding can get here since the anchor is admitted.
    return gamma < 0.0 ? Interval{-kInf, kInf} : fallback;
  }
  const double q = -0.5 * (beta + std::copysign(std::sqrt(disc), beta));
  double x1 = q / gamma;
  double x2 = q != 0.0 ? -r / q : x1;
  if (x1 > x2) std::swap(x1, x2);
  if (gamma > 0.0) return {x1, x2};
  return anchor <= 0.5 * (x1 + x2) ? Interval{-kInf, x1} : Interval{x2, kInf};
}

}  // namespace

Expansion expand_factor(const DesignProblem& p, const Orthotope& box, std::size_t j) {
  const std::size_t n = p.dimension();
  if (box.dimension() != n)
    throw Error(Errc::DimensionMismatch, "box has " + std::to_string(box.dimension()) + " intervals");
  if (j >= n) throw Error(Errc::IndexOutOfRange, "factor " + std::to_string(j) + " out of range");
  const Interval old = box.intervals[j];
  const double anchor = p.seed[j];
  if (!old.contains(anchor))
    throw Error(Errc::SeedNotContained, "interval for '" + p.variables[j].name + "' does not contain the seed");

  FeasibleRegion region(p);
  if (!region.is_box_feasible(box.intervals).feasible)
    throw Error(Errc::InfeasibleInput, "box handed to expand_factor is infeasible");

  const Interval amb = p.variables[j].ambient;
  ExpansionStep step;
  step.factor = j;
  step.before = old;
  step.degenerate = true;

  double lo = amb.lo, hi = amb.hi;
  std::string lo_by = kAmbientBinding, hi_by = kAmbientBinding;
  for (const auto& c : p.constraints) {
    const auto& s = p.surface_for(c);
    double budget = c.bound - s.beta0();
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) budget -= term_extremum(s, k, box.intervals[k], Extremum::Max).value;
    step.budgets.push_back(budget);

    const double beta = s.linear()[j], gamma = s.quadratic()[j];
    if (std::abs(beta) >= kNegligible || std::abs(gamma) >= kNegligible) step.degenerate = false;
    Interval admitted = admitted_set(beta, gamma, budget, anchor, old);
    if (admitted.lo > lo) {
      lo = admitted.lo;
      lo_by = c.surface;
    }
    if (admitted.hi < hi) {
      hi = admitted.hi;
      hi_by = c.surface;
    }
  }
  // Never shrink: a budget at or below the incoming interval clamps to it.
  lo = std::min(lo, old.lo);
  hi = std::max(hi, old.hi);

  Orthotope out = box;
  out.intervals[j] = {lo, hi};

  // Rounding in the roots can overshoot by a few ulps; pull the offending
  // endpoint back toward the incoming interval until the exact test passes.
  double nudge_lo = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo));
  double nudge_hi = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi));
  for (int iter = 0; iter < 200; ++iter) {
    auto verdict = region.is_box_feasible(out.intervals);
    if (verdict.feasible) break;
    auto worst = std::min_element(verdict.slacks.begin(), verdict.slacks.end()) - verdict.slacks.begin();
    const auto& s = p.surface_for(p.constraints[static_cast<std::size_t>(worst)]);
    double arg = term_extremum(s, j, out.intervals[j], Extremum::Max).argument;
    Interval& iv = out.intervals[j];
    if (arg < old.lo) {
      iv.lo = std::min(old.lo, iv.lo + nudge_lo);
      nudge_lo *= 2.0;
    } else if (arg > old.hi) {
      iv.hi = std::max(old.hi, iv.hi - nudge_hi);
      nudge_hi *= 2.0;
    } else {
      iv = old;
    }
  }

  step.after = out.intervals[j];
  step.lo_binding = step.after.lo <= amb.lo ? kAmbientBinding : lo_by;
  step.hi_binding = step.after.hi >= amb.hi ? kAmbientBinding : hi_by;
  step.slacks = region.is_box_feasible(out.intervals).slacks;
  return {std::move(out), std::move(step)};
}

MaximalityCertificate verify_maximality(const DesignProblem& p, const Orthotope& box, double relative_epsilon) {
  const std::size_t n = p.dimension();
  if (box.dimension() != n)
    throw Error(Errc::DimensionMismatch, "box has " + std::to_string(box.dimension()) + " intervals");
  FeasibleRegion region(p);
  if (!region.is_box_feasible(box.intervals).feasible)
    throw Error(Errc::InfeasibleInput, "box is infeasible; maximality is undefined");

  MaximalityCertificate cert;
  cert.maximal = true;
  for (std::size_t j = 0; j < n; ++j) {
    const Interval amb = p.variables[j].ambient;
    const double eps = relative_epsilon * amb.width();
    cert.epsilon.push_back(eps);
    for (FaceSide side : {FaceSide::Lower, FaceSide::Upper}) {
      FaceCertificate face;
      face.factor = j;
      face.side = side;
      const Interval iv = box.intervals[j];
      const bool at_ambient = side == FaceSide::Lower ? iv.lo - amb.lo <= eps : amb.hi - iv.hi <= eps;
      if (at_ambient) {
        face.status = FaceStatus::Ambient;
        cert.faces.push_back(face);
        continue;
      }
      Orthotope pushed = box;
      if (side == FaceSide::Lower)
        pushed.intervals[j].lo = std::max(amb.lo, iv.lo - eps);
      else
        pushed.intervals[j].hi = std::min(amb.hi, iv.hi + eps);
      auto verdict = region.is_box_feasible(pushed.intervals);
      auto worst = std::min_element(verdict.slacks.begin(), verdict.slacks.end());
      face.slack = worst == verdict.slacks.end() ? 0.0 : *worst;
      if (verdict.feasible) {
        face.status = FaceStatus::Unblocked;
        cert.maximal = false;
      } else {
        face.status = FaceStatus::Blocked;
        face.constraint = p.constraints[static_cast<std::size_t>(worst - verdict.slacks.begin())].surface;
      }
      cert.faces.push_back(face);
    }
  }
  return cert;
}

SolveResult solve_greedy(const DesignProblem& p, const std::optional<Ranking>& ranking, double relative_epsilon) {
  validate_problem(p);
  SolveResult result;
  result.ranking = ranking ? *ranking : effective_ranking(p);
  {
    DesignProblem check = p;
    check.ranking = result.ranking;
    validate_problem(check);
  }
  result.orthotope = Orthotope::point(p.seed);
  for (std::size_t j : result.ranking) {
    auto expansion = expand_factor(p, result.orthotope, j);
    result.orthotope = std::move(expansion.box);
    result.steps.push_back(std::move(expansion.step));
  }
  result.certificate = verify_maximality(p, result.orthotope, relative_epsilon);
  return result;
}

std::string_view to_string(FaceSide side) { return side == FaceSide::Lower ? "lo" : "hi"; }

std::string_view to_string(FaceStatus status) {
  switch (status) {
    case FaceStatus::Ambient: return "ambient";
    case FaceStatus::Blocked: return "blocked";
    case FaceStatus::Unblocked: return "unblocked";
  }
  return "unknown";
}

namespace {

nlohmann::json interval_to_json(const Interval& iv) { return {{"lo", iv.lo}, {"hi", iv.hi}}; }

Interval interval_from_json(const nlohmann::json& j) { return make_interval(j.at("lo").get<double>(), j.at("hi").get<double>()); }

FaceStatus face_status_from(const std::string& s) {
  if (s == "ambient") return FaceStatus::Ambient;
  if (s == "blocked") return FaceStatus::Blocked;
  if (s == "unblocked") return FaceStatus::Unblocked;
  throw Error(Errc::SchemaError, "unknown face status '" + s + "'");
}

}  // namespace

nlohmann::json orthotope_to_json(const Orthotope& o) {
  auto j = nlohmann::json::array();
  for (const auto& iv : o.intervals) j.push_back(interval_to_json(iv));
  return j;
}

Orthotope orthotope_from_json(const nlohmann::json& j) {
  Orthotope o;
  try {
    for (const auto& iv : j) o.intervals.push_back(interval_from_json(iv));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SchemaError, std::string("orthotope: ") + e.what());
  }
  return o;
}

nlohmann::json result_to_json(const SolveResult& r) {
  nlohmann::json j;
  j["orthotope"] = orthotope_to_json(r.orthotope);
  j["ranking"] = r.ranking;
  auto& steps = j["steps"] = nlohmann::json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"factor", s.factor},
                     {"before", interval_to_json(s.before)},
                     {"after", interval_to_json(s.after)},
                     {"lo_binding", s.lo_binding},
                     {"hi_binding", s.hi_binding},
                     {"budgets", s.budgets},
                     {"slacks", s.slacks},
                     {"degenerate", s.degenerate}});
  auto& cert = j["certificate"] = nlohmann::json::array();
  for (const auto& f : r.certificate.faces) {
    nlohmann::json face = {{"factor", f.factor},
                           {"side", std::string(to_string(f.side))},
                           {"status", std::string(to_string(f.status))},
                           {"epsilon", r.certificate.epsilon.at(f.factor)}};
    if (f.status == FaceStatus::Blocked) face["constraint"] = f.constraint;
    if (f.status != FaceStatus::Ambient) face["slack"] = f.slack;
    cert.push_back(std::move(face));
  }
  j["maximal"] = r.certificate.maximal;
  return j;
}

SolveResult result_from_json(const nlohmann::json& j) {
  SolveResult r;
  try {
    r.orthotope = orthotope_from_json(j.at("orthotope"));
    r.ranking = j.at("ranking").get<Ranking>();
    for (const auto& s : j.value("steps", nlohmann::json::array())) {
      ExpansionStep step;
      step.factor = s.at("factor").get<std::size_t>();
      step.before = interval_from_json(s.at("before"));
      step.after = interval_from_json(s.at("after"));
      step.lo_binding = s.at("lo_binding").get<std::string>();
      step.hi_binding = s.at("hi_binding").get<std::string>();
      step.budgets = s.at("budgets").get<std::vector<double>>();
      step.slacks = s.at("slacks").get<std::vector<double>>();
      step.degenerate = s.value("degenerate", false);
      r.steps.push_back(std::move(step));
    }
    const std::size_t n = r.orthotope.dimension();
    r.certificate.epsilon.assign(n, 0.0);
    for (const auto& f : j.value("certificate", nlohmann::json::array())) {
      FaceCertificate face;
      face.factor = f.at("factor").get<std::size_t>();
      if (face.factor >= n) throw Error(Errc::IndexOutOfRange, "certificate factor out of range");
      face.side = f.at("side").get<std::string>() == "lo" ? FaceSide::Lower : FaceSide::Upper;
      face.status = face_status_from(f.at("status").get<std::string>());
      face.constraint = f.value("constraint", std::string());
      face.slack = f.value("slack", 0.0);
      r.certificate.epsilon[face.factor] = f.value("epsilon", 0.0);
      r.certificate.faces.push_back(std::move(face));
    }
    r.certificate.maximal = j.value("maximal", false);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SchemaError, std::string("result: ") + e.what());
  }
  return r;
}

}  // namespace cdd
