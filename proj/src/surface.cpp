#include "cdd/surface.hpp"

#include "cdd/error.hpp"

#include <cmath>

namespace cdd {

Interval make_interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
    throw Error(Errc::SchemaError, "invalid interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return {lo, hi};
}

QuadraticResponseSurface::QuadraticResponseSurface(std::string name, std::string unit, double beta0,
                                                   std::vector<double> linear, std::vector<double> quadratic)
    : name_(std::move(name)), unit_(std::move(unit)), beta0_(beta0), linear_(std::move(linear)),
      quadratic_(std::move(quadratic)) {
  if (linear_.size() != quadratic_.size())
    throw Error(Errc::DimensionMismatch, "surface '" + name_ + "': " + std::to_string(linear_.size()) +
                                             " linear vs " + std::to_string(quadratic_.size()) + " quadratic coefficients");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(beta0_)) throw Error(Errc::SchemaError, "surface '" + name_ + "': non-finite beta0");
  for (std::size_t j = 0; j < linear_.size(); ++j)
    if (!finite(linear_[j]) || !finite(quadratic_[j]))
      throw Error(Errc::SchemaError, "surface '" + name_ + "': non-finite coefficient");
}

double QuadraticResponseSurface::term(std::size_t j, double x) const {
  return linear_[j] * x + quadratic_[j] * x * x;
}

namespace {

void check_dimension(const QuadraticResponseSurface& s, std::size_t n) {
  if (n != s.dimension())
    throw Error(Errc::DimensionMismatch, "surface '" + s.name() + "' has dimension " +
                                             std::to_string(s.dimension()) + ", got " + std::to_string(n));
}

}  // namespace

double evaluate(const QuadraticResponseSurface& s, std::span<const double> x) {
  check_dimension(s, x.size());
  double z = s.beta0();
  for (std::size_t j = 0; j < x.size(); ++j) z += s.term(j, x[j]);
  return z;
}

std::vector<double> gradient(const QuadraticResponseSurface& s, std::span<const double> x) {
  check_dimension(s, x.size());
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) g[j] = s.linear()[j] + 2.0 * s.quadratic()[j] * x[j];
  return g;
}

double sensitivity(const QuadraticResponseSurface& s, std::size_t j, std::span<const double> x0) {
  check_dimension(s, x0.size());
  if (j >= s.dimension())
    throw Error(Errc::IndexOutOfRange, "variable index " + std::to_string(j) + " out of range");
  return s.linear()[j] + 2.0 * s.quadratic()[j] * x0[j];
}

TermExtremum term_extremum(const QuadraticResponseSurface& s, std::size_t j, const Interval& interval,
                           Extremum mode) {
  if (j >= s.dimension())
    throw Error(Errc::IndexOutOfRange, "variable index " + std::to_string(j) + " out of range");
  const bool want_max = mode == Extremum::Max;
  auto better = [&](double candidate, double incumbent) {
    return want_max ? candidate > incumbent : candidate < incumbent;
  };

  // Candidates in ascending order of argument, so strict improvement keeps
  // the lowest argument on ties.
  TermExtremum best{s.term(j, interval.lo), interval.lo};
  const double gamma = s.quadratic()[j];
  if (gamma != 0.0) {
    const double vertex = -s.linear()[j] / (2.0 * gamma);
    if (interval.lo < vertex && vertex < interval.hi) {
      double v = s.term(j, vertex);
      if (better(v, best.value)) best = {v, vertex};
    }
  }
  if (interval.hi != interval.lo) {
    double v = s.term(j, interval.hi);
    if (better(v, best.value)) best = {v, interval.hi};
  }
  return best;
}

BoxExtremum box_extremum(const QuadraticResponseSurface& s, std::span<const Interval> box, Extremum mode) {
  check_dimension(s, box.size());
  BoxExtremum out{s.beta0(), DesignPoint(box.size())};
  for (std::size_t j = 0; j < box.size(); ++j) {
    auto e = term_extremum(s, j, box[j], mode);
    out.value += e.value;
    out.point[j] = e.argument;
  }
  return out;
}

QuadraticResponseSurface surface_from_json(const nlohmann::json& j) {
  try {
    return QuadraticResponseSurface(j.at("name").get<std::string>(), j.value("unit", std::string()),
                                    j.at("beta0").get<double>(), j.at("linear").get<std::vector<double>>(),
                                    j.at("quadratic").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SchemaError, std::string("surface: ") + e.what());
  }
}

nlohmann::json surface_to_json(const QuadraticResponseSurface& s) {
  return {{"name", s.name()},
          {"unit", s.unit()},
          {"beta0", s.beta0()},
          {"linear", s.linear()},
          {"quadratic", s.quadratic()}};
}

std::vector<QuadraticResponseSurface> surfaces_from_json(const nlohmann::json& j) {
  std::vector<QuadraticResponseSurface> out;
  if (j.is_array()) {
    for (const auto& s : j) out.push_back(surface_from_json(s));
  } else {
    out.push_back(surface_from_json(j));
  }
  return out;
}

}  // namespace cdd
