#pragma once

#include <json.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cdd {

// Closed interval [lo, hi] with lo <= hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double x) { return {x, x}; }
  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const noexcept { return lo <= other.lo && other.hi <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Throws SchemaError unless lo <= hi and both are finite.
Interval make_interval(double lo, double hi);

using DesignPoint = std::vector<double>;

enum class Extremum { Max, Min };

// z = beta0 + sum_j beta_j x_j + sum_j beta_jj x_j^2. No interaction terms, so
// every box extremum splits into independent one-dimensional problems.
class QuadraticResponseSurface {
 public:
  QuadraticResponseSurface(std::string name, std::string unit, double beta0, std::vector<double> linear,
                           std::vector<double> quadratic);

  const std::string& name() const noexcept { return name_; }
  const std::string& unit() const noexcept { return unit_; }
  double beta0() const noexcept { return beta0_; }
  const std::vector<double>& linear() const noexcept { return linear_; }
  const std::vector<double>& quadratic() const noexcept { return quadratic_; }
  std::size_t dimension() const noexcept { return linear_.size(); }

  // beta_j x + beta_jj x^2, the coordinate-j contribution.
  double term(std::size_t j, double x) const;

 private:
  std::string name_;
  std::string unit_;
  double beta0_;
  std::vector<double> linear_;
  std::vector<double> quadratic_;
};

struct TermExtremum {
  double value;
  double argument;
};

struct BoxExtremum {
  double value;
  DesignPoint point;
};

double evaluate(const QuadraticResponseSurface& s, std::span<const double> x);

// Component j is beta_j + 2 beta_jj x_j.
std::vector<double> gradient(const QuadraticResponseSurface& s, std::span<const double> x);

// d z / d x_j at x0; the Q-matrix entry.
double sensitivity(const QuadraticResponseSurface& s, std::size_t j, std::span<const double> x0);

// Extremum of the coordinate-j term over an interval. Candidates are the two
// endpoints and, when beta_jj != 0 and it lies strictly inside, the vertex
// -beta_j / (2 beta_jj). Ties go to the lower argument.
TermExtremum term_extremum(const QuadraticResponseSurface& s, std::size_t j, const Interval& interval,
                           Extremum mode);

// Exact extremum over an axis-aligned box: beta0 plus the per-coordinate term
// extrema, with an attaining point.
BoxExtremum box_extremum(const QuadraticResponseSurface& s, std::span<const Interval> box, Extremum mode);

// {"name", "unit", "beta0", "linear": [...], "quadratic": [...]}
QuadraticResponseSurface surface_from_json(const nlohmann::json& j);
nlohmann::json surface_to_json(const QuadraticResponseSurface& s);

// Accepts either a single surface object or an array of them.
std::vector<QuadraticResponseSurface> surfaces_from_json(const nlohmann::json& j);

}  // namespace cdd
