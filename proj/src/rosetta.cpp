#include "cdd/rosetta.hpp"

#include "cdd/error.hpp"

#include <algorithm>
#include <limits>

namespace cdd::rosetta {

Rectangle project_orthotope(const Orthotope& o, std::size_t j, std::size_t k) {
  if (j >= o.dimension() || k >= o.dimension())
    throw Error(Errc::IndexOutOfRange, "projection index out of range");
  if (j == k) throw Error(Errc::IndexOutOfRange, "projection needs two distinct indices");
  return {o.intervals[j], o.intervals[k]};
}

namespace {

// Tightest bound per surface, or nullopt when the surface is unconstrained.
std::vector<std::optional<double>> tightest_bounds(const DesignProblem& p) {
  std::vector<std::optional<double>> bounds(p.surfaces.size());
  for (const auto& c : p.constraints) {
    auto& b = bounds[p.surface_index(c.surface)];
    b = b ? std::min(*b, c.bound) : c.bound;
  }
  return bounds;
}

Histogram value_histogram(const std::vector<double>& values, double lo, double hi) {
  Histogram h;
  const std::size_t bins = kHistogramBins;
  const double width = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;
  h.counts.assign(bins, 0);
  for (std::size_t b = 0; b < bins; ++b) h.centers.push_back(lo + width * (static_cast<double>(b) + 0.5));
  for (double v : values) {
    auto b = static_cast<std::size_t>(std::max(0.0, (v - lo) / width));
    h.counts[std::min(b, bins - 1)]++;
  }
  return h;
}

}  // namespace

RosettaReport build_report(const DesignProblem& p, const std::optional<Orthotope>& solution, std::size_t resolution,
                           const std::optional<DesignPoint>& design_point, std::uint64_t grid_cap) {
  validate_problem(p);
  const std::size_t n = p.dimension();
  const std::size_t m = p.surfaces.size();
  RosettaReport r;
  r.problem = p.name;
  for (const auto& s : p.surfaces) r.objectives.push_back(s.name());
  for (const auto& v : p.variables) r.variables.push_back(v.name);
  r.design_point = design_point ? *design_point : p.seed;
  if (r.design_point.size() != n)
    throw Error(Errc::DimensionMismatch, "design point has " + std::to_string(r.design_point.size()) + " coordinates");
  for (const auto& s : p.surfaces) {
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = sensitivity(s, j, r.design_point);
    r.q_matrix.push_back(std::move(row));
  }

  FeasibleRegion region(p);
  r.lattice = region.grid_feasible_set(resolution, grid_cap);
  r.objective_values.reserve(r.lattice.size());
  for (std::size_t f = 0; f < r.lattice.size(); ++f) {
    auto x = r.lattice.point(f);
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = evaluate(p.surfaces[i], x);
    r.objective_values.push_back(std::move(z));
  }

  if (solution) {
    if (solution->dimension() != n)
      throw Error(Errc::DimensionMismatch, "solution has " + std::to_string(solution->dimension()) + " intervals");
    r.orthotope = *solution;
    r.in_orthotope.reserve(r.lattice.size());
    for (std::size_t f = 0; f < r.lattice.size(); ++f) r.in_orthotope.push_back(solution->contains(r.lattice.point(f)));
  }

  const auto bounds = tightest_bounds(p);
  for (std::size_t row = 1; row < m; ++row)
    for (std::size_t col = 0; col < row; ++col) r.m_cells.push_back({row, col, bounds[row], bounds[col]});
  for (std::size_t row = 1; row < n; ++row)
    for (std::size_t col = 0; col < row; ++col) {
      NCell cell{row, col, std::nullopt};
      if (r.orthotope) cell.rectangle = project_orthotope(*r.orthotope, col, row);
      r.n_cells.push_back(cell);
    }

  for (std::size_t i = 0; i < m; ++i) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::vector<double> feasible_values;
    for (std::size_t f = 0; f < r.lattice.size(); ++f) {
      double z = r.objective_values[f][i];
      lo = std::min(lo, z);
      hi = std::max(hi, z);
      if (r.lattice.feasible[f]) feasible_values.push_back(z);
    }
    r.m_diagonal.push_back(value_histogram(feasible_values, lo, hi));
  }
  for (std::size_t j = 0; j < n; ++j) {
    Histogram h;
    h.centers = r.lattice.axes[j];
    h.counts.assign(h.centers.size(), 0);
    std::size_t stride = 1;
    for (std::size_t k = j + 1; k < n; ++k) stride *= r.lattice.resolution[k];
    for (std::size_t f = 0; f < r.lattice.size(); ++f)
      if (r.lattice.feasible[f]) h.counts[(f / stride) % r.lattice.resolution[j]]++;
    r.n_diagonal.push_back(std::move(h));
  }
  return r;
}

}  // namespace cdd::rosetta
