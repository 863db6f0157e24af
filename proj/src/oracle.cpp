#include "cdd/error.hpp"
#include "cdd/orthotope.hpp"

#include <algorithm>
#include <cstdint>

namespace cdd {

namespace {

struct Lattice {
  std::vector<std::vector<double>> axes;
  std::vector<std::size_t> seed_index;
};

Lattice build_lattice(const DesignProblem& p, std::size_t resolution) {
  Lattice l;
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    auto axis = lattice_axis(p.variables[j].ambient, resolution);
    auto at = std::lower_bound(axis.begin(), axis.end(), p.seed[j]);
    if (at == axis.end() || *at != p.seed[j]) at = axis.insert(at, p.seed[j]);
    l.seed_index.push_back(static_cast<std::size_t>(at - axis.begin()));
    l.axes.push_back(std::move(axis));
  }
  return l;
}

// Admissibility of a lattice box given by index bounds.
class BoxTest {
 public:
  BoxTest(const DesignProblem& p, const Lattice& l) : region_(p), lattice_(l) {}

  bool operator()(std::span<const std::size_t> lo, std::span<const std::size_t> hi) const {
    const std::size_t n = lo.size();
    std::vector<Interval> box(n);
    for (std::size_t j = 0; j < n; ++j) box[j] = {lattice_.axes[j][lo[j]], lattice_.axes[j][hi[j]]};
    if (!region_.is_box_feasible(box).feasible) return false;
    DesignPoint corner(n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      for (std::size_t j = 0; j < n; ++j) corner[j] = (mask >> j) & 1u ? box[j].hi : box[j].lo;
      if (!region_.is_point_feasible(corner).feasible) return false;
    }
    return true;
  }

 private:
  FeasibleRegion region_;
  const Lattice& lattice_;
};

// Widest admissible [a, b] on axis j with the other bounds fixed; ties keep
// the smallest a. Admissibility is monotone under containment, so each scan
// stops at the first failure.
std::pair<std::size_t, std::size_t> widest_on_axis(const BoxTest& test, const Lattice& l, std::size_t j,
                                                  std::vector<std::size_t> lo, std::vector<std::size_t> hi) {
  const std::size_t s = l.seed_index[j];
  const auto& axis = l.axes[j];
  std::size_t best_a = s, best_b = s;
  double best_width = -1.0;
  for (std::size_t a = s + 1; a-- > 0;) {
    lo[j] = a;
    hi[j] = s;
    if (!test(lo, hi)) break;
    std::size_t b = s;
    while (b + 1 < axis.size()) {
      hi[j] = b + 1;
      if (!test(lo, hi)) break;
      ++b;
    }
    double width = axis[b] - axis[a];
    if (width >= best_width) {
      best_width = width;
      best_a = a;
      best_b = b;
    }
  }
  return {best_a, best_b};
}

Orthotope to_orthotope(const Lattice& l, std::span<const std::size_t> lo, std::span<const std::size_t> hi) {
  Orthotope o;
  for (std::size_t j = 0; j < lo.size(); ++j) o.intervals.push_back({l.axes[j][lo[j]], l.axes[j][hi[j]]});
  return o;
}

Orthotope max_volume_box(const DesignProblem& p, std::size_t resolution) {
  const Lattice l = build_lattice(p, resolution);
  const BoxTest test(p, l);
  const std::size_t n = p.dimension();
  std::vector<std::size_t> lo = l.seed_index, hi = l.seed_index;
  std::vector<std::size_t> best_lo = lo, best_hi = hi;
  double best_volume = -1.0;

  // Odometer over (a, b) pairs containing the seed on all axes but the last;
  // the last axis takes its widest admissible span.
  std::vector<std::size_t> a(n - 1), b(n - 1);
  auto reset_axis = [&](std::size_t k) {
    a[k] = 0;
    b[k] = l.seed_index[k];
  };
  for (std::size_t k = 0; k + 1 < n; ++k) reset_axis(k);
  while (true) {
    for (std::size_t k = 0; k + 1 < n; ++k) lo[k] = a[k], hi[k] = b[k];
    lo[n - 1] = hi[n - 1] = l.seed_index[n - 1];
    if (test(lo, hi)) {
      auto [la, lb] = widest_on_axis(test, l, n - 1, lo, hi);
      lo[n - 1] = la;
      hi[n - 1] = lb;
      double volume = to_orthotope(l, lo, hi).volume();
      if (volume > best_volume) {
        best_volume = volume;
        best_lo = lo;
        best_hi = hi;
      }
    }
    std::size_t k = 0;
    for (; k + 1 < n; ++k) {
      if (++b[k] < l.axes[k].size()) break;
      b[k] = l.seed_index[k];
      if (++a[k] <= l.seed_index[k]) break;
      reset_axis(k);
    }
    if (k + 1 >= n) break;
  }
  return to_orthotope(l, best_lo, best_hi);
}

}  // namespace

namespace {

void check_caps(const DesignProblem& p, std::size_t resolution) {
  if (p.dimension() > kOracleMaxDimension)
    throw Error(Errc::CapExceeded, "oracle supports at most " + std::to_string(kOracleMaxDimension) + " variables");
  if (resolution < 2 || resolution > kOracleMaxResolution)
    throw Error(Errc::CapExceeded,
                "oracle resolution must lie in [2, " + std::to_string(kOracleMaxResolution) + "]");
}

}  // namespace

Interval oracle_expand(const DesignProblem& p, const Orthotope& box, std::size_t j, std::size_t resolution) {
  check_caps(p, resolution);
  const std::size_t n = p.dimension();
  if (box.dimension() != n || j >= n) throw Error(Errc::DimensionMismatch, "box or factor does not match the problem");
  Lattice l = build_lattice(p, resolution);
  std::vector<std::size_t> lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == j) {
      lo[k] = hi[k] = l.seed_index[k];
      continue;
    }
    l.axes[k] = {box.intervals[k].lo, box.intervals[k].hi};
    lo[k] = 0;
    hi[k] = 1;
  }
  const BoxTest test(p, l);
  auto [a, b] = widest_on_axis(test, l, j, lo, hi);
  return {l.axes[j][a], l.axes[j][b]};
}

OracleResult oracle_solve(const DesignProblem& p, std::size_t resolution, const std::optional<Ranking>& ranking,
                          bool with_max_volume) {
  validate_problem(p);
  check_caps(p, resolution);

  OracleResult out;
  out.resolution = resolution;
  out.ranking = ranking ? *ranking : effective_ranking(p);
  for (const auto& v : p.variables) out.step.push_back(v.ambient.width() / static_cast<double>(resolution - 1));

  const Lattice l = build_lattice(p, resolution);
  const BoxTest test(p, l);
  std::vector<std::size_t> lo = l.seed_index, hi = l.seed_index;
  for (std::size_t j : out.ranking) {
    auto [a, b] = widest_on_axis(test, l, j, lo, hi);
    lo[j] = a;
    hi[j] = b;
  }
  out.greedy_order = to_orthotope(l, lo, hi);

  if (with_max_volume) {
    out.max_volume_resolution = std::min(resolution, kOracleVolumeResolution);
    out.max_volume = max_volume_box(p, out.max_volume_resolution);
  }
  return out;
}

}  // namespace cdd
