#pragma once

#include "cdd/surface.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cdd {

struct DesignVariable {
  std::string name;
  std::string unit;
  Interval ambient;  // ambient.lo < ambient.hi
};

// surface <= bound; the only relation the model admits.
struct ObjectiveConstraint {
  std::string surface;
  double bound = 0.0;

  friend bool operator==(const ObjectiveConstraint&, const ObjectiveConstraint&) = default;
};

// Canonical text form "NAME <= BOUND"; parses back through quantify_requirement.
std::string to_string(const ObjectiveConstraint& c);

struct DesignProblem {
  std::string name;
  std::vector<DesignVariable> variables;
  std::vector<QuadraticResponseSurface> surfaces;
  std::vector<ObjectiveConstraint> constraints;
  DesignPoint seed;
  std::optional<std::vector<std::size_t>> ranking;  // nullopt means "auto"
  double tolerance = 1e-6;

  std::size_t dimension() const noexcept { return variables.size(); }
  std::vector<Interval> ambient() const;
  // Index into surfaces; throws UnknownSurfaceReference.
  std::size_t surface_index(std::string_view name) const;
  const QuadraticResponseSurface& surface_for(const ObjectiveConstraint& c) const;
};

// Enforces every DesignProblem invariant; the seed must sit inside the
// ambient box with slack >= tolerance on every constraint (InfeasibleSeed).
void validate_problem(const DesignProblem& p);

DesignProblem problem_from_json(const nlohmann::json& j, std::string name);
DesignProblem load_problem(std::string_view document, std::string name = "problem");
DesignProblem load_problem_file(const std::string& path);
nlohmann::json problem_to_json(const DesignProblem& p);

// Reorders variables so that new coordinate k is old coordinate order[k].
// Surfaces, seed and an explicit ranking are permuted consistently.
DesignProblem permute_problem(const DesignProblem& p, std::span<const std::size_t> order);

// Parses "NAME <= NUMBER" as a one-atom formula whose constants are the
// problem's surface names.
ObjectiveConstraint quantify_requirement(std::string_view text, const DesignProblem& p);

struct PointVerdict {
  bool feasible = false;
  bool in_ambient = false;
  std::vector<double> slacks;  // c_i - z_i(x), one per constraint
};

struct BoxVerdict {
  bool feasible = false;
  std::vector<double> slacks;  // c_i - max over box of z_i
};

inline constexpr std::uint64_t kDefaultGridCap = 10'000'000;

struct FeasibilityLattice {
  std::vector<std::size_t> resolution;
  std::vector<std::vector<double>> axes;  // inclusive; axes[j].back() == ambient hi
  std::vector<bool> feasible;             // row-major, last axis fastest

  std::size_t size() const noexcept { return feasible.size(); }
  DesignPoint point(std::size_t flat) const;
  double feasible_fraction() const;
};

// Membership is computed on demand from the problem; nothing is cached.
class FeasibleRegion {
 public:
  explicit FeasibleRegion(const DesignProblem& problem) : problem_(&problem) {}

  const DesignProblem& problem() const noexcept { return *problem_; }

  PointVerdict is_point_feasible(std::span<const double> x) const;

  // Exact: uses the separable box maximum of every constrained surface.
  // Throws BoxOutsideAmbient.
  BoxVerdict is_box_feasible(std::span<const Interval> box) const;

  FeasibilityLattice grid_feasible_set(std::size_t resolution, std::uint64_t cap = kDefaultGridCap) const;
  FeasibilityLattice grid_feasible_set(std::span<const std::size_t> resolution,
                                       std::uint64_t cap = kDefaultGridCap) const;

 private:
  const DesignProblem* problem_;
};

// n >= 2 evenly spaced points over [lo, hi]; the last equals hi exactly.
std::vector<double> lattice_axis(const Interval& ambient, std::size_t n);

}  // namespace cdd
