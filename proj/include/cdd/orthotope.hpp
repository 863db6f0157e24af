#pragma once

#include "cdd/designspace.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cdd {

struct Orthotope {
  std::vector<Interval> intervals;

  std::size_t dimension() const noexcept { return intervals.size(); }
  bool contains(std::span<const double> x) const;
  bool contains(const Orthotope& other) const;
  double volume() const;
  // Product of width_j / ambient width_j.
  double normalized_volume(const DesignProblem& p) const;

  static Orthotope point(std::span<const double> x);
  static Orthotope ambient(const DesignProblem& p);

  friend bool operator==(const Orthotope&, const Orthotope&) = default;
};

// A permutation of variable indices; earlier entries are expanded first.
using Ranking = std::vector<std::size_t>;

// r_j = sum over constrained surfaces of |dz/dx_j at seed| * ambient width_j,
// sorted descending; ties keep the lower index first.
Ranking auto_rank(const DesignProblem& p);
std::vector<double> rank_scores(const DesignProblem& p);

// The problem's explicit ranking when present, otherwise auto_rank.
Ranking effective_ranking(const DesignProblem& p);

inline constexpr const char* kAmbientBinding = "ambient";

struct ExpansionStep {
  std::size_t factor = 0;
  Interval before;
  Interval after;
  // Surface name of the binding constraint, or "ambient".
  std::string lo_binding;
  std::string hi_binding;
  std::vector<double> budgets;  // c_i - beta0_i - sum_{k != j} max term_k, per constraint
  std::vector<double> slacks;   // worst-case box slack after the step, per constraint
  // Every constraint ignores this coordinate; the interval went to ambient.
  bool degenerate = false;
};

struct Expansion {
  Orthotope box;
  ExpansionStep step;
};

// Enlarges interval j only, to the closed-form limit of every constraint,
// clamped to ambient and never below the incoming interval. The incoming box
// must be feasible (InfeasibleInput) and interval j must contain the seed
// coordinate (SeedNotContained).
Expansion expand_factor(const DesignProblem& p, const Orthotope& box, std::size_t j);

enum class FaceSide { Lower, Upper };
enum class FaceStatus { Ambient, Blocked, Unblocked };

struct FaceCertificate {
  std::size_t factor = 0;
  FaceSide side = FaceSide::Lower;
  FaceStatus status = FaceStatus::Ambient;
  std::string constraint;  // blocking surface when status is Blocked
  double slack = 0.0;      // worst slack of the pushed box; 0 for ambient faces
};

struct MaximalityCertificate {
  std::vector<double> epsilon;  // per axis, absolute
  std::vector<FaceCertificate> faces;  // 2N entries: factor order, lower before upper
  bool maximal = false;
};

inline constexpr double kDefaultRelativeEpsilon = 1e-6;

// Pushes each face outward by epsilon_j = relative_epsilon * ambient width_j.
// Maximal iff no face stays feasible after its push. Throws InfeasibleInput.
MaximalityCertificate verify_maximality(const DesignProblem& p, const Orthotope& box,
                                        double relative_epsilon = kDefaultRelativeEpsilon);

struct SolveResult {
  Orthotope orthotope;
  Ranking ranking;
  std::vector<ExpansionStep> steps;
  MaximalityCertificate certificate;
};

SolveResult solve_greedy(const DesignProblem& p, const std::optional<Ranking>& ranking = std::nullopt,
                         double relative_epsilon = kDefaultRelativeEpsilon);

std::string_view to_string(FaceSide side);
std::string_view to_string(FaceStatus status);

nlohmann::json orthotope_to_json(const Orthotope& o);
Orthotope orthotope_from_json(const nlohmann::json& j);
nlohmann::json result_to_json(const SolveResult& r);
SolveResult result_from_json(const nlohmann::json& j);

// Brute-force reference. Each axis carries a regular lattice over ambient with
// the seed coordinate inserted. A lattice box is admissible when all of its
// corners are point-feasible and the analytic box maximum passes.
struct OracleResult {
  std::size_t resolution = 0;
  std::vector<double> step;  // ambient width / (resolution - 1), per axis
  Ranking ranking;
  // Best lattice box reached by the same ranking, maximizing each step's
  // width in turn (ties: lowest lower endpoint).
  Orthotope greedy_order;
  // Largest-volume admissible lattice box containing the seed, searched at
  // max_volume_resolution per axis; absent unless requested.
  std::optional<Orthotope> max_volume;
  std::size_t max_volume_resolution = 0;
};

inline constexpr std::size_t kOracleMaxDimension = 3;
inline constexpr std::size_t kOracleMaxResolution = 201;
inline constexpr std::size_t kOracleVolumeResolution = 41;

// Throws CapExceeded unless dimension <= 3 and 2 <= resolution <= 201.
OracleResult oracle_solve(const DesignProblem& p, std::size_t resolution,
                          const std::optional<Ranking>& ranking = std::nullopt, bool with_max_volume = false);

// Brute-force single expansion step: the widest admissible interval on axis j
// drawn from the regular lattice plus the seed coordinate, with the other
// intervals of box held fixed. Same caps as oracle_solve.
Interval oracle_expand(const DesignProblem& p, const Orthotope& box, std::size_t j, std::size_t resolution);

}  // namespace cdd
