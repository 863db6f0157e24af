#pragma once

#include "cdd/designspace.hpp"
#include "cdd/orthotope.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cdd::rosetta {

using Rectangle = std::pair<Interval, Interval>;

// Exact selection of intervals j and k. Throws IndexOutOfRange, and also
// when j == k.
Rectangle project_orthotope(const Orthotope& o, std::size_t j, std::size_t k);

struct Histogram {
  std::vector<double> centers;
  std::vector<std::size_t> counts;
};

// Objective pairing: x axis objective col, y axis objective row (row > col).
struct MCell {
  std::size_t row = 0;
  std::size_t col = 0;
  std::optional<double> row_bound;
  std::optional<double> col_bound;
};

// Variable pairing: x axis variable col, y axis variable row (row > col).
struct NCell {
  std::size_t row = 0;
  std::size_t col = 0;
  std::optional<Rectangle> rectangle;  // (interval of col, interval of row)
};

// All scatter data is sampled on the regular ambient lattice; none of it is
// experimental.
struct RosettaReport {
  std::string problem;
  std::vector<std::string> objectives;
  std::vector<std::string> variables;
  DesignPoint design_point;
  std::vector<std::vector<double>> q_matrix;  // [objective][variable]

  FeasibilityLattice lattice;
  std::vector<std::vector<double>> objective_values;  // [point][objective]
  std::vector<bool> in_orthotope;                     // empty without a solution
  std::optional<Orthotope> orthotope;

  std::vector<MCell> m_cells;
  std::vector<NCell> n_cells;
  std::vector<Histogram> m_diagonal;  // feasible objective values, per objective
  std::vector<Histogram> n_diagonal;  // feasible points per axis value, per variable
};

inline constexpr std::size_t kDefaultResolution = 11;
inline constexpr std::size_t kHistogramBins = 10;

// Q is evaluated at design_point, or at the seed when absent.
RosettaReport build_report(const DesignProblem& p, const std::optional<Orthotope>& solution,
                           std::size_t resolution = kDefaultResolution,
                           const std::optional<DesignPoint>& design_point = std::nullopt,
                           std::uint64_t grid_cap = kDefaultGridCap);

// Minimal CSV: comma separated, fields quoted only when they contain a comma,
// quote or newline; every record ends in '\n'.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string write() const;
  static CsvTable parse(std::string_view text);
};

// objective,<variables...>
CsvTable q_table(const RosettaReport& r);
// point,<objectives...>,feasible
CsvTable m_table(const RosettaReport& r);
// point,<variables...>,feasible[,in_orthotope]
CsvTable n_table(const RosettaReport& r);

std::string q_svg(const RosettaReport& r);
std::string m_svg(const RosettaReport& r);
std::string n_svg(const RosettaReport& r);

enum class Format { Csv, Svg };

// Writes {problem}_{M|N|Q}.{csv|svg} into dir and returns the paths in M, N, Q
// order. Throws IoError.
std::vector<std::filesystem::path> emit(const RosettaReport& r, Format format, const std::filesystem::path& dir);

}  // namespace cdd::rosetta
