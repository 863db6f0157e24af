#include "cdd/error.hpp"
#include "cdd/numfmt.hpp"
#include "cdd/rosetta.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

namespace cdd::rosetta {

namespace {

constexpr double kCanvas = 900.0;
constexpr double kOrigin = 60.0;
constexpr double kGrid = 820.0;
constexpr double kPad = 8.0;
constexpr const char* kFeasible = "#2166ac";
constexpr const char* kInfeasible = "#c8c8c8";
constexpr const char* kBox = "#f4a582";
constexpr const char* kBound = "#b2182b";

std::string num(double v) { return format_fixed(v, 2); }

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Svg {
 public:
  explicit Svg(std::string_view title) {
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"900\" viewBox=\"0 0 900 900\">\n";
    out_ += "<rect x=\"0\" y=\"0\" width=\"900\" height=\"900\" fill=\"#ffffff\"/>\n";
    text(kCanvas / 2, 28, title, 16, "middle");
  }

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke,
            double fill_opacity = 1.0) {
    out_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
            "\" fill=\"" + std::string(fill) + "\" fill-opacity=\"" + num(fill_opacity) + "\" stroke=\"" +
            std::string(stroke) + "\"/>\n";
  }

  void circle(double cx, double cy, double r, std::string_view fill) {
    out_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" +
            std::string(fill) + "\"/>\n";
  }

  void dashed(double x1, double y1, double x2, double y2, std::string_view stroke) {
    out_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
            "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  }

  void text(double x, double y, std::string_view s, int size = 11, std::string_view anchor = "start") {
    out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
            std::to_string(size) + "\" text-anchor=\"" + std::string(anchor) + "\">" + escape(s) + "</text>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  std::string out_;
};

// Maps data coordinates into the interior of one grid cell; y grows upward.
struct CellFrame {
  double x0, y0, size;
  Interval xr, yr;

  double x(double v) const { return x0 + kPad + (v - xr.lo) / span(xr) * (size - 2 * kPad); }
  double y(double v) const { return y0 + size - kPad - (v - yr.lo) / span(yr) * (size - 2 * kPad); }
  static double span(const Interval& r) { return r.hi > r.lo ? r.hi - r.lo : 1.0; }
};

void grid_labels(Svg& svg, const std::vector<std::string>& rows, const std::vector<std::string>& cols) {
  const double ch = kGrid / static_cast<double>(rows.size());
  const double cw = kGrid / static_cast<double>(cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    svg.text(kOrigin - 6, kOrigin + ch * (static_cast<double>(i) + 0.5), rows[i], 12, "end");
  for (std::size_t j = 0; j < cols.size(); ++j)
    svg.text(kOrigin + cw * (static_cast<double>(j) + 0.5), kOrigin + kGrid + 18, cols[j], 12, "middle");
}

void cell_borders(Svg& svg, std::size_t rows, std::size_t cols) {
  const double ch = kGrid / static_cast<double>(rows);
  const double cw = kGrid / static_cast<double>(cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      svg.rect(kOrigin + cw * static_cast<double>(j), kOrigin + ch * static_cast<double>(i), cw, ch, "none", "#808080");
}

void histogram(Svg& svg, const Histogram& h, double x0, double y0, double size) {
  std::size_t peak = 1;
  for (auto c : h.counts) peak = std::max(peak, c);
  const double bar = (size - 2 * kPad) / static_cast<double>(std::max<std::size_t>(h.counts.size(), 1));
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    double height = (size - 2 * kPad) * static_cast<double>(h.counts[b]) / static_cast<double>(peak);
    svg.rect(x0 + kPad + bar * static_cast<double>(b), y0 + size - kPad - height, bar, height, kFeasible, "#ffffff");
  }
}

Interval value_range(const RosettaReport& r, std::size_t objective) {
  Interval range{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& z : r.objective_values) {
    range.lo = std::min(range.lo, z[objective]);
    range.hi = std::max(range.hi, z[objective]);
  }
  return range;
}

}  // namespace

std::string m_svg(const RosettaReport& r) {
  const std::size_t m = r.objectives.size();
  Svg svg("M-matrix " + r.problem + " (lattice-sampled surfaces, not experimental data)");
  grid_labels(svg, r.objectives, r.objectives);
  cell_borders(svg, m, m);
  const double size = kGrid / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) histogram(svg, r.m_diagonal[i], kOrigin + size * i, kOrigin + size * i, size);
  for (const auto& cell : r.m_cells) {
    CellFrame f{kOrigin + size * cell.col, kOrigin + size * cell.row, size, value_range(r, cell.col),
                value_range(r, cell.row)};
    for (bool pass_feasible : {false, true})
      for (std::size_t p = 0; p < r.objective_values.size(); ++p)
        if (r.lattice.feasible[p] == pass_feasible)
          svg.circle(f.x(r.objective_values[p][cell.col]), f.y(r.objective_values[p][cell.row]), 1.5,
                     pass_feasible ? kFeasible : kInfeasible);
    if (cell.col_bound && f.xr.contains(*cell.col_bound))
      svg.dashed(f.x(*cell.col_bound), f.y0 + kPad, f.x(*cell.col_bound), f.y0 + size - kPad, kBound);
    if (cell.row_bound && f.yr.contains(*cell.row_bound))
      svg.dashed(f.x0 + kPad, f.y(*cell.row_bound), f.x0 + size - kPad, f.y(*cell.row_bound), kBound);
  }
  return svg.finish();
}

std::string n_svg(const RosettaReport& r) {
  const std::size_t n = r.variables.size();
  Svg svg("N-matrix " + r.problem + " (lattice-sampled feasibility)");
  grid_labels(svg, r.variables, r.variables);
  cell_borders(svg, n, n);
  const double size = kGrid / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) histogram(svg, r.n_diagonal[j], kOrigin + size * j, kOrigin + size * j, size);

  std::vector<std::size_t> stride(n, 1);
  for (std::size_t j = n - 1; j-- > 0;) stride[j] = stride[j + 1] * r.lattice.resolution[j + 1];
  for (const auto& cell : r.n_cells) {
    const auto& xa = r.lattice.axes[cell.col];
    const auto& ya = r.lattice.axes[cell.row];
    CellFrame f{kOrigin + size * cell.col, kOrigin + size * cell.row, size, {xa.front(), xa.back()},
                {ya.front(), ya.back()}};
    // A projected point is feasible when some setting of the other variables is.
    std::map<std::pair<std::size_t, std::size_t>, bool> projected;
    for (std::size_t p = 0; p < r.lattice.size(); ++p) {
      auto key = std::make_pair((p / stride[cell.col]) % xa.size(), (p / stride[cell.row]) % ya.size());
      projected[key] = projected[key] || r.lattice.feasible[p];
    }
    for (bool pass_feasible : {false, true})
      for (const auto& [key, feasible] : projected)
        if (feasible == pass_feasible)
          svg.circle(f.x(xa[key.first]), f.y(ya[key.second]), 2.5, feasible ? kFeasible : kInfeasible);
    if (cell.rectangle) {
      const auto& [ix, iy] = *cell.rectangle;
      svg.rect(f.x(ix.lo), f.y(iy.hi), f.x(ix.hi) - f.x(ix.lo), f.y(iy.lo) - f.y(iy.hi), kBox, "#d6604d", 0.45);
    }
  }
  return svg.finish();
}

std::string q_svg(const RosettaReport& r) {
  const std::size_t m = r.objectives.size(), n = r.variables.size();
  Svg svg("Q-matrix " + r.problem + " (sensitivities at the design point)");
  grid_labels(svg, r.objectives, r.variables);
  double peak = 0.0;
  for (const auto& row : r.q_matrix)
    for (double q : row) peak = std::max(peak, std::abs(q));
  const double ch = kGrid / static_cast<double>(m), cw = kGrid / static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double q = r.q_matrix[i][j];
      const double x = kOrigin + cw * static_cast<double>(j), y = kOrigin + ch * static_cast<double>(i);
      svg.rect(x, y, cw, ch, q < 0 ? kBound : kFeasible, "#808080", peak > 0 ? 0.8 * std::abs(q) / peak : 0.0);
      svg.text(x + cw / 2, y + ch / 2, format_fixed(q, 4), 14, "middle");
    }
  return svg.finish();
}

std::vector<std::filesystem::path> emit(const RosettaReport& r, Format format, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create '" + dir.string() + "': " + ec.message());
  const std::string ext = format == Format::Csv ? "csv" : "svg";
  std::vector<std::pair<std::string, std::string>> files;
  if (format == Format::Csv) {
    files = {{"M", m_table(r).write()}, {"N", n_table(r).write()}, {"Q", q_table(r).write()}};
  } else {
    files = {{"M", m_svg(r)}, {"N", n_svg(r)}, {"Q", q_svg(r)}};
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& [matrix, content] : files) {
    auto path = dir / (r.problem + "_" + matrix + "." + ext);
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw Error(Errc::IoError, "cannot write '" + path.string() + "'");
    paths.push_back(path);
  }
  return paths;
}

}  // namespace cdd::rosetta
