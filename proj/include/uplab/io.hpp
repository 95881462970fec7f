// CSV and JSON import/export for signals, masks, TF matrices and operators.
#ifndef UPLAB_IO_HPP
#define UPLAB_IO_HPP

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "uplab/concentration.hpp"
#include "uplab/operators.hpp"
#include "uplab/transforms.hpp"

namespace uplab {

using json = nlohmann::json;

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Header `# n=<n> dx=<dx>` followed by index,t,re,im rows.
inline void write_signal_csv(std::ostream& os, const Signal& f) {
  os << std::setprecision(17);
  os << "# n=" << f.size() << " dx=" << f.grid().dx();
  if (f.axis() == Axis::frequency) os << " axis=frequency";
  os << "\n" << (f.axis() == Axis::time ? "index,t,re,im" : "index,omega,re,im") << "\n";
  for (int j = 0; j < f.size(); ++j)
    os << j << "," << f.coord(j) << "," << f[j].real() << "," << f[j].imag() << "\n";
}

namespace detail {

inline std::optional<double> header_value(const std::string& line, const std::string& key) {
  const auto pos = line.find(key + "=");
  if (pos == std::string::npos) return std::nullopt;
  std::istringstream is(line.substr(pos + key.size() + 1));
  double v;
  if (!(is >> v)) throw FormatError("malformed header value for " + key);
  return v;
}

}  // namespace detail

/// Reads a signal CSV; grid metadata comes from the header comment, or from `sidecar` if given.
inline Signal read_signal_csv(std::istream& is, std::optional<Grid> sidecar = std::nullopt) {
  std::string line;
  std::optional<Grid> grid = sidecar;
  Axis axis = Axis::time;
  std::vector<Complex> values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto n = detail::header_value(line, "n");
      auto dx = detail::header_value(line, "dx");
      if (n && dx) grid = Grid(static_cast<int>(*n), *dx);
      if (line.find("axis=frequency") != std::string::npos) axis = Axis::frequency;
      continue;
    }
    if (line.rfind("index", 0) == 0) {
      if (line.find("omega") != std::string::npos) axis = Axis::frequency;
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<double> cols;
    while (std::getline(row, cell, ',')) {
      try {
        cols.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw FormatError("malformed CSV cell '" + cell + "'");
      }
    }
    if (cols.size() != 4) throw FormatError("expected 4 columns index,t,re,im, got " + std::to_string(cols.size()));
    if (static_cast<std::size_t>(cols[0]) != values.size()) throw FormatError("CSV indices must be 0..n-1 in order");
    values.emplace_back(cols[2], cols[3]);
  }
  if (!grid) throw FormatError("signal CSV carries no grid metadata");
  if (static_cast<int>(values.size()) != grid->size())
    throw FormatError("CSV has " + std::to_string(values.size()) + " rows, grid expects " +
                      std::to_string(grid->size()));
  CVector v(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) v(j) = values[j];
  return Signal(*grid, std::move(v), axis);
}

inline Grid grid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("dx")) throw FormatError("grid needs fields n and dx");
  return Grid(j.at("n").get<int>(), j.at("dx").get<double>());
}

inline json grid_to_json(const Grid& g) { return {{"n", g.size()}, {"dx", g.dx()}, {"domega", g.dw()}}; }

/// Loads `path`; without a header comment the grid is read from `path`.json or the same stem with .json.
inline Signal load_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open signal file " + path.string());
  std::optional<Grid> side;
  for (auto candidate : {std::filesystem::path(path.string() + ".json"),
                         std::filesystem::path(path).replace_extension(".json")}) {
    std::ifstream js(candidate);
    if (js) {
      side = grid_from_json(json::parse(js));
      break;
    }
  }
  return read_signal_csv(in, side);
}

inline json mask_to_json(const MaskSet& u) {
  json iv = json::array();
  for (auto [a, b] : u.intervals()) iv.push_back({a, b});
  return {{"axis", to_string(u.axis())}, {"intervals", iv}, {"measure", u.measure()}};
}

inline MaskSet mask_from_json(const json& j, const Grid& g) {
  if (!j.is_object() || !j.contains("intervals")) throw FormatError("mask needs an intervals array");
  const Axis axis = axis_from_string(j.value("axis", std::string("time")));
  std::vector<std::pair<int, int>> ranges;
  for (const auto& r : j.at("intervals")) {
    if (!r.is_array() || r.size() != 2) throw FormatError("each interval must be [begin, end)");
    ranges.emplace_back(r[0].get<int>(), r[1].get<int>());
  }
  return MaskSet::from_intervals(g, axis, ranges);
}

/// |values| as an n x n CSV (rows time, columns frequency).
inline void write_tf_csv(std::ostream& os, const TFMatrix& m) {
  os << std::setprecision(17);
  for (Eigen::Index j = 0; j < m.values.rows(); ++j) {
    for (Eigen::Index k = 0; k < m.values.cols(); ++k) os << (k ? "," : "") << std::abs(m.values(j, k));
    os << "\n";
  }
}

inline json tf_metadata(const TFMatrix& m, const std::string& quantity) {
  return {{"grid", grid_to_json(m.grid)},
          {"rows", "time"},
          {"cols", "frequency"},
          {"values", "magnitude"},
          {"quantity", quantity},
          {"cell_weight", m.cell()}};
}

/// One matrix row per line with re,im interleaved.
inline void write_operator_csv(std::ostream& os, const LinearOp& op) {
  os << std::setprecision(17);
  for (Eigen::Index p = 0; p < op.matrix.rows(); ++p) {
    for (Eigen::Index q = 0; q < op.matrix.cols(); ++q)
      os << (q ? "," : "") << op.matrix(p, q).real() << "," << op.matrix(p, q).imag();
    os << "\n";
  }
}

inline json operator_metadata(const LinearOp& op) {
  return {{"grid", grid_to_json(op.grid)}, {"provenance", to_string(op.provenance)}, {"layout", "re,im interleaved"}};
}

}  // namespace uplab

#endif
