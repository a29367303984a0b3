#include "kleingate/cli/figures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "kleingate/error.hpp"

namespace kleingate::cli {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  return out;
}

double parse_number(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Domain, "non-numeric CSV cell '" + s + "'");
  }
  return v;
}

// Root of the segment between (x0, y0) and (x1, y1).
double interpolate_zero(double x0, double y0, double x1, double y1) {
  return x0 - y0 * (x1 - x0) / (y1 - y0);
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorKind::Domain, "CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Domain, "cannot read " + path);
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(parse_number(cell));
    if (row.size() != t.header.size()) throw Error(ErrorKind::Domain, "ragged CSV row in " + path);
    t.rows.push_back(std::move(row));
  }
  return t;
}

nlohmann::ordered_json FigureFeatures::to_json() const {
  nlohmann::ordered_json j;
  j["frontal_row_theta"] = frontal_row_theta;
  j["frontal_row_max_success_deviation"] = frontal_row_max_success_deviation;
  j["frontal_row_max_abs_gate_condition"] = frontal_row_max_abs_gate_condition;
  j["zero_coupling_max_success_deviation"] = zero_coupling_max_success_deviation;
  j["zero_coupling_max_abs_gate_condition"] = zero_coupling_max_abs_gate_condition;
  j["gate_condition_zero_locus_J"] = zero_locus;
  j["transmittivity_crossings_J"] = crossings;
  j["tn_sq_min_J"] = tn_sq_min_coupling;
  j["tn_sq_min"] = tn_sq_min;
  j["line_max_unit_sum_deviation"] = line_max_unit_sum_deviation;
  return j;
}

FigureFeatures extract_features(const std::string& grid_csv, const std::string& line_csv) {
  FigureFeatures f;

  const CsvTable grid = read_csv(grid_csv);
  const std::size_t c_theta = grid.column("theta_rad"), c_j = grid.column("J_eVA");
  const std::size_t c_p = grid.column("p_success"), c_g = grid.column("gate_condition");

  std::map<double, std::vector<const std::vector<double>*>> rows;
  for (const auto& r : grid.rows) rows[r[c_theta]].push_back(&r);
  if (rows.empty()) throw Error(ErrorKind::Domain, "empty grid CSV");

  double best = INFINITY;
  for (const auto& [theta, cells] : rows) {
    if (std::abs(theta) < best) {
      best = std::abs(theta);
      f.frontal_row_theta = theta;
    }
  }
  for (const auto& [theta, cells] : rows) {
    auto sorted = cells;
    std::sort(sorted.begin(), sorted.end(),
              [&](auto* a, auto* b) { return (*a)[c_j] < (*b)[c_j]; });
    for (const auto* r : sorted) {
      if ((*r)[c_j] == 0.0) {
        f.zero_coupling_max_success_deviation =
            std::max(f.zero_coupling_max_success_deviation, std::abs((*r)[c_p] - 1.0));
        f.zero_coupling_max_abs_gate_condition =
            std::max(f.zero_coupling_max_abs_gate_condition, std::abs((*r)[c_g]));
      }
    }
    if (theta == f.frontal_row_theta) {
      for (const auto* r : sorted) {
        f.frontal_row_max_success_deviation =
            std::max(f.frontal_row_max_success_deviation, std::abs((*r)[c_p] - 1.0));
        f.frontal_row_max_abs_gate_condition =
            std::max(f.frontal_row_max_abs_gate_condition, std::abs((*r)[c_g]));
      }
      continue;
    }
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      const auto& a = *sorted[i - 1];
      const auto& b = *sorted[i];
      if (a[c_j] <= 0.0) continue;
      if ((a[c_g] > 0.0) != (b[c_g] > 0.0)) {
        f.zero_locus.push_back(interpolate_zero(a[c_j], a[c_g], b[c_j], b[c_g]));
      }
    }
  }

  const CsvTable line = read_csv(line_csv);
  const std::size_t l_j = line.column("J_eVA"), l_n = line.column("tn_sq"), l_s = line.column("ts_sq");
  f.tn_sq_min = INFINITY;
  for (std::size_t i = 0; i < line.rows.size(); ++i) {
    const auto& r = line.rows[i];
    f.line_max_unit_sum_deviation =
        std::max(f.line_max_unit_sum_deviation, std::abs(r[l_n] + r[l_s] - 1.0));
    if (r[l_n] < f.tn_sq_min) {
      f.tn_sq_min = r[l_n];
      f.tn_sq_min_coupling = r[l_j];
    }
    if (i == 0) continue;
    const auto& p = line.rows[i - 1];
    const double d0 = p[l_n] - p[l_s], d1 = r[l_n] - r[l_s];
    if ((d0 > 0.0) != (d1 > 0.0)) f.crossings.push_back(interpolate_zero(p[l_j], d0, r[l_j], d1));
  }
  return f;
}

}  // namespace kleingate::cli
