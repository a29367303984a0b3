#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace kleingate::cli {

/// Numeric CSV table read back from disk; columns addressed by header name.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

/// Features of the gate-condition/success grid and the frontal transmittivity
/// curves, recovered from the emitted CSV files alone.
struct FigureFeatures {
  // Grid: row with the smallest |theta|.
  double frontal_row_theta = 0.0;
  double frontal_row_max_success_deviation = 0.0;
  double frontal_row_max_abs_gate_condition = 0.0;
  // Grid: J = 0 column.
  double zero_coupling_max_success_deviation = 0.0;
  double zero_coupling_max_abs_gate_condition = 0.0;
  // Grid: per oblique row, linearly interpolated sign change of the gate
  // condition along J (J > 0).
  std::vector<double> zero_locus;
  // Line: interpolated crossings of tn_sq - ts_sq and the tn_sq minimum.
  std::vector<double> crossings;
  double tn_sq_min_coupling = 0.0;
  double tn_sq_min = 0.0;
  double line_max_unit_sum_deviation = 0.0;

  nlohmann::ordered_json to_json() const;
};

FigureFeatures extract_features(const std::string& grid_csv, const std::string& line_csv);

}  // namespace kleingate::cli
