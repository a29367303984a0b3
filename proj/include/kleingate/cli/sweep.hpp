#pragma once

#include <string>
#include <vector>

#include "kleingate/gates.hpp"

namespace kleingate::cli {

/// One linear axis of a parameter grid.
struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  void validate() const;
  std::vector<double> values() const;
};

/// Quantities a sweep can emit, in CSV column order.
enum class Quantity { TN, TS, RN, RS, SuccessProbability, GateCondition, Classification };

Quantity parse_quantity(const std::string& name);

/// Default column set of the angle x coupling grid.
std::vector<Quantity> default_grid_quantities();

struct SweepSpec {
  SweepAxis theta{"theta_rad", -0.39269908169872414, 0.39269908169872414, 65};
  SweepAxis coupling{"J_eVA", 0.0, 100.0, 101};
  int s = +1;
  PhysicalConstants consts{};
  std::vector<Quantity> quantities = default_grid_quantities();
  double tol_unitary = kDefaultUnitaryTolerance;
  double tol_class = kDefaultClassTolerance;

  void validate() const;
};

struct GridCell {
  double theta = 0.0;
  double coupling = 0.0;
  GateReport report;
};

/// Evaluates every (theta, J) cell. Cells are independent; work is split over
/// `threads` workers and the result is ordered row-major (theta outer, J
/// inner) independently of scheduling.
std::vector<GridCell> run_grid(const SweepSpec& spec, unsigned threads = 0);

/// CSV header line (no newline) for the selected quantities.
std::string grid_csv_header(const std::vector<Quantity>& quantities);
std::string grid_csv_row(const GridCell& cell, const std::vector<Quantity>& quantities);

struct LineSample {
  double coupling = 0.0;
  double tn_sq = 0.0;
  double ts_sq = 0.0;
};

/// Frontal |t_n|^2 and |t_s|^2 along a coupling axis.
std::vector<LineSample> run_line(const SweepAxis& coupling, const PhysicalConstants& consts,
                                 unsigned threads = 0);

}  // namespace kleingate::cli
