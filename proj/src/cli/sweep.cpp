#include "kleingate/cli/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "kleingate/cli/format.hpp"
#include "kleingate/error.hpp"

namespace kleingate::cli {
namespace {

unsigned resolve_threads(unsigned requested, std::size_t work) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

// Runs body(i) for i in [0, n) over contiguous blocks.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  threads = resolve_threads(threads, n);
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t block = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * block, hi = std::min(n, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

void append(std::string& line, double v) {
  line += ',';
  line += format_double(v);
}

}  // namespace

void SweepAxis::validate() const {
  if (count < 2) throw Error(ErrorKind::Domain, "axis " + name + " needs at least 2 points");
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw Error(ErrorKind::Domain, "axis " + name + " range must be finite");
  }
}

std::vector<double> SweepAxis::values() const {
  validate();
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    v[i] = i + 1 == count ? max : min + (max - min) * static_cast<double>(i) / (count - 1);
  }
  return v;
}

Quantity parse_quantity(const std::string& name) {
  if (name == "t_n") return Quantity::TN;
  if (name == "t_s") return Quantity::TS;
  if (name == "r_n") return Quantity::RN;
  if (name == "r_s") return Quantity::RS;
  if (name == "success_probability") return Quantity::SuccessProbability;
  if (name == "gate_condition") return Quantity::GateCondition;
  if (name == "classification") return Quantity::Classification;
  throw Error(ErrorKind::Domain, "unknown sweep quantity '" + name + "'");
}

std::vector<Quantity> default_grid_quantities() {
  return {Quantity::SuccessProbability, Quantity::GateCondition, Quantity::TN,
          Quantity::TS, Quantity::RN, Quantity::RS};
}

void SweepSpec::validate() const {
  theta.validate();
  coupling.validate();
  consts.validate();
  if (std::max(std::abs(theta.min), std::abs(theta.max)) >= 1.5707963267948966) {
    throw Error(ErrorKind::Domain, "theta axis must stay inside (-pi/2, pi/2)");
  }
  if (s != 1 && s != -1) throw Error(ErrorKind::Domain, "energy sign must be +1 or -1");
  if (quantities.empty()) throw Error(ErrorKind::Domain, "no output quantities selected");
}

std::vector<GridCell> run_grid(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const auto thetas = spec.theta.values();
  const auto couplings = spec.coupling.values();
  std::vector<GridCell> cells(thetas.size() * couplings.size());
  parallel_for(cells.size(), threads, [&](std::size_t idx) {
    GridCell& c = cells[idx];
    c.theta = thetas[idx / couplings.size()];
    c.coupling = couplings[idx % couplings.size()];
    c.report = classify_gate({c.coupling, c.theta, spec.s, spec.consts}, spec.tol_unitary,
                             spec.tol_class);
  });
  return cells;
}

std::string grid_csv_header(const std::vector<Quantity>& quantities) {
  std::string h = "theta_rad,J_eVA";
  for (Quantity q : quantities) {
    switch (q) {
      case Quantity::SuccessProbability: h += ",p_success"; break;
      case Quantity::GateCondition: h += ",gate_condition"; break;
      case Quantity::TN: h += ",tn_re,tn_im"; break;
      case Quantity::TS: h += ",ts_re,ts_im"; break;
      case Quantity::RN: h += ",rn_re,rn_im"; break;
      case Quantity::RS: h += ",rs_re,rs_im"; break;
      case Quantity::Classification: h += ",classification"; break;
    }
  }
  return h;
}

std::string grid_csv_row(const GridCell& cell, const std::vector<Quantity>& quantities) {
  std::string line = format_double(cell.theta);
  append(line, cell.coupling);
  const auto& r = cell.report;
  const auto& a = r.amplitudes;
  for (Quantity q : quantities) {
    switch (q) {
      case Quantity::SuccessProbability: append(line, r.success_probability); break;
      case Quantity::GateCondition: append(line, r.gate_condition); break;
      case Quantity::TN: append(line, a.t_n.real()); append(line, a.t_n.imag()); break;
      case Quantity::TS: append(line, a.t_s.real()); append(line, a.t_s.imag()); break;
      case Quantity::RN: append(line, a.r_n.real()); append(line, a.r_n.imag()); break;
      case Quantity::RS: append(line, a.r_s.real()); append(line, a.r_s.imag()); break;
      case Quantity::Classification:
        line += ',';
        line += to_string(r.classification);
        break;
    }
  }
  return line;
}

std::vector<LineSample> run_line(const SweepAxis& coupling, const PhysicalConstants& consts,
                                 unsigned threads) {
  const auto js = coupling.values();
  std::vector<LineSample> out(js.size());
  parallel_for(js.size(), threads, [&](std::size_t i) {
    const auto a = spin_resolved_amplitudes({js[i], 0.0, +1, consts});
    out[i] = {js[i], std::norm(a.t_n), std::norm(a.t_s)};
  });
  return out;
}

}  // namespace kleingate::cli
