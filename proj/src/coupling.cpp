#include "kleingate/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/random/sobol.hpp>

#include "kleingate/error.hpp"

namespace kleingate {
namespace {

using cplx = std::complex<double>;
using Rule = boost::math::quadrature::gauss<double, 20>;

constexpr double kOverlapRelTol = 1e-6;
// Overlaps of unit-normalized functions are bounded by 1; near-zero overlaps
// are resolved to 1e-6 of that bound.
constexpr double kOverlapFloor = 1e-6;
constexpr double kNormTol = 1e-6;
constexpr int kMaxPanels = 256;

// Composite tensor Gauss-Legendre with `panels` panels per axis.
template <class F>
cplx tensor_gauss(F&& f, const Rect& r, int panels) {
  const auto& nodes = Rule::abscissa();
  const auto& weights = Rule::weights();
  const double hx = (r.x1 - r.x0) / panels;
  const double hy = (r.y1 - r.y0) / panels;

  // Expand the symmetric rule into full node/weight lists on [-1, 1].
  std::vector<double> xs, ws;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    xs.push_back(nodes[i]);
    ws.push_back(weights[i]);
    if (nodes[i] != 0.0) {
      xs.push_back(-nodes[i]);
      ws.push_back(weights[i]);
    }
  }

  cplx sum{0.0, 0.0};
  for (int px = 0; px < panels; ++px) {
    const double cx = r.x0 + (px + 0.5) * hx;
    for (int py = 0; py < panels; ++py) {
      const double cy = r.y0 + (py + 0.5) * hy;
      cplx panel{0.0, 0.0};
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = cx + 0.5 * hx * xs[i];
        for (std::size_t j = 0; j < xs.size(); ++j) {
          panel += ws[i] * ws[j] * f(x, cy + 0.5 * hy * xs[j]);
        }
      }
      sum += panel;
    }
  }
  return sum * (0.25 * hx * hy);
}

// Doubles the panel count until successive estimates agree to rel_tol, relative
// to max(|I|, floor).
template <class F>
std::pair<cplx, double> adaptive_tensor_gauss(F&& f, const Rect& r, double rel_tol,
                                              double floor) {
  cplx prev = tensor_gauss(f, r, 1);
  for (int panels = 2; panels <= kMaxPanels; panels *= 2) {
    const cplx cur = tensor_gauss(f, r, panels);
    const double diff = std::abs(cur - prev);
    if (diff <= rel_tol * std::max(std::abs(cur), floor)) return {cur, diff};
    prev = cur;
  }
  throw Error(ErrorKind::Numeric, "overlap quadrature did not converge");
}

std::optional<Rect> intersect(const Rect& a, const Rect& b) {
  Rect r{std::max(a.x0, b.x0), std::min(a.x1, b.x1), std::max(a.y0, b.y0), std::min(a.y1, b.y1)};
  if (!(r.x1 > r.x0) || !(r.y1 > r.y0)) return std::nullopt;
  return r;
}

void require_normalized(const WavefunctionModel& psi, const char* what) {
  const QuadratureResult n = norm_squared(psi);
  if (std::abs(n.value - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << what << " wavefunction is not normalized (norm^2 = " << n.value << ")";
    throw Error(ErrorKind::Domain, msg.str());
  }
}

double to_unit(std::uint64_t v) {
  return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
}

struct Point {
  double x, y;
};

Point map_to(const Rect& r, double u, double v) {
  return {r.x0 + u * (r.x1 - r.x0), r.y0 + v * (r.y1 - r.y0)};
}

}  // namespace

WavefunctionModel WavefunctionModel::dot_box_ground(double dot_length, double width,
                                                    double x_center) {
  WavefunctionModel m;
  m.kind = WavefunctionKind::DotBoxGround;
  m.length = dot_length;
  m.width = width;
  m.x_center = x_center;
  return m;
}

WavefunctionModel WavefunctionModel::ballistic_mode(double length, double width, double k_x,
                                                    double x_center) {
  WavefunctionModel m;
  m.kind = WavefunctionKind::BallisticMode;
  m.length = length;
  m.width = width;
  m.k_x = k_x;
  m.x_center = x_center;
  return m;
}

void WavefunctionModel::validate() const {
  if (!(length > 0.0) || !(width > 0.0)) {
    throw Error(ErrorKind::InvalidGeometry, "wavefunction domain must have positive extent");
  }
  if (transverse_mode < 1) {
    throw Error(ErrorKind::InvalidGeometry, "transverse mode number must be >= 1");
  }
}

Rect WavefunctionModel::domain() const {
  return {x_center - 0.5 * length, x_center + 0.5 * length, y0, y0 + width};
}

cplx WavefunctionModel::value(double x, double y) const {
  const Rect d = domain();
  if (x < d.x0 || x > d.x1 || y < d.y0 || y > d.y1) return {0.0, 0.0};
  const double pi = std::numbers::pi;
  const double transverse = std::sqrt(2.0 / width) * std::sin(transverse_mode * pi * (y - y0) / width);
  const double dx = x - x_center;
  switch (kind) {
    case WavefunctionKind::DotBoxGround:
      return scale * std::sqrt(2.0 / length) * std::cos(pi * dx / length) * transverse;
    case WavefunctionKind::BallisticMode:
      return scale * std::polar(1.0 / std::sqrt(length), k_x * dx) * transverse;
  }
  return {0.0, 0.0};
}

QuadratureResult norm_squared(const WavefunctionModel& psi) {
  psi.validate();
  const auto [v, err] = adaptive_tensor_gauss(
      [&](double x, double y) { return cplx{psi.density(x, y), 0.0}; }, psi.domain(), 1e-10, 1.0);
  return {v.real(), err};
}

QuadratureResult overlap_t(const WavefunctionModel& psi_b, const WavefunctionModel& psi_d,
                           double energy) {
  require_normalized(psi_b, "ballistic");
  require_normalized(psi_d, "dot");
  const auto common = intersect(psi_b.domain(), psi_d.domain());
  if (!common) return {0.0, 0.0};
  const auto [v, err] = adaptive_tensor_gauss(
      [&](double x, double y) { return std::conj(psi_b.value(x, y)) * psi_d.value(x, y); },
      *common, kOverlapRelTol, kOverlapFloor);
  return {energy * std::abs(v), std::abs(energy) * err};
}

CoulombResult coulomb_U(const WavefunctionModel& psi_d, const WavefunctionModel& psi_b,
                        const CoulombOptions& options) {
  require_normalized(psi_d, "dot");
  require_normalized(psi_b, "ballistic");
  if (!(options.delta > 0.0)) throw Error(ErrorKind::Domain, "Coulomb regularization must be > 0");
  if (options.replicas < 2) throw Error(ErrorKind::Domain, "need at least two QMC replicas");
  const std::uint64_t per_replica = options.samples / static_cast<std::uint64_t>(options.replicas);
  if (per_replica == 0) throw Error(ErrorKind::Domain, "too few QMC samples for the replicas");

  const Rect dom_d = psi_d.domain();
  const Rect dom_b = psi_b.domain();
  const double delta = options.delta;

  // Digital shifts drawn up front so the result does not depend on threading.
  std::mt19937_64 rng(options.seed);
  std::vector<std::array<std::uint64_t, 4>> shifts(options.replicas);
  for (auto& s : shifts)
    for (auto& v : s) v = rng();

  auto term = [&](double a, double b, double c, double d) {
    const Point p1 = map_to(dom_d, a, b);
    const Point p2 = map_to(dom_b, c, d);
    const double dist = std::hypot(p1.x - p2.x, p1.y - p2.y);
    return psi_d.density(p1.x, p1.y) * psi_b.density(p2.x, p2.y) / (dist + delta);
  };

  std::vector<double> means(options.replicas, 0.0);
  auto run_replica = [&](int r) {
    boost::random::sobol gen(4);
    const auto& shift = shifts[r];
    double sum = 0.0;
    for (std::uint64_t i = 0; i < per_replica; ++i) {
      double u[4];
      for (int k = 0; k < 4; ++k) u[k] = to_unit(gen() ^ shift[k]);
      // Symmetrized: each point is used with both coordinate pairings.
      sum += 0.5 * (term(u[0], u[1], u[2], u[3]) + term(u[2], u[3], u[0], u[1]));
    }
    means[r] = sum / static_cast<double>(per_replica);
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1u, static_cast<unsigned>(options.replicas));
  if (threads == 1) {
    for (int r = 0; r < options.replicas; ++r) run_replica(r);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int r = static_cast<int>(t); r < options.replicas; r += static_cast<int>(threads))
          run_replica(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= options.replicas;
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= (options.replicas - 1);

  const double scale = units::kCoulombEvAngstrom * dom_d.area() * dom_b.area();
  CoulombResult out;
  out.value = scale * mean;
  out.standard_error = scale * std::sqrt(var / options.replicas);
  out.samples = per_replica * static_cast<std::uint64_t>(options.replicas);
  out.seed = options.seed;
  return out;
}

double coupling_J(double dot_length, double t, double U) {
  if (!(U > 0.0)) throw Error(ErrorKind::Domain, "Coulomb energy U must be positive");
  if (!(dot_length > 0.0)) throw Error(ErrorKind::InvalidGeometry, "dot length must be positive");
  return 4.0 * dot_length * t * t / U;
}

void DotGeometry::validate() const {
  if (!(dot_length > 0.0)) throw Error(ErrorKind::InvalidGeometry, "dot length must be positive");
  if (!(width > 0.0)) throw Error(ErrorKind::InvalidGeometry, "ribbon width must be positive");
  if (!(coulomb_delta > 0.0)) {
    throw Error(ErrorKind::InvalidGeometry, "Coulomb regularization length must be positive");
  }
  if (ballistic_length < 0.0) {
    throw Error(ErrorKind::InvalidGeometry, "ballistic normalization length must be >= 0");
  }
}

CouplingEstimate estimate_coupling(const DotGeometry& geometry, double energy,
                                   const CoulombOptions& options,
                                   const PhysicalConstants& consts) {
  geometry.validate();
  const ElectronKinematics kin = electron_kinematics(energy, {geometry.width, 0, +1}, consts);
  const double length =
      geometry.ballistic_length > 0.0 ? geometry.ballistic_length : de_broglie_wavelength(energy, consts);

  auto dot = WavefunctionModel::dot_box_ground(geometry.dot_length, geometry.width);
  auto ballistic = WavefunctionModel::ballistic_mode(length, geometry.width, kin.k_x);
  dot.transverse_mode = geometry.transverse_mode;
  ballistic.transverse_mode = geometry.transverse_mode;

  CoulombOptions opts = options;
  opts.delta = geometry.coulomb_delta;

  const QuadratureResult t = overlap_t(ballistic, dot, energy);
  const CoulombResult u = coulomb_U(dot, ballistic, opts);

  CouplingEstimate est;
  est.t_overlap = t.value;
  est.t_error = t.error_estimate;
  est.U_coulomb = u.value;
  est.U_error = u.standard_error;
  est.J = coupling_J(geometry.dot_length, t.value, u.value);
  est.ballistic_length = length;
  est.k_x = kin.k_x;
  est.samples = u.samples;
  est.seed = u.seed;
  return est;
}

}  // namespace kleingate
