#pragma once

#include <complex>
#include <cstdint>

#include "kleingate/kinematics.hpp"

namespace kleingate {

enum class WavefunctionKind { DotBoxGround, BallisticMode };

/// Axis-aligned rectangle [x0, x1] x [y0, y1] in angstrom.
struct Rect {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

  double area() const { return (x1 - x0) * (y1 - y0); }
};

/// Scalar (spinor-collapsed) envelope functions on a rectangle.
///
/// DotBoxGround: sqrt(2/L) cos(pi (x - xc)/L) * sqrt(2/W) sin(m pi (y - y0)/W)
/// BallisticMode: e^{i k_x (x - xc)} / sqrt(L) * sqrt(2/W) sin(m pi (y - y0)/W)
///
/// Both are unit-normalized over their own rectangle; `scale` multiplies the
/// normalized form and exists so that callers can feed deliberately
/// non-normalized models.
struct WavefunctionModel {
  WavefunctionKind kind = WavefunctionKind::DotBoxGround;
  double x_center = 0.0;
  double length = 0.0;  // longitudinal extent L
  double y0 = 0.0;
  double width = 0.0;   // transverse extent W
  int transverse_mode = 1;
  double k_x = 0.0;     // ballistic longitudinal wavenumber, 1/angstrom
  double scale = 1.0;

  static WavefunctionModel dot_box_ground(double dot_length, double width, double x_center = 0.0);
  static WavefunctionModel ballistic_mode(double length, double width, double k_x,
                                          double x_center = 0.0);

  Rect domain() const;
  std::complex<double> value(double x, double y) const;
  double density(double x, double y) const { return std::norm(value(x, y)); }

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// int |psi|^2 over the model's rectangle by tensor Gauss-Legendre.
QuadratureResult norm_squared(const WavefunctionModel& psi);

/// t = eps_b |int conj(psi_b) psi_d dr| over the common support, to relative
/// tolerance 1e-6. Throws Domain when either model is not normalized.
QuadratureResult overlap_t(const WavefunctionModel& psi_b, const WavefunctionModel& psi_d,
                           double energy);

struct CoulombOptions {
  double delta = units::kPiOrbitalExtent;  // angstrom
  std::uint64_t samples = std::uint64_t{1} << 20;
  std::uint64_t seed = 0x5eed2014ULL;
  int replicas = 16;   // independently shifted Sobol replicas
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct CoulombResult {
  double value = 0.0;            // eV
  double standard_error = 0.0;   // eV, from the replica spread
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// U = k_e int int |psi_d(r1)|^2 |psi_b(r2)|^2 / (|r1 - r2| + delta).
/// Randomized quasi-Monte-Carlo over the product of both rectangles; the
/// estimator is symmetrized so the result is invariant under swapping the two
/// densities. Deterministic for a fixed seed regardless of thread count.
CoulombResult coulomb_U(const WavefunctionModel& psi_d, const WavefunctionModel& psi_b,
                        const CoulombOptions& options = {});

/// J = 4 dx t^2 / U (dx in angstrom, t and U in eV). Throws Domain for U <= 0.
double coupling_J(double dot_length, double t, double U);

struct DotGeometry {
  double dot_length = 0.0;  // dx, angstrom
  double width = 0.0;       // W, angstrom
  double coulomb_delta = units::kPiOrbitalExtent;
  double ballistic_length = 0.0;  // L; 0 = one de Broglie wavelength
  int transverse_mode = 1;

  void validate() const;
};

struct CouplingEstimate {
  double t_overlap = 0.0;  // eV
  double U_coulomb = 0.0;  // eV
  double J = 0.0;          // eV * angstrom
  double t_error = 0.0;
  double U_error = 0.0;
  double ballistic_length = 0.0;
  double k_x = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Default-model estimate: box ground state for the dot, lowest transverse
/// mode times a plane wave for the ballistic electron (k_x from the n = 0 +
/// branch of the ribbon), both sharing the dot's transverse profile.
CouplingEstimate estimate_coupling(const DotGeometry& geometry, double energy,
                                   const CoulombOptions& options = {},
                                   const PhysicalConstants& consts = {});

}  // namespace kleingate
