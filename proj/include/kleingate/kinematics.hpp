#pragma once

#include "kleingate/units.hpp"

namespace kleingate {

/// hbar * v_F in eV * angstrom. The default follows from
/// hbar = 6.582e-16 eV s and v_F = 1e6 m/s.
struct PhysicalConstants {
  double hbar_vf = 6.582;

  void validate() const;
};

/// Armchair (semiconducting) nanoribbon and the transverse mode the electron
/// occupies. `branch` selects the sign in (n +- 1/3).
struct RibbonConfig {
  double width = 0.0;  // angstrom
  int mode = 0;
  int branch = +1;

  void validate() const;
};

struct ElectronKinematics {
  double energy = 0.0;  // eV, negative for holes
  int s = +1;           // sgn(energy)
  double k = 0.0;       // 1/angstrom
  double k_x = 0.0;
  double k_y = 0.0;
  double theta = 0.0;   // radians
};

struct ValidityReport {
  double wavelength = 0.0;  // angstrom
  bool delta_regime_ok = false;
  double ratio_5dx_over_lambda = 0.0;
  bool within_inelastic_length = false;
};

/// k_ny = (n + branch/3) pi / W.
double transverse_wavevector(const RibbonConfig& ribbon);

/// E_gap = 2 hbar v_F k_0y, always taken from the n = 0, + branch mode.
double band_gap(const RibbonConfig& ribbon, const PhysicalConstants& consts = {});

/// Angle of incidence of a propagating mode. Throws EvanescentMode when the
/// energy lies at or below the mode's band edge.
double incidence_angle(double energy, double k_ny, const PhysicalConstants& consts = {});

ElectronKinematics electron_kinematics(double energy, const RibbonConfig& ribbon,
                                       const PhysicalConstants& consts = {});

/// lambda = 2 pi hbar v_F / |energy|.
double de_broglie_wavelength(double energy, const PhysicalConstants& consts = {});

/// Report-only check of the point-interaction regime (5 dx < lambda) and of
/// the inelastic length for a given dot separation. All lengths angstrom.
ValidityReport validate_delta_regime(double dot_length, double energy, double separation,
                                     const PhysicalConstants& consts = {});

}  // namespace kleingate
