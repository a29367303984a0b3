#include "kleingate/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kleingate/error.hpp"

namespace kleingate {

void PhysicalConstants::validate() const {
  if (!(hbar_vf > 0.0) || !std::isfinite(hbar_vf)) {
    throw Error(ErrorKind::Domain, "hbar_vF must be positive and finite");
  }
}

void RibbonConfig::validate() const {
  if (!(width > 0.0)) {
    throw Error(ErrorKind::InvalidGeometry, "ribbon width must be positive");
  }
  if (branch != 1 && branch != -1) {
    throw Error(ErrorKind::InvalidGeometry, "ribbon branch must be +1 or -1");
  }
}

double transverse_wavevector(const RibbonConfig& ribbon) {
  ribbon.validate();
  return (ribbon.mode + ribbon.branch / 3.0) * std::numbers::pi / ribbon.width;
}

double band_gap(const RibbonConfig& ribbon, const PhysicalConstants& consts) {
  consts.validate();
  RibbonConfig lowest = ribbon;
  lowest.mode = 0;
  lowest.branch = +1;
  return 2.0 * consts.hbar_vf * transverse_wavevector(lowest);
}

double incidence_angle(double energy, double k_ny, const PhysicalConstants& consts) {
  consts.validate();
  if (!(std::abs(energy) > consts.hbar_vf * std::abs(k_ny))) {
    std::ostringstream msg;
    msg << "energy " << energy << " eV is at or below the band edge of the mode (k_y = " << k_ny
        << " 1/A)";
    throw Error(ErrorKind::EvanescentMode, msg.str());
  }
  return std::asin(k_ny * consts.hbar_vf / std::abs(energy));
}

ElectronKinematics electron_kinematics(double energy, const RibbonConfig& ribbon,
                                       const PhysicalConstants& consts) {
  const double k_y = transverse_wavevector(ribbon);
  ElectronKinematics out;
  out.theta = incidence_angle(energy, k_y, consts);
  out.energy = energy;
  out.s = energy < 0.0 ? -1 : +1;
  out.k = std::abs(energy) / consts.hbar_vf;
  out.k_y = k_y;
  out.k_x = std::sqrt((out.k - k_y) * (out.k + k_y));
  return out;
}

double de_broglie_wavelength(double energy, const PhysicalConstants& consts) {
  consts.validate();
  if (energy == 0.0 || !std::isfinite(energy)) {
    throw Error(ErrorKind::Domain, "de Broglie wavelength needs a nonzero finite energy");
  }
  return 2.0 * std::numbers::pi * consts.hbar_vf / std::abs(energy);
}

ValidityReport validate_delta_regime(double dot_length, double energy, double separation,
                                     const PhysicalConstants& consts) {
  if (!(dot_length > 0.0)) {
    throw Error(ErrorKind::InvalidGeometry, "dot length must be positive");
  }
  ValidityReport report;
  report.wavelength = de_broglie_wavelength(energy, consts);
  report.ratio_5dx_over_lambda = 5.0 * dot_length / report.wavelength;
  report.delta_regime_ok = report.ratio_5dx_over_lambda < 1.0;
  report.within_inelastic_length = separation <= units::kInelasticLength;
  return report;
}

}  // namespace kleingate
