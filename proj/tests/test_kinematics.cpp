#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "kleingate/error.hpp"
#include "kleingate/kinematics.hpp"

using namespace kleingate;
using units::nm;

namespace {
constexpr double kPi = std::numbers::pi;

double to_per_nm(double per_angstrom) { return per_angstrom * units::kAngstromPerNm; }
}  // namespace

TEST(Kinematics, TransverseWavevector) {
  EXPECT_NEAR(to_per_nm(transverse_wavevector({nm(30), 0, +1})), kPi / 90.0, 1e-15);
  EXPECT_NEAR(to_per_nm(transverse_wavevector({nm(30), 0, +1})), 0.034907, 5e-7);
  EXPECT_DOUBLE_EQ(transverse_wavevector({nm(30), 0, -1}), -transverse_wavevector({nm(30), 0, +1}));
  EXPECT_NEAR(to_per_nm(transverse_wavevector({nm(90), 1, +1})), 0.046542, 5e-7);
}

TEST(Kinematics, InvalidGeometry) {
  try {
    transverse_wavevector({0.0, 0, +1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidGeometry);
  }
  EXPECT_THROW(transverse_wavevector({-5.0, 0, +1}), Error);
  EXPECT_THROW(transverse_wavevector({nm(30), 0, 2}), Error);
}

TEST(Kinematics, BandGap) {
  EXPECT_NEAR(units::to_mev(band_gap({nm(30)})), 45.95, 0.01);
  EXPECT_NEAR(units::to_mev(band_gap({nm(15)})), 91.9, 0.05);
  EXPECT_EQ(band_gap({std::numeric_limits<double>::infinity()}), 0.0);
  // The gap comes from the lowest mode regardless of the configured mode.
  EXPECT_DOUBLE_EQ(band_gap({nm(30), 3, -1}), band_gap({nm(30)}));
}

TEST(Kinematics, BandGapTimesWidthIsConstant) {
  const PhysicalConstants c;
  const double expected = 2.0 * kPi * c.hbar_vf / 3.0;
  for (double w = 10.0; w < 5000.0; w *= 1.37) {
    EXPECT_NEAR(band_gap({w}) * w, expected, 1e-12 * expected);
  }
}

TEST(Kinematics, IncidenceAngle) {
  const double k_y = transverse_wavevector({nm(30), 0, +1});
  const double theta = incidence_angle(units::mev(60), k_y);
  EXPECT_NEAR(theta, 0.3927, 5e-4);
  EXPECT_NEAR(theta * 180.0 / kPi, 22.5, 0.1);
  EXPECT_EQ(incidence_angle(0.06, 0.0), 0.0);
  EXPECT_LT(incidence_angle(1e9, k_y), 1e-10);
  // Holes use |energy|.
  EXPECT_DOUBLE_EQ(incidence_angle(-0.06, k_y), theta);
}

TEST(Kinematics, EvanescentModeIsAnError) {
  const double k_y = transverse_wavevector({nm(30), 0, +1});
  const double edge = PhysicalConstants{}.hbar_vf * k_y;
  try {
    incidence_angle(0.5 * edge, k_y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EvanescentMode);
  }
  EXPECT_THROW(incidence_angle(edge, k_y), Error);
}

TEST(Kinematics, AngleProperties) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ky(-0.05, 0.05), scale(1.0001, 50.0);
  const PhysicalConstants c;
  for (int i = 0; i < 500; ++i) {
    const double k_y = ky(rng);
    const double energy = c.hbar_vf * std::abs(k_y) * scale(rng);
    const double theta = incidence_angle(energy, k_y);
    ASSERT_LT(std::abs(theta), kPi / 2);
    ASSERT_NEAR(std::sin(theta) * energy / c.hbar_vf, k_y, 1e-12 * std::abs(k_y) + 1e-300);
  }
  double prev = kPi;
  for (double e = 0.021; e < 2.0; e *= 1.1) {
    const double theta = incidence_angle(e, 0.003);
    EXPECT_LT(theta, prev);
    prev = theta;
  }
}

TEST(Kinematics, ElectronKinematics) {
  const auto kin = electron_kinematics(units::mev(60), {nm(30), 0, +1});
  EXPECT_EQ(kin.s, +1);
  EXPECT_GT(kin.k_x, 0.0);
  EXPECT_NEAR(kin.k_x * kin.k_x + kin.k_y * kin.k_y, kin.k * kin.k, 1e-12 * kin.k * kin.k);
  EXPECT_NEAR(std::atan2(kin.k_y, kin.k_x), kin.theta, 1e-12);
  const auto hole = electron_kinematics(-units::mev(60), {nm(30), 0, +1});
  EXPECT_EQ(hole.s, -1);
  EXPECT_DOUBLE_EQ(hole.theta, kin.theta);
}

TEST(Kinematics, DeBroglieWavelength) {
  EXPECT_NEAR(units::to_nm(de_broglie_wavelength(units::mev(60))), 68.9, 0.05);
  EXPECT_NEAR(units::to_nm(de_broglie_wavelength(units::mev(120))), 34.5, 0.05);
  EXPECT_NEAR(units::to_nm(de_broglie_wavelength(units::mev(41.3))), 100.0, 0.15);
  EXPECT_THROW(de_broglie_wavelength(0.0), Error);
  const double two_pi_hv = 2.0 * kPi * PhysicalConstants{}.hbar_vf;
  for (double e = 1e-3; e < 10.0; e *= 1.7) {
    EXPECT_NEAR(de_broglie_wavelength(e) * e, two_pi_hv, 1e-14 * two_pi_hv);
  }
}

TEST(Kinematics, DeltaRegimeValidity) {
  const auto ok = validate_delta_regime(nm(10), units::mev(60), nm(100));
  EXPECT_TRUE(ok.delta_regime_ok);
  EXPECT_TRUE(ok.within_inelastic_length);
  EXPECT_NEAR(ok.ratio_5dx_over_lambda, 50.0 / 68.93, 1e-3);

  const auto marginal = validate_delta_regime(nm(21), units::mev(60), nm(150));
  EXPECT_FALSE(marginal.delta_regime_ok);
  EXPECT_GT(marginal.ratio_5dx_over_lambda, 1.0);
  EXPECT_FALSE(marginal.within_inelastic_length);

  EXPECT_TRUE(validate_delta_regime(1e-9, units::mev(1), 0.0).delta_regime_ok);
  EXPECT_THROW(validate_delta_regime(0.0, 0.06, 0.0), Error);
}
