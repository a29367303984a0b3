#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "kleingate/error.hpp"
#include "kleingate/gates.hpp"

using namespace kleingate;

namespace {
constexpr double kPi = std::numbers::pi;
const double kH = PhysicalConstants{}.hbar_vf;

Eigen::Vector4cd ket(int i) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(i) = 1.0;
  return v;
}
}  // namespace

TEST(GateCondition, Examples) {
  EXPECT_EQ(gate_condition(1.0, 0.0), 0.0);
  EXPECT_EQ(gate_condition(0.0, 1.0), 0.0);
  for (double j = 0.0; j <= 200.0; j += 0.5) {
    const auto a = spin_resolved_amplitudes({j, 0.0});
    ASSERT_LT(std::abs(gate_condition(a.t_n, a.t_s)), 1e-12);
  }
}

TEST(GateCondition, ZeroExactlyWhenRealCrossTermVanishes) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int i = 0; i < 2000; ++i) {
    const cplx a(g(rng), g(rng));
    cplx b(g(rng), g(rng));
    if (i % 2 == 0) b = cplx(0.0, g(rng)) * a / std::abs(a);  // orthogonal phase
    const double cross = std::real(a * std::conj(b));
    const double gc = gate_condition(a, b);
    // |a+b|^2 - |a-b|^2 = 4 Re(a conj b)
    const double direct = std::abs(a + b) - std::abs(a - b);
    ASSERT_DOUBLE_EQ(gc, direct);
    ASSERT_NEAR(gc * (std::abs(a + b) + std::abs(a - b)), 4.0 * cross, 1e-12);
    ASSERT_EQ(std::abs(gc) < 1e-12, std::abs(cross) < 1e-11) << a << " " << b;
  }
}

TEST(SuccessProbability, Examples) {
  EXPECT_EQ(success_probability(1.0, 0.0), 1.0);
  for (double j : {0.0, 4.1, 30.0, 77.0}) {
    const auto a = spin_resolved_amplitudes({j, 0.0});
    EXPECT_NEAR(success_probability(a.t_n, a.t_s), 1.0, 1e-12);
  }
  const auto oblique = spin_resolved_amplitudes({swap_coupling_closed_form(), kPi / 16});
  const double drop = 1.0 - success_probability(oblique.t_n, oblique.t_s);
  EXPECT_GE(drop, 0.0);
  EXPECT_LE(drop, 0.10);
}

TEST(TwoQubitDensity, Validation) {
  EXPECT_NO_THROW(TwoQubitDensity::pure(ket(1)));
  Eigen::Matrix4cd bad = Eigen::Matrix4cd::Zero();
  bad(0, 0) = 0.5;
  EXPECT_THROW(TwoQubitDensity{bad}, Error);
  bad(0, 0) = 1.0;
  bad(0, 1) = 0.3;
  EXPECT_THROW(TwoQubitDensity{bad}, Error);
  Eigen::Matrix4cd neg = Eigen::Matrix4cd::Zero();
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(TwoQubitDensity{neg}, Error);
}

TEST(TransmissionMap, Identity) {
  const auto rho = TwoQubitDensity::pure(Eigen::Vector4cd(0.5, cplx(0, 0.5), -0.5, 0.5));
  const auto out = apply_transmission_map(TransmissionMatrix{}, rho);
  EXPECT_NEAR(out.p_transmit, 1.0, 1e-15);
  EXPECT_LT((out.rho.matrix() - rho.matrix()).norm(), 1e-15);
}

TEST(TransmissionMap, SwapFlipsAntiAlignedPair) {
  SpinResolvedAmplitudes swap;
  swap.t_n = 0.0;
  swap.t_s = 1.0;
  const auto out = apply_transmission_map(TransmissionMatrix::from_amplitudes(swap),
                                          TwoQubitDensity::pure(ket(1)));
  EXPECT_NEAR(out.p_transmit, 1.0, 1e-15);
  EXPECT_LT((out.rho.matrix() - TwoQubitDensity::pure(ket(2)).matrix()).norm(), 1e-15);
}

TEST(TransmissionMap, SqrtSwapMaximallyEntangles) {
  const double j_low = sqrt_swap_couplings_closed_form().first;
  const auto amps = spin_resolved_amplitudes({j_low, 0.0});
  const auto T = TransmissionMatrix::from_amplitudes(amps);
  const auto out = apply_transmission_map(T, TwoQubitDensity::pure(ket(1)));
  EXPECT_NEAR(out.p_transmit, 1.0, 1e-12);
  const Eigen::Vector4cd psi = T.m * ket(1);
  EXPECT_NEAR(concurrence(psi), 1.0, 1e-12);
}

TEST(TransmissionMap, ZeroTransmissionIsAnError) {
  SpinResolvedAmplitudes none;
  none.t_n = none.t_s = none.t_aligned = 0.0;
  EXPECT_THROW(apply_transmission_map(TransmissionMatrix::from_amplitudes(none),
                                      TwoQubitDensity::pure(ket(0))),
               Error);
}

TEST(TransmissionMap, OutputIsAValidDensity) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> jd(0.0, 150.0), td(-1.2, 1.2);
  for (int i = 0; i < 200; ++i) {
    Eigen::Vector4cd a, b;
    for (int k = 0; k < 4; ++k) {
      a(k) = cplx(g(rng), g(rng));
      b(k) = cplx(g(rng), g(rng));
    }
    a.normalize();
    b.normalize();
    const Eigen::Matrix4cd mixed = 0.3 * a * a.adjoint() + 0.7 * b * b.adjoint();
    const auto amps = spin_resolved_amplitudes({jd(rng), td(rng)});
    // The constructor of TwoQubitDensity checks Hermiticity, trace, positivity.
    const auto out = apply_transmission_map(TransmissionMatrix::from_amplitudes(amps),
                                            TwoQubitDensity{mixed});
    ASSERT_GT(out.p_transmit, 0.0);
    ASSERT_LE(out.p_transmit, 1.0 + 1e-12);
  }
}

TEST(TransmissionMatrix, BlockStructure) {
  SpinResolvedAmplitudes a;
  a.t_n = cplx(0.1, 0.2);
  a.t_s = cplx(0.3, -0.4);
  a.t_aligned = cplx(0.6, 0.8);
  const auto T = TransmissionMatrix::from_amplitudes(a).m;
  EXPECT_EQ(T(0, 0), a.t_aligned);
  EXPECT_EQ(T(3, 3), a.t_aligned);
  EXPECT_EQ(T(1, 2), a.t_s);
  EXPECT_EQ(T(2, 2), a.t_n);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const bool inside = (r == c) || (r == 1 && c == 2) || (r == 2 && c == 1);
      if (!inside) EXPECT_EQ(T(r, c), cplx(0.0));
    }
}

TEST(Concurrence, Examples) {
  EXPECT_NEAR(concurrence((ket(1) + ket(2)) / std::sqrt(2.0)), 1.0, 1e-15);
  EXPECT_EQ(concurrence(ket(1)), 0.0);
  Eigen::Vector4cd partial = 0.953 * ket(1) + cplx(0, 0.302) * ket(2);
  partial.normalize();
  EXPECT_NEAR(concurrence(partial), 0.576, 0.002);
  EXPECT_THROW(concurrence(2.0 * ket(0)), Error);
}

TEST(Concurrence, InvariantUnderLocalPhases) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  for (int i = 0; i < 500; ++i) {
    Eigen::Vector4cd v;
    for (int k = 0; k < 4; ++k) v(k) = cplx(g(rng), g(rng));
    v.normalize();
    const double alpha = ph(rng), beta = ph(rng);
    // diag(1, e^{i alpha}) on the first qubit, diag(1, e^{i beta}) on the second.
    Eigen::Vector4cd w = v;
    w(1) *= std::polar(1.0, beta);
    w(2) *= std::polar(1.0, alpha);
    w(3) *= std::polar(1.0, alpha + beta);
    ASSERT_NEAR(concurrence(w), concurrence(v), 1e-12);
  }
}

TEST(SpecialCouplings, Swap) {
  EXPECT_NEAR(find_swap_coupling(), 30.40, 0.005);
  EXPECT_NEAR(find_swap_coupling() / swap_coupling_closed_form() - 1.0, 0.0, 1e-9);
  EXPECT_NEAR(find_swap_coupling({1.0}), 8.0 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(find_swap_coupling({2.0 * kH}), 2.0 * find_swap_coupling(), 1e-8);
}

TEST(SpecialCouplings, SqrtSwap) {
  const auto [lo, hi] = find_sqrt_swap_couplings();
  const auto [clo, chi] = sqrt_swap_couplings_closed_form();
  EXPECT_NEAR(lo, 11.33, 0.01);
  EXPECT_NEAR(hi, 81.54, 0.01);
  EXPECT_NEAR(lo / clo - 1.0, 0.0, 1e-9);
  EXPECT_NEAR(hi / chi - 1.0, 0.0, 1e-9);
  for (double j : {lo, hi}) {
    const auto a = spin_resolved_amplitudes({j, 0.0});
    EXPECT_NEAR(std::norm(a.t_n), 0.5, 1e-10);
    EXPECT_NEAR(std::norm(a.t_s), 0.5, 1e-10);
  }
  const auto unit = find_sqrt_swap_couplings({1.0});
  EXPECT_NEAR(unit.first, 1.7221, 1e-4);
  EXPECT_NEAR(unit.second, 12.389, 1e-3);
}

TEST(Classification, SpecialPoints) {
  EXPECT_EQ(classify_gate({find_swap_coupling(), 0.0}).classification, GateClass::Swap);
  EXPECT_EQ(classify_gate({find_sqrt_swap_couplings().first, 0.0}).classification,
            GateClass::SqrtSwap);
  EXPECT_EQ(classify_gate({find_sqrt_swap_couplings().second, 0.0}).classification,
            GateClass::SqrtSwap);
  EXPECT_EQ(classify_gate({4.1, 0.0}).classification, GateClass::Entangling);
  EXPECT_EQ(classify_gate({0.0, 0.0}).classification, GateClass::IdentityLike);
  // Rounded couplings only classify with a looser class tolerance.
  EXPECT_EQ(classify_gate({30.40, 0.0}, 1e-6, 1e-4).classification, GateClass::Swap);
  EXPECT_EQ(classify_gate({30.40, 0.0}).classification, GateClass::Entangling);
}

TEST(Classification, ObliqueIsNonUnitaryAwayFromSwapLine) {
  const auto rep = classify_gate({11.33, kPi / 8});
  EXPECT_EQ(rep.classification, GateClass::NonUnitary);
  EXPECT_GT(std::abs(rep.gate_condition), 1e-6);
  EXPECT_EQ(classify_gate({swap_coupling_closed_form(), kPi / 8}).classification,
            GateClass::Swap);
}

TEST(Classification, FrontalNeverNonUnitary) {
  for (double j = 0.0; j <= 500.0; j += 0.25) {
    const auto rep = classify_gate({j, 0.0});
    ASSERT_NE(rep.classification, GateClass::NonUnitary) << "J = " << j;
    ASSERT_GE(rep.success_probability, 0.0);
    ASSERT_LE(rep.success_probability, 1.0 + 1e-12);
  }
}

TEST(Classification, SwapLineSatisfiesConditionAtAllAngles) {
  const double js = find_swap_coupling();
  for (int i = 0; i <= 32; ++i) {
    const double theta = -kPi / 4 + i * (kPi / 2) / 32;
    const auto sol = direct_solve({js, theta}, {SpinState::spin_up(), SpinState::spin_down()});
    ASSERT_LT(std::abs(gate_condition(sol.transmitted[1], sol.transmitted[2])), 1e-8);
  }
}

TEST(Classification, ConcurrenceOfOutput) {
  EXPECT_NEAR(classify_gate({find_sqrt_swap_couplings().first, 0.0}).concurrence_of_output, 1.0,
              1e-10);
  EXPECT_NEAR(classify_gate({0.0, 0.0}).concurrence_of_output, 0.0, 1e-15);
  EXPECT_NEAR(classify_gate({4.1, 0.0}).concurrence_of_output, 0.576, 0.002);
}
