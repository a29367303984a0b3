#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kleingate/cascade.hpp"
#include "kleingate/error.hpp"
#include "kleingate/gates.hpp"

using namespace kleingate;

namespace {
SpinResolvedAmplitudes frontal(double j) { return spin_resolved_amplitudes({j, 0.0}); }

SpinResolvedAmplitudes ideal_swap() {
  SpinResolvedAmplitudes a;
  a.t_n = 0.0;
  a.t_s = 1.0;
  return a;
}

SpinResolvedAmplitudes ideal_sqrt_swap() {
  SpinResolvedAmplitudes a;
  a.t_n = 1.0 / std::sqrt(2.0);
  a.t_s = cplx(0.0, 1.0 / std::sqrt(2.0));
  return a;
}

SpinState random_spin(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  SpinState s{cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
  const double n = s.norm();
  s.up /= n;
  s.down /= n;
  return s;
}

// Reduced density matrix of dot 1 from the unnormalized joint state.
Eigen::Matrix2cd dot1_marginal(const JointState& psi) {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int e = 0; e < 2; ++e)
        for (int d2 = 0; d2 < 2; ++d2)
          rho(a, b) += psi(joint_index(e, a, d2)) * std::conj(psi(joint_index(e, b, d2)));
  return rho;
}
}  // namespace

TEST(SingleMap, Examples) {
  EXPECT_LT((single_scattering_map(frontal(0.0)) - Eigen::Matrix4cd::Identity()).norm(), 1e-15);
  const auto m = single_scattering_map(frontal(swap_coupling_closed_form()));
  Eigen::Vector4cd in(0, 1, 0, 0);
  const Eigen::Vector4cd out = m * in;
  EXPECT_NEAR(std::abs(out(2)), 1.0, 1e-14);
  EXPECT_LT(std::abs(out(1)), 1e-14);
  const auto a = frontal(17.0);
  const Eigen::Vector4cd aligned = single_scattering_map(a) * Eigen::Vector4cd(1, 0, 0, 0);
  EXPECT_EQ(aligned(0), a.t_aligned);
  EXPECT_EQ(aligned.tail<3>().norm(), 0.0);
  const auto unit = single_scattering_map(frontal(23.0));
  EXPECT_LT((unit.adjoint() * unit - Eigen::Matrix4cd::Identity()).norm(), 1e-12);
}

TEST(Cascade, SqrtSwapThenSwapIsDeterministicallyMaximallyEntangled) {
  CascadeConfig cfg;
  cfg.gate1 = frontal(sqrt_swap_couplings_closed_form().first);
  cfg.gate2 = frontal(swap_coupling_closed_form());
  const auto r = run_cascade(cfg);
  EXPECT_NEAR(r.p_transmit_both, 1.0, 1e-12);
  EXPECT_LT(r.outcome(Spin::Up).probability, 1e-24);
  EXPECT_TRUE(r.outcome(Spin::Up).empty || r.outcome(Spin::Up).probability < 1e-24);
  const auto& down = r.outcome(Spin::Down);
  EXPECT_NEAR(down.probability, 1.0, 1e-12);
  EXPECT_NEAR(down.concurrence, 1.0, 1e-10);
  // Weights: |t_n1| on |du>, |t_s1| on |ud>.
  EXPECT_NEAR(std::abs(down.dots(1)), 1.0 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(std::abs(down.dots(2)), 1.0 / std::sqrt(2.0), 1e-10);
}

TEST(Cascade, TwinEntanglingGatesWithPostselection) {
  CascadeConfig cfg;
  cfg.gate1 = cfg.gate2 = frontal(4.1);
  cfg.postselect = Spin::Down;
  const auto r = run_cascade(cfg);
  const auto* sel = r.selected();
  ASSERT_NE(sel, nullptr);
  EXPECT_NEAR(std::abs(sel->dots(2)), 0.69, 0.03);  // |d u>
  EXPECT_NEAR(std::abs(sel->dots(1)), 0.73, 0.03);  // |u d>
  EXPECT_NEAR(sel->probability, 0.18, 0.02);
  // Independent arithmetic: |t_n t_s|^2 + |t_s|^2.
  const auto a = frontal(4.1);
  EXPECT_NEAR(sel->probability, std::norm(a.t_n * a.t_s) + std::norm(a.t_s), 1e-14);
  EXPECT_NEAR(r.outcome(Spin::Up).probability + sel->probability, r.p_transmit_both, 1e-12);
}

TEST(Cascade, IdentityGatesPreserveInput) {
  std::mt19937_64 rng(9);
  CascadeConfig cfg;
  cfg.gate1 = cfg.gate2 = frontal(0.0);
  cfg.electron = random_spin(rng);
  cfg.dot1 = random_spin(rng);
  cfg.dot2 = random_spin(rng);
  const auto r = run_cascade(cfg);
  EXPECT_NEAR(r.p_transmit_both, 1.0, 1e-12);
  const cplx e[2] = {cfg.electron.up, cfg.electron.down};
  const cplx d1[2] = {cfg.dot1.up, cfg.dot1.down};
  const cplx d2[2] = {cfg.dot2.up, cfg.dot2.down};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        EXPECT_LT(std::abs(r.joint_state(joint_index(a, b, c)) - e[a] * d1[b] * d2[c]), 1e-15);
}

TEST(Cascade, NormAccounting) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> jd(0.0, 120.0), td(-0.8, 0.8);
  for (int i = 0; i < 200; ++i) {
    CascadeConfig cfg;
    const bool oblique = i % 2;
    cfg.gate1 = spin_resolved_amplitudes({jd(rng), oblique ? td(rng) : 0.0});
    cfg.gate2 = spin_resolved_amplitudes({jd(rng), oblique ? td(rng) : 0.0});
    cfg.electron = random_spin(rng);
    cfg.dot1 = random_spin(rng);
    cfg.dot2 = random_spin(rng);
    const auto r = run_cascade(cfg);
    ASSERT_NEAR(r.joint_state.squaredNorm(), r.p_transmit_both, 1e-15);
    ASSERT_LE(r.p_transmit_both, 1.0 + 1e-12);
    ASSERT_NEAR(r.outcome(Spin::Up).probability + r.outcome(Spin::Down).probability,
                r.p_transmit_both, 1e-12);
    if (!oblique) ASSERT_NEAR(r.p_transmit_both, 1.0, 1e-12);
  }
}

TEST(Cascade, SecondGateDoesNotAffectFirstDot) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> jd(0.0, 120.0);
  for (int i = 0; i < 50; ++i) {
    CascadeConfig cfg;
    cfg.gate1 = frontal(jd(rng));
    cfg.electron = random_spin(rng);
    cfg.dot1 = random_spin(rng);
    cfg.dot2 = random_spin(rng);
    cfg.gate2 = frontal(jd(rng));
    const auto first = dot1_marginal(run_cascade(cfg).joint_state);
    cfg.gate2 = frontal(jd(rng));
    const auto second = dot1_marginal(run_cascade(cfg).joint_state);
    ASSERT_LT((first - second).norm(), 1e-12);
  }
}

TEST(Cascade, AlignedSpinsOnlyPickUpAPhase) {
  const auto g1 = spin_resolved_amplitudes({12.0, 0.3});
  const auto g2 = spin_resolved_amplitudes({44.0, -0.1});
  for (Spin s : {Spin::Up, Spin::Down}) {
    const SpinState st = s == Spin::Up ? SpinState::spin_up() : SpinState::spin_down();
    CascadeConfig cfg{g1, g2, st, st, st};
    const auto r = run_cascade(cfg);
    const int k = static_cast<int>(s);
    JointState expected = JointState::Zero();
    expected(joint_index(k, k, k)) = g1.t_aligned * g2.t_aligned;
    EXPECT_LT((r.joint_state - expected).norm(), 1e-15);
  }
}

TEST(Cascade, EmptyPostselectionIsFlagged) {
  CascadeConfig cfg;
  cfg.gate1 = cfg.gate2 = frontal(0.0);
  cfg.postselect = Spin::Down;
  const auto r = run_cascade(cfg);
  EXPECT_TRUE(r.selected()->empty);
  EXPECT_EQ(r.selected()->probability, 0.0);
  EXPECT_FALSE(r.outcome(Spin::Up).empty);
}

TEST(Cascade, RejectsUnnormalizedSpins) {
  CascadeConfig cfg;
  cfg.dot2 = SpinState{1.0, 1.0};
  EXPECT_THROW(run_cascade(cfg), Error);
}

TEST(BranchMatrix, MatchesConventionalEntries) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> jd(0.0, 120.0), td(-0.6, 0.6);
  for (int i = 0; i < 100; ++i) {
    const auto g1 = spin_resolved_amplitudes({jd(rng), td(rng)});
    const auto g2 = spin_resolved_amplitudes({jd(rng), td(rng)});
    const auto m = branch_amplitude_matrix(g1, g2);
    const cplx tn1 = g1.t_n, ts1 = g1.t_s, tn2 = g2.t_n, ts2 = g2.t_s;
    Eigen::Matrix4cd expected;
    expected << 1.0, ts2, ts1 * tn2, 0.0,
                0.0, tn2, ts1 * ts2, ts1,
                0.0, 0.0, tn1, tn1 * ts2,
                0.0, 0.0, 0.0, tn1 * tn2;
    ASSERT_LT((m - expected).norm(), 1e-14);
    const auto raw = branch_amplitude_matrix(g1, g2, false);
    for (int r = 1; r < 4; ++r)
      for (int c = 0; c < r; ++c) ASSERT_EQ(raw(r, c), cplx(0.0));
    ASSERT_LT(std::abs(raw(0, 0) - g1.t_aligned * g2.t_aligned), 1e-15);
  }
  EXPECT_LT((branch_amplitude_matrix(frontal(0.0), frontal(0.0)) - Eigen::Matrix4cd::Identity())
                .norm(),
            1e-15);
}
