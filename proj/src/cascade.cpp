#include "kleingate/cascade.hpp"

#include "kleingate/gates.hpp"

namespace kleingate {
namespace {

// Applies a 4x4 electron-dot map to the (electron, dot) pair selected by
// `dot` (1 or 2) inside the three-spin state.
JointState apply_pair_map(const Eigen::Matrix4cd& map, const JointState& in, int dot) {
  JointState out = JointState::Zero();
  for (int spectator = 0; spectator < 2; ++spectator) {
    auto index = [&](int e, int d) {
      return dot == 1 ? joint_index(e, d, spectator) : joint_index(e, spectator, d);
    };
    for (int row = 0; row < 4; ++row) {
      cplx acc{0.0, 0.0};
      for (int col = 0; col < 4; ++col) acc += map(row, col) * in(index(col / 2, col % 2));
      out(index(row / 2, row % 2)) = acc;
    }
  }
  return out;
}

JointState product_state(const SpinState& e, const SpinState& d1, const SpinState& d2) {
  const cplx se[2] = {e.up, e.down};
  const cplx s1[2] = {d1.up, d1.down};
  const cplx s2[2] = {d2.up, d2.down};
  JointState out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) out(joint_index(a, b, c)) = se[a] * s1[b] * s2[c];
  return out;
}

JointState cascade(const Eigen::Matrix4cd& map1, const Eigen::Matrix4cd& map2,
                   const JointState& in) {
  return apply_pair_map(map2, apply_pair_map(map1, in, 1), 2);
}

}  // namespace

Eigen::Matrix4cd single_scattering_map(const SpinResolvedAmplitudes& amps) {
  return TransmissionMatrix::from_amplitudes(amps).m;
}

CascadeResult run_cascade(const CascadeConfig& config) {
  config.electron.require_normalized("electron");
  config.dot1.require_normalized("dot 1");
  config.dot2.require_normalized("dot 2");

  CascadeResult result;
  result.postselect = config.postselect;
  result.joint_state = cascade(single_scattering_map(config.gate1),
                               single_scattering_map(config.gate2),
                               product_state(config.electron, config.dot1, config.dot2));
  result.p_transmit_both = result.joint_state.squaredNorm();

  for (int e = 0; e < 2; ++e) {
    PostselectedOutcome& o = result.outcomes[e];
    o.electron = static_cast<Spin>(e);
    const Eigen::Vector4cd branch = result.joint_state.segment<4>(4 * e);
    o.probability = branch.squaredNorm();
    o.empty = !(o.probability > 0.0);
    if (!o.empty) {
      o.dots = branch / std::sqrt(o.probability);
      o.concurrence = concurrence(o.dots);
    }
  }
  return result;
}

Eigen::Matrix4cd branch_amplitude_matrix(const SpinResolvedAmplitudes& gate1,
                                         const SpinResolvedAmplitudes& gate2,
                                         bool unit_aligned_phase) {
  SpinResolvedAmplitudes g1 = gate1;
  SpinResolvedAmplitudes g2 = gate2;
  if (unit_aligned_phase) {
    // Each branch crosses each dot once, so t_T enters at most linearly per
    // gate and dividing it out is the same as setting it to one.
    g1.t_aligned = 1.0;
    g2.t_aligned = 1.0;
  }
  const Eigen::Matrix4cd map1 = single_scattering_map(g1);
  const Eigen::Matrix4cd map2 = single_scattering_map(g2);

  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int col = 0; col < 4; ++col) {
    JointState in = JointState::Zero();
    in(joint_index(0, col / 2, col % 2)) = 1.0;
    const JointState fin = cascade(map1, map2, in);
    out.col(col) = fin.segment<4>(0) + fin.segment<4>(4);
  }
  return out;
}

}  // namespace kleingate
