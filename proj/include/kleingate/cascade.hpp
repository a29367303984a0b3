#pragma once

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "kleingate/scattering.hpp"

namespace kleingate {

using JointState = Eigen::Matrix<cplx, 8, 1>;

enum class Spin { Up = 0, Down = 1 };

/// Index of |e, d1, d2> in the three-spin basis, electron most significant.
constexpr int joint_index(int electron, int dot1, int dot2) { return 4 * electron + 2 * dot1 + dot2; }

struct CascadeConfig {
  SpinResolvedAmplitudes gate1{};
  SpinResolvedAmplitudes gate2{};
  SpinState electron = SpinState::spin_up();
  SpinState dot1 = SpinState::spin_down();
  SpinState dot2 = SpinState::spin_down();
  std::optional<Spin> postselect{};
  double separation = 1000.0;  // angstrom; metadata for validity reporting only
};

/// Dot-dot state after detecting the electron in one spin state.
struct PostselectedOutcome {
  Spin electron = Spin::Up;
  bool empty = true;                           // zero probability of this outcome
  Eigen::Vector4cd dots = Eigen::Vector4cd::Zero();  // normalized, {uu, ud, du, dd}
  double probability = 0.0;
  double concurrence = 0.0;
};

struct CascadeResult {
  JointState joint_state = JointState::Zero();  // unnormalized; norm^2 = p_transmit_both
  double p_transmit_both = 0.0;
  std::array<PostselectedOutcome, 2> outcomes{};  // indexed by Spin
  std::optional<Spin> postselect{};

  const PostselectedOutcome& outcome(Spin s) const { return outcomes[static_cast<int>(s)]; }
  /// The requested outcome, or nullptr when no post-selection was asked for.
  const PostselectedOutcome* selected() const {
    return postselect ? &outcome(*postselect) : nullptr;
  }
};

/// Transmission-only map on electron (x) dot; identical to the gate
/// transmission matrix.
Eigen::Matrix4cd single_scattering_map(const SpinResolvedAmplitudes& amps);

/// Applies gate1 to (electron, dot1), then gate2 to (electron, dot2).
/// Reflected amplitude at either dot counts as loss.
CascadeResult run_cascade(const CascadeConfig& config);

/// Branch-amplitude matrix on dot1 (x) dot2 for an injected |u>_e, summed
/// over the final electron spin. Rows are output states, columns inputs.
/// With `unit_aligned_phase` the aligned-channel factors t_T are divided
/// out, giving the conventional form with unit aligned entries.
Eigen::Matrix4cd branch_amplitude_matrix(const SpinResolvedAmplitudes& gate1,
                             const SpinResolvedAmplitudes& gate2,
                             bool unit_aligned_phase = true);

}  // namespace kleingate
