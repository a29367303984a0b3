#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "kleingate/kinematics.hpp"

namespace kleingate {

using cplx = std::complex<double>;

/// Electron-dot scattering off a contact Heisenberg interaction
/// J S_e.S_d delta(x) for a massless Dirac electron.
struct ScatteringProblem {
  double coupling = 0.0;  // J in eV * angstrom; negative is ferromagnetic
  double theta = 0.0;     // radians, |theta| < pi/2
  int s = +1;             // +1 electron, -1 hole
  PhysicalConstants consts{};

  void validate() const;
};

/// Single spin-1/2 amplitude pair (up, down).
struct SpinState {
  cplx up{1.0, 0.0};
  cplx down{0.0, 0.0};

  static SpinState spin_up() { return {1.0, 0.0}; }
  static SpinState spin_down() { return {0.0, 1.0}; }

  double norm() const { return std::sqrt(std::norm(up) + std::norm(down)); }
  /// Throws Domain unless |up|^2 + |down|^2 = 1 within 1e-12.
  void require_normalized(const char* what) const;
};

/// Electron and dot spinors of the incoming product state.
struct SpinConfiguration {
  SpinState electron{};
  SpinState dot{};

  /// Product state on the basis {uu, ud, du, dd}, electron first.
  Eigen::Vector4cd product() const;
};

/// Reflection and transmission for one spin-independent channel.
struct ScalarAmplitudes {
  cplx r;
  cplx t;
};

struct ChannelAmplitudes {
  cplx r_singlet;
  cplx t_singlet;
  cplx r_triplet;
  cplx t_triplet;
};

/// Amplitudes for an anti-aligned incoming pair: n = no flip, s = mutual
/// spin flip. The aligned (triplet) amplitudes are carried as well because
/// the two-qubit transmission map needs them.
struct SpinResolvedAmplitudes {
  cplx t_n{1.0, 0.0};
  cplx t_s{0.0, 0.0};
  cplx r_n{0.0, 0.0};
  cplx r_s{0.0, 0.0};
  cplx t_aligned{1.0, 0.0};
  cplx r_aligned{0.0, 0.0};

  double total_probability() const {
    return std::norm(t_n) + std::norm(t_s) + std::norm(r_n) + std::norm(r_s);
  }
};

struct FrontalAmplitudes {
  cplx t_n;
  cplx t_s;
};

/// All outgoing spin amplitudes of one scattering event, indexed by the
/// electron (x) dot basis {uu, ud, du, dd}.
struct FullSolution {
  std::array<cplx, 4> reflected{};
  std::array<cplx, 4> transmitted{};
  double rcond = 0.0;  // reciprocal condition estimate of the linear system

  double reflected_probability() const;
  double transmitted_probability() const;
  double total_probability() const { return reflected_probability() + transmitted_probability(); }
};

/// Index of |e, d> in the two-spin basis, 0 = up, 1 = down.
constexpr int pair_index(int electron, int dot) { return 2 * electron + dot; }

/// Exchange operator S_e.S_d (hbar = 1) on {uu, ud, du, dd}.
Eigen::Matrix4cd exchange_operator();

/// V_S = J/2 [S(S+1) - 3/2]; S = 0 singlet, S = 1 triplet.
double channel_potential(double coupling, int total_spin);

/// Solves -i hbar v_F sigma_x [psi(0+) - psi(0-)] + (V/2) [psi(0+) + psi(0-)] = 0
/// for the reflected and transmitted amplitudes of a pseudospinor plane wave.
ScalarAmplitudes scalar_delta_scattering(double potential, double theta, int s,
                                         const PhysicalConstants& consts = {});

ChannelAmplitudes channel_amplitudes(const ScatteringProblem& problem);

/// Recombines the singlet and triplet channels for an anti-aligned pair.
/// Singlet convention |S> = (|ud> - |du>)/sqrt 2, so t_s = (t_T - t_S)/2.
SpinResolvedAmplitudes spin_resolved_amplitudes(const ScatteringProblem& problem);

/// Literal theta = 0 rational forms
///   t_n = (64 h^2 - 3 J^2) / (64 h^2 - 16 i h J + 3 J^2)
///   t_s = 32 i h J / (64 h^2 - 16 i h J + 3 J^2),  h = hbar v_F.
/// Independent of the channel solver; used as its oracle.
FrontalAmplitudes closed_form_theta0(double coupling, const PhysicalConstants& consts = {});

/// Solves the full 8x8 boundary-value problem over pseudospin (x) electron
/// spin (x) dot spin with dense partial-pivot LU, no channel decomposition.
FullSolution direct_solve(const ScatteringProblem& problem, const SpinConfiguration& input);

}  // namespace kleingate
