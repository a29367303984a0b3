#pragma once

#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "kleingate/scattering.hpp"

namespace kleingate {

enum class GateClass { IdentityLike, Swap, SqrtSwap, Entangling, NonUnitary };

std::string_view to_string(GateClass c);

struct GateReport {
  double gate_condition = 0.0;
  double success_probability = 0.0;
  GateClass classification = GateClass::IdentityLike;
  /// Concurrence of the transmitted state for an incoming |ud>.
  double concurrence_of_output = 0.0;
  SpinResolvedAmplitudes amplitudes{};
};

/// Hermitian, unit-trace, positive semidefinite 4x4 density matrix on the
/// electron (x) dot basis {uu, ud, du, dd}.
class TwoQubitDensity {
 public:
  explicit TwoQubitDensity(const Eigen::Matrix4cd& rho);

  static TwoQubitDensity pure(const Eigen::Vector4cd& state);

  const Eigen::Matrix4cd& matrix() const { return rho_; }

 private:
  Eigen::Matrix4cd rho_;
};

/// Transmission-conditioned spin map: t_aligned on |uu>, |dd>, and
/// [[t_n, t_s], [t_s, t_n]] on the anti-aligned pair.
struct TransmissionMatrix {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();

  static TransmissionMatrix from_amplitudes(const SpinResolvedAmplitudes& amps);
};

struct TransmittedState {
  TwoQubitDensity rho;
  double p_transmit;
};

/// |t_n + t_s| - |t_n - t_s|; zero exactly when Re(t_n conj t_s) = 0.
double gate_condition(cplx t_n, cplx t_s);

/// |t_n|^2 + |t_s|^2.
double success_probability(cplx t_n, cplx t_s);

/// rho' = T rho T^dag / Tr[T rho T^dag]. Throws Numeric when nothing is
/// transmitted.
TransmittedState apply_transmission_map(const TransmissionMatrix& T, const TwoQubitDensity& rho);

/// Pure-state concurrence 2|ad - bc| of a unit-norm state (a, b, c, d).
double concurrence(const Eigen::Vector4cd& state);

/// Closed forms: SWAP at J = 8 h / sqrt 3, sqrt(SWAP) at
/// J = (8/3) h sqrt(11 -+ 4 sqrt 7), h = hbar v_F.
double swap_coupling_closed_form(const PhysicalConstants& consts = {});
std::pair<double, double> sqrt_swap_couplings_closed_form(const PhysicalConstants& consts = {});

/// Bisection for the frontal no-flip zero. The bracket [1, 100] eV A is fixed
/// in units of hbar v_F = 6.582 eV A and rescaled with the constants.
double find_swap_coupling(const PhysicalConstants& consts = {});

/// Bisection for the two frontal crossings |t_n| = |t_s|, split at the SWAP
/// coupling.
std::pair<double, double> find_sqrt_swap_couplings(const PhysicalConstants& consts = {});

inline constexpr double kDefaultUnitaryTolerance = 1e-6;
inline constexpr double kDefaultClassTolerance = 1e-6;

GateReport classify_gate(const ScatteringProblem& problem,
                         double tol_unitary = kDefaultUnitaryTolerance,
                         double tol_class = kDefaultClassTolerance);

/// Classification from precomputed amplitudes.
GateReport classify_amplitudes(const SpinResolvedAmplitudes& amps,
                               double tol_unitary = kDefaultUnitaryTolerance,
                               double tol_class = kDefaultClassTolerance);

}  // namespace kleingate
