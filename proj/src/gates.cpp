#include "kleingate/gates.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/tools/roots.hpp>
#include <Eigen/Eigenvalues>

#include "kleingate/error.hpp"

namespace kleingate {
namespace {

// Brackets in eV A at the reference hbar v_F, rescaled for other constants.
constexpr double kReferenceHbarVf = 6.582;
constexpr double kBracketLow = 1.0;
constexpr double kBracketSwapHigh = 100.0;
constexpr double kBracketSqrtSwapHigh = 200.0;

SpinResolvedAmplitudes frontal(double coupling, const PhysicalConstants& consts) {
  return spin_resolved_amplitudes({coupling, 0.0, +1, consts});
}

template <class F>
double bisect_root(F f, double lo, double hi, const char* what) {
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream msg;
    msg << what << ": no sign change on [" << lo << ", " << hi << "]";
    throw Error(ErrorKind::Search, msg.str());
  }
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol, max_iter);
  return 0.5 * (a + b);
}

}  // namespace

std::string_view to_string(GateClass c) {
  switch (c) {
    case GateClass::IdentityLike: return "IDENTITY_LIKE";
    case GateClass::Swap: return "SWAP";
    case GateClass::SqrtSwap: return "SQRT_SWAP";
    case GateClass::Entangling: return "ENTANGLING";
    case GateClass::NonUnitary: return "NON_UNITARY";
  }
  return "UNKNOWN";
}

TwoQubitDensity::TwoQubitDensity(const Eigen::Matrix4cd& rho) : rho_(rho) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) throw Error(ErrorKind::Domain, "density matrix is not Hermitian");
  if (std::abs(rho.trace() - cplx{1.0, 0.0}) > 1e-12) {
    throw Error(ErrorKind::Domain, "density matrix does not have unit trace");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw Error(ErrorKind::Domain, "density matrix is not positive semidefinite");
  }
}

TwoQubitDensity TwoQubitDensity::pure(const Eigen::Vector4cd& state) {
  const double n = state.norm();
  if (!(n > 0.0)) throw Error(ErrorKind::Domain, "zero state vector");
  const Eigen::Vector4cd v = state / n;
  return TwoQubitDensity(v * v.adjoint());
}

TransmissionMatrix TransmissionMatrix::from_amplitudes(const SpinResolvedAmplitudes& amps) {
  TransmissionMatrix T;
  T.m.setZero();
  T.m(0, 0) = amps.t_aligned;
  T.m(3, 3) = amps.t_aligned;
  T.m(1, 1) = amps.t_n;
  T.m(2, 2) = amps.t_n;
  T.m(1, 2) = amps.t_s;
  T.m(2, 1) = amps.t_s;
  return T;
}

double gate_condition(cplx t_n, cplx t_s) { return std::abs(t_n + t_s) - std::abs(t_n - t_s); }

double success_probability(cplx t_n, cplx t_s) { return std::norm(t_n) + std::norm(t_s); }

TransmittedState apply_transmission_map(const TransmissionMatrix& T, const TwoQubitDensity& rho) {
  const Eigen::Matrix4cd out = T.m * rho.matrix() * T.m.adjoint();
  const double p = out.trace().real();
  if (!(p > 0.0)) {
    throw Error(ErrorKind::Numeric, "transmission probability is zero; state not normalizable");
  }
  const Eigen::Matrix4cd normalized = 0.5 * (out + out.adjoint()) / p;
  return {TwoQubitDensity(normalized), p};
}

double concurrence(const Eigen::Vector4cd& state) {
  if (std::abs(state.squaredNorm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::Domain, "concurrence needs a unit-norm state");
  }
  return 2.0 * std::abs(state(0) * state(3) - state(1) * state(2));
}

double swap_coupling_closed_form(const PhysicalConstants& consts) {
  consts.validate();
  return 8.0 * consts.hbar_vf / std::sqrt(3.0);
}

std::pair<double, double> sqrt_swap_couplings_closed_form(const PhysicalConstants& consts) {
  consts.validate();
  const double s7 = std::sqrt(7.0);
  const double pre = 8.0 * consts.hbar_vf / 3.0;
  return {pre * std::sqrt(11.0 - 4.0 * s7), pre * std::sqrt(11.0 + 4.0 * s7)};
}

double find_swap_coupling(const PhysicalConstants& consts) {
  consts.validate();
  const double scale = consts.hbar_vf / kReferenceHbarVf;
  // |t_n| signed by Im(t_n conj t_s), which changes sign exactly where the
  // no-flip amplitude passes through zero.
  auto signed_no_flip = [&](double j) {
    const auto a = frontal(j, consts);
    const double side = std::imag(a.t_n * std::conj(a.t_s));
    return std::copysign(std::abs(a.t_n), side);
  };
  return bisect_root(signed_no_flip, kBracketLow * scale, kBracketSwapHigh * scale,
                     "SWAP coupling search");
}

std::pair<double, double> find_sqrt_swap_couplings(const PhysicalConstants& consts) {
  consts.validate();
  const double scale = consts.hbar_vf / kReferenceHbarVf;
  const double split = find_swap_coupling(consts);
  auto imbalance = [&](double j) {
    const auto a = frontal(j, consts);
    return std::abs(a.t_n) - std::abs(a.t_s);
  };
  return {bisect_root(imbalance, kBracketLow * scale, split, "sqrt(SWAP) lower search"),
          bisect_root(imbalance, split, kBracketSqrtSwapHigh * scale, "sqrt(SWAP) upper search")};
}

GateReport classify_amplitudes(const SpinResolvedAmplitudes& amps, double tol_unitary,
                               double tol_class) {
  GateReport report;
  report.amplitudes = amps;
  report.gate_condition = gate_condition(amps.t_n, amps.t_s);
  report.success_probability = success_probability(amps.t_n, amps.t_s);
  if (report.success_probability > 0.0) {
    report.concurrence_of_output =
        2.0 * std::abs(amps.t_n) * std::abs(amps.t_s) / report.success_probability;
  }

  const double abs_n = std::abs(amps.t_n);
  const double abs_s = std::abs(amps.t_s);
  if (std::abs(report.gate_condition) > tol_unitary) {
    report.classification = GateClass::NonUnitary;
  } else if (abs_n < tol_class) {
    report.classification = GateClass::Swap;
  } else if (std::abs(abs_n - abs_s) < tol_class) {
    report.classification = GateClass::SqrtSwap;
  } else if (abs_s < tol_class) {
    report.classification = GateClass::IdentityLike;
  } else {
    report.classification = GateClass::Entangling;
  }
  return report;
}

GateReport classify_gate(const ScatteringProblem& problem, double tol_unitary, double tol_class) {
  return classify_amplitudes(spin_resolved_amplitudes(problem), tol_unitary, tol_class);
}

}  // namespace kleingate
