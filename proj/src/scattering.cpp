#include "kleingate/scattering.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kleingate/error.hpp"

namespace kleingate {
namespace {

constexpr cplx kI{0.0, 1.0};

// Incident/transmitted and reflected pseudospinors.
Eigen::Vector2cd forward_pseudospinor(double theta, int s) {
  return {1.0, static_cast<double>(s) * std::polar(1.0, theta)};
}

Eigen::Vector2cd backward_pseudospinor(double theta, int s) {
  return {1.0, -static_cast<double>(s) * std::polar(1.0, -theta)};
}

Eigen::Vector2cd sigma_x(const Eigen::Vector2cd& v) { return {v(1), v(0)}; }

// a (x) M, with the pseudospin index as the slow one.
Eigen::Matrix<cplx, 8, 4> kron(const Eigen::Vector2cd& a, const Eigen::Matrix4cd& m) {
  Eigen::Matrix<cplx, 8, 4> out;
  out.topRows<4>() = a(0) * m;
  out.bottomRows<4>() = a(1) * m;
  return out;
}

void check_angle(double theta) {
  if (!(std::abs(theta) < std::numbers::pi / 2)) {
    throw Error(ErrorKind::Domain, "incidence angle must satisfy |theta| < pi/2");
  }
}

void check_sign(int s) {
  if (s != 1 && s != -1) throw Error(ErrorKind::Domain, "energy sign s must be +1 or -1");
}

}  // namespace

void ScatteringProblem::validate() const {
  consts.validate();
  check_angle(theta);
  check_sign(s);
  if (!std::isfinite(coupling)) throw Error(ErrorKind::Domain, "coupling J must be finite");
}

void SpinState::require_normalized(const char* what) const {
  const double n2 = std::norm(up) + std::norm(down);
  if (!(std::abs(n2 - 1.0) <= 1e-12)) {
    std::ostringstream msg;
    msg << what << " spinor is not normalized (|up|^2 + |down|^2 = " << n2 << ")";
    throw Error(ErrorKind::Domain, msg.str());
  }
}

Eigen::Vector4cd SpinConfiguration::product() const {
  return {electron.up * dot.up, electron.up * dot.down, electron.down * dot.up,
          electron.down * dot.down};
}

double FullSolution::reflected_probability() const {
  double p = 0.0;
  for (const auto& a : reflected) p += std::norm(a);
  return p;
}

double FullSolution::transmitted_probability() const {
  double p = 0.0;
  for (const auto& a : transmitted) p += std::norm(a);
  return p;
}

Eigen::Matrix4cd exchange_operator() {
  Eigen::Matrix4cd x = Eigen::Matrix4cd::Zero();
  x(0, 0) = 0.25;
  x(3, 3) = 0.25;
  x(1, 1) = -0.25;
  x(2, 2) = -0.25;
  x(1, 2) = 0.5;
  x(2, 1) = 0.5;
  return x;
}

double channel_potential(double coupling, int total_spin) {
  if (total_spin != 0 && total_spin != 1) {
    throw Error(ErrorKind::Domain, "total spin of an electron-dot pair must be 0 or 1");
  }
  return 0.5 * coupling * (total_spin * (total_spin + 1) - 1.5);
}

ScalarAmplitudes scalar_delta_scattering(double potential, double theta, int s,
                                         const PhysicalConstants& consts) {
  consts.validate();
  check_angle(theta);
  check_sign(s);
  const double h = consts.hbar_vf;
  const double half_v = 0.5 * potential;
  const Eigen::Vector2cd u = forward_pseudospinor(theta, s);
  const Eigen::Vector2cd w = backward_pseudospinor(theta, s);

  // Unknowns (t, r): psi(0-) = u + r w, psi(0+) = t u.
  Eigen::Matrix2cd a;
  a.col(0) = -kI * h * sigma_x(u) + half_v * u;
  a.col(1) = kI * h * sigma_x(w) + half_v * w;
  const Eigen::Vector2cd rhs = -(kI * h * sigma_x(u) + half_v * u);

  const cplx det = a.determinant();
  if (!(std::abs(det) > 1e-14 * a.squaredNorm())) {
    throw Error(ErrorKind::Numeric, "singular scalar boundary system (grazing incidence)");
  }
  const Eigen::Vector2cd x = a.partialPivLu().solve(rhs);
  return {x(1), x(0)};
}

ChannelAmplitudes channel_amplitudes(const ScatteringProblem& problem) {
  problem.validate();
  const auto singlet = scalar_delta_scattering(channel_potential(problem.coupling, 0),
                                               problem.theta, problem.s, problem.consts);
  const auto triplet = scalar_delta_scattering(channel_potential(problem.coupling, 1),
                                               problem.theta, problem.s, problem.consts);
  return {singlet.r, singlet.t, triplet.r, triplet.t};
}

SpinResolvedAmplitudes spin_resolved_amplitudes(const ScatteringProblem& problem) {
  const ChannelAmplitudes ch = channel_amplitudes(problem);
  SpinResolvedAmplitudes out;
  out.t_n = 0.5 * (ch.t_triplet + ch.t_singlet);
  out.t_s = 0.5 * (ch.t_triplet - ch.t_singlet);
  out.r_n = 0.5 * (ch.r_triplet + ch.r_singlet);
  out.r_s = 0.5 * (ch.r_triplet - ch.r_singlet);
  out.t_aligned = ch.t_triplet;
  out.r_aligned = ch.r_triplet;
  return out;
}

FrontalAmplitudes closed_form_theta0(double coupling, const PhysicalConstants& consts) {
  consts.validate();
  const double h = consts.hbar_vf;
  const double j = coupling;
  const cplx denom{64.0 * h * h + 3.0 * j * j, -16.0 * h * j};
  return {cplx{64.0 * h * h - 3.0 * j * j, 0.0} / denom, cplx{0.0, 32.0 * h * j} / denom};
}

FullSolution direct_solve(const ScatteringProblem& problem, const SpinConfiguration& input) {
  problem.validate();
  input.electron.require_normalized("electron");
  input.dot.require_normalized("dot");

  const double h = problem.consts.hbar_vf;
  const double half_j = 0.5 * problem.coupling;
  const Eigen::Vector2cd u = forward_pseudospinor(problem.theta, problem.s);
  const Eigen::Vector2cd w = backward_pseudospinor(problem.theta, problem.s);
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  const Eigen::Matrix4cd exch = exchange_operator();

  // -i h sigma_x [psi(0+) - psi(0-)] + (J/2) S.S [psi(0+) + psi(0-)] = 0 with
  // psi(0-) = u (x) chi + w (x) rho, psi(0+) = u (x) tau.
  Eigen::Matrix<cplx, 8, 8> a;
  a.leftCols<4>() = kron(-kI * h * sigma_x(u), id) + kron(half_j * u, exch);
  a.rightCols<4>() = kron(kI * h * sigma_x(w), id) + kron(half_j * w, exch);
  const Eigen::Matrix<cplx, 8, 4> source = kron(kI * h * sigma_x(u), id) + kron(half_j * u, exch);
  const Eigen::Matrix<cplx, 8, 1> rhs = -source * input.product();

  const Eigen::PartialPivLU<Eigen::Matrix<cplx, 8, 8>> lu(a);
  FullSolution out;
  out.rcond = lu.rcond();
  if (!(out.rcond > 1e-13)) {
    std::ostringstream msg;
    msg << "boundary system is numerically singular (condition estimate " << 1.0 / out.rcond
        << ")";
    throw Error(ErrorKind::Numeric, msg.str());
  }
  const Eigen::Matrix<cplx, 8, 1> x = lu.solve(rhs);
  for (int i = 0; i < 4; ++i) {
    out.transmitted[i] = x(i);
    out.reflected[i] = x(4 + i);
  }
  return out;
}

}  // namespace kleingate
