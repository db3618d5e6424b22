#pragma once

// First-order-Magnus analytic states for V and Lambda schemes, their
// RWA/CW closed forms, density-matrix observables, and a second-order
// Magnus norm used as a truncation-error estimate.
//
// State basis order is (a, b, c) throughout; the initial condition behind
// all closed forms is |b>.

#include <cmath>
#include <complex>

#include "trilevel/hamiltonian.hpp"
#include "trilevel/pulses.hpp"

namespace trilevel {

struct StateVector {
  complexd a{};
  complexd b{};
  complexd c{};

  double norm_sq() const {
    return std::norm(a) + std::norm(b) + std::norm(c);
  }
};

struct DensityObservables {
  double aa = 0.0, bb = 0.0, cc = 0.0;
  complexd ab{}, cb{}, ac{};
};

namespace detail {

// sin(theta)/theta, series-continued below the cancellation threshold.
inline double sinc_theta(double th) {
  if (th < 1e-4) {
    const double t2 = th * th;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(th) / th;
}

// (cos(theta) - 1)/theta^2, same branch threshold.
inline double cosm1_over_sq(double th) {
  if (th < 1e-4) {
    const double t2 = th * th;
    return -0.5 + t2 / 24.0 - t2 * t2 / 720.0;
  }
  return (std::cos(th) - 1.0) / (th * th);
}

}  // namespace detail

inline StateVector state_v(complexd theta_s, complexd theta_p) {
  const double th = effective_area(theta_s, theta_p);
  const double f = detail::sinc_theta(th);
  const complexd i{0.0, 1.0};
  return {i * theta_s * f, std::cos(th), i * theta_p * f};
}

inline StateVector state_lambda(complexd theta_s, complexd theta_p) {
  const double th = effective_area(theta_s, theta_p);
  const double f = detail::sinc_theta(th);
  // (|theta_p|^2 + |theta_s|^2 cos)/theta^2 == 1 + |theta_s|^2 (cos-1)/theta^2
  const double g = detail::cosm1_over_sq(th);
  const complexd i{0.0, 1.0};
  return {i * theta_s * f, 1.0 + std::norm(theta_s) * g,
          theta_s * std::conj(theta_p) * g};
}

inline StateVector rwa_state_v(double omega_s, double omega_p, double t) {
  const double om = std::hypot(omega_s, omega_p);
  if (om == 0.0) return {0.0, 1.0, 0.0};
  const double half = 0.5 * om * t;
  const double s = std::sin(half);
  const complexd i{0.0, 1.0};
  return {i * (omega_s / om) * s, std::cos(half), i * (omega_p / om) * s};
}

inline StateVector rwa_state_lambda(double omega_s, double omega_p, double t) {
  const double om = std::hypot(omega_s, omega_p);
  if (om == 0.0) return {0.0, 1.0, 0.0};
  const double half = 0.5 * om * t;
  const double c = std::cos(half);
  const double om2 = om * om;
  const complexd i{0.0, 1.0};
  return {i * (omega_s / om) * std::sin(half),
          (omega_p * omega_p + omega_s * omega_s * c) / om2,
          omega_s * omega_p * (c - 1.0) / om2};
}

// Pure-state projector rho = |psi><psi|.
inline DensityObservables density_from_state(const StateVector& psi) {
  return {std::norm(psi.a),          std::norm(psi.b),
          std::norm(psi.c),          psi.a * std::conj(psi.b),
          psi.c * std::conj(psi.b),  psi.a * std::conj(psi.c)};
}

// Frobenius norm of the second Magnus term
//   S2(t) = -(1/2) int_{t0}^{t} dt1 [H(t1), G(t1)],  G(t1) = int_{t0}^{t1} H
// (H in units of hbar). Evaluated by nested Simpson quadrature: the inner
// cumulative integral G is carried along the same uniform grid, so the cost
// is linear in the node count.
inline double magnus2_norm(const PulseSpec& pulse_s, const PulseSpec& pulse_p,
                           const AtomSpec& atom, double t_start, double t,
                           double grid_step) {
  atom.validate();
  detail::check_area_grid(pulse_s, atom.omega_ab, grid_step);
  detail::check_area_grid(pulse_p, atom.p_transition_freq(), grid_step);
  if (t < t_start)
    throw std::invalid_argument("magnus2_norm: t must be >= t_start");
  if (t == t_start) return 0.0;

  long n = static_cast<long>(std::ceil((t - t_start) / grid_step));
  n += n & 1;
  if (n < 2) n = 2;
  const double h = (t - t_start) / static_cast<double>(n);

  std::vector<Matrix3c> hs(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k)
    hs[static_cast<std::size_t>(k)] =
        hamiltonian(atom, pulse_s, pulse_p, t_start + h * static_cast<double>(k));

  // Cumulative Simpson for G: full pairs at even nodes, the quadratic
  // half-interval rule h(5 f0 + 8 f1 - f2)/12 at odd nodes.
  std::vector<Matrix3c> gs(hs.size());
  gs[0] = Matrix3c::Zero();
  for (long k = 0; k + 2 <= n; k += 2) {
    const auto i0 = static_cast<std::size_t>(k);
    gs[i0 + 1] = gs[i0] + (h / 12.0) * (5.0 * hs[i0] + 8.0 * hs[i0 + 1] - hs[i0 + 2]);
    gs[i0 + 2] = gs[i0] + (h / 3.0) * (hs[i0] + 4.0 * hs[i0 + 1] + hs[i0 + 2]);
  }

  auto commutator_term = [&](std::size_t k) -> Matrix3c {
    return hs[k] * gs[k] - gs[k] * hs[k];
  };
  Matrix3c outer = Matrix3c::Zero();
  for (long k = 0; k + 2 <= n; k += 2) {
    const auto i0 = static_cast<std::size_t>(k);
    outer += (h / 3.0) * (commutator_term(i0) + 4.0 * commutator_term(i0 + 1) +
                          commutator_term(i0 + 2));
  }
  const Matrix3c s2 = -0.5 * outer;
  return s2.norm();
}

}  // namespace trilevel
