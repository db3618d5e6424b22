#pragma once

// Self-consistent thin-media Maxwell-Schroedinger solver in area variables
// and the pulse area (conservation-law) residuals for V and Lambda schemes.
//
// With spatial propagation dropped, the field equations reduce to
//   theta_s'' = -i Omega_a^2 rho_ab
//   theta_p'' = -i Omega_c^2 rho_cb   (V)     rho from the analytic state
//   theta_p'' = -i Omega_c^2 rho_ac   (Lambda)
// The Lambda p-channel radiates on the a-c transition it drives, so its
// source is the a-c coherence. theta' plays the role of the complex field
// envelope; no separate carrier exists in area variables.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "trilevel/analytic.hpp"
#include "trilevel/ode.hpp"
#include "trilevel/trajectory.hpp"

namespace trilevel {

struct MediumSpec {
  double omega_a_coll = 0.0;
  double omega_c_coll = 0.0;

  void validate() const {
    if (!(omega_a_coll > 0.0) || !(omega_c_coll > 0.0))
      throw std::invalid_argument(
          "medium: collective frequencies must be > 0");
  }
};

// Omega^2 = (3/8pi) n lambda^2 gamma c
inline double collective_frequency(double n, double lambda, double gamma,
                                   double c) {
  if (!(n > 0.0) || !(lambda > 0.0) || !(gamma > 0.0) || !(c > 0.0))
    throw std::invalid_argument(
        "collective_frequency: all inputs must be > 0");
  return std::sqrt(3.0 / (8.0 * std::numbers::pi) * n * lambda * lambda *
                   gamma * c);
}

struct FieldState {
  complexd theta_s{};
  complexd theta_p{};
  complexd dtheta_s{};
  complexd dtheta_p{};
};

using Vector4c = Eigen::Vector4cd;

inline Trajectory solve_self_consistent(Scheme scheme, const MediumSpec& medium,
                                        const FieldState& init,
                                        IntegratorConfig cfg, double t_start,
                                        double t_end, int n_outputs) {
  medium.validate();
  cfg.validate();
  auto times = uniform_grid(t_start, t_end, n_outputs);
  if (cfg.max_step <= 0.0) cfg.max_step = (t_end - t_start) / 100.0;

  const double oa2 = medium.omega_a_coll * medium.omega_a_coll;
  const double oc2 = medium.omega_c_coll * medium.omega_c_coll;
  const complexd mi{0.0, -1.0};

  auto rhs = [&](double, const Vector4c& y) -> Vector4c {
    const StateVector psi = scheme == Scheme::V ? state_v(y(0), y(1))
                                                : state_lambda(y(0), y(1));
    const auto rho = density_from_state(psi);
    const complexd src_p = scheme == Scheme::V ? rho.cb : rho.ac;
    return {y(2), y(3), mi * oa2 * rho.ab, mi * oc2 * src_p};
  };

  const Vector4c y0{init.theta_s, init.theta_p, init.dtheta_s, init.dtheta_p};
  const auto ys = integrate_dense(rhs, y0, t_start, t_end,
                                  std::span<const double>(times), cfg);

  Trajectory traj;
  traj.times = std::move(times);
  const std::size_t n = traj.times.size();
  traj.states.reserve(n);
  traj.observables.reserve(n);
  traj.areas.reserve(n);
  traj.field_s.reserve(n);
  traj.field_p.reserve(n);
  traj.env_s.reserve(n);
  traj.env_p.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& y = ys[j];
    const StateVector psi =
        scheme == Scheme::V ? state_v(y(0), y(1)) : state_lambda(y(0), y(1));
    traj.states.push_back(psi);
    traj.observables.push_back(density_from_state(psi));
    traj.areas.push_back(ComplexArea::of(y(0), y(1)));
    traj.field_s.push_back(y(2));
    traj.field_p.push_back(y(3));
    traj.env_s.push_back(std::abs(y(2)));
    traj.env_p.push_back(std::abs(y(3)));
  }
  return traj;
}

// |theta_s'|^2/Omega_a^2 + |theta_p'|^2/Omega_c^2 per grid point.
inline std::vector<double> field_energy_series(const Trajectory& traj,
                                               const MediumSpec& medium) {
  const double oa2 = medium.omega_a_coll * medium.omega_a_coll;
  const double oc2 = medium.omega_c_coll * medium.omega_c_coll;
  std::vector<double> e;
  e.reserve(traj.size());
  for (std::size_t j = 0; j < traj.size(); ++j)
    e.push_back(std::norm(traj.field_s[j]) / oa2 +
                std::norm(traj.field_p[j]) / oc2);
  return e;
}

// Residual of the V conservation law
//   E(t) - sin^2(theta_eff) = const = C0,
// reported as |...| with the t_start constant subtracted.
inline std::vector<double> conservation_residual_v(const Trajectory& traj,
                                                   const MediumSpec& medium) {
  const auto e = field_energy_series(traj, medium);
  std::vector<double> r;
  r.reserve(traj.size());
  double c0 = 0.0;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const double s = std::sin(traj.areas[j].theta_eff);
    const double expr = e[j] - s * s;
    if (j == 0) c0 = expr;
    r.push_back(std::abs(expr - c0));
  }
  return r;
}

// Residual of the Lambda law: E(t) = |theta_s|^2 sin^2(theta)/theta^2 + C0.
inline std::vector<double> conservation_residual_lambda(
    const Trajectory& traj, const MediumSpec& medium) {
  const auto e = field_energy_series(traj, medium);
  std::vector<double> r;
  r.reserve(traj.size());
  double c0 = 0.0;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const double th = traj.areas[j].theta_eff;
    const double f = detail::sinc_theta(th);
    const double rhs = std::norm(traj.areas[j].theta_s) * f * f;
    const double expr = e[j] - rhs;
    if (j == 0) c0 = expr;
    r.push_back(std::abs(expr - c0));
  }
  return r;
}

// Pointwise check of the energy-density form of the theorem for externally
// prescribed pulses:
//   |Omega_s(t)/Omega_a|^2 + |Omega_p(t)/Omega_c|^2  vs  sin^2(theta)  (V)
//   (vs |theta_s|^2 sin^2(theta)/theta^2 for Lambda).
// Returns the signed difference LHS - RHS. This is an identity only for
// self-consistent fields; for arbitrary external pulses it is a diagnostic.
inline std::vector<double> area_theorem_pointcheck(
    Scheme scheme, const MediumSpec& medium, const PulseSpec& pulse_s,
    const PulseSpec& pulse_p, const AtomSpec& atom,
    const std::vector<double>& times) {
  medium.validate();
  atom.validate();
  pulse_s.validate();
  pulse_p.validate();
  if (times.empty()) return {};
  const double t0 = times.front();
  const double area_step =
      std::min(area_grid_limit(pulse_s, atom.omega_ab),
               area_grid_limit(pulse_p, atom.p_transition_freq())) /
      4.0;
  const auto ths =
      pulse_area_series(pulse_s, atom.omega_ab, t0, times, area_step);
  const auto thp = pulse_area_series(pulse_p, atom.p_transition_freq(), t0,
                                     times, area_step);
  const double oa2 = medium.omega_a_coll * medium.omega_a_coll;
  const double oc2 = medium.omega_c_coll * medium.omega_c_coll;

  std::vector<double> diff;
  diff.reserve(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double lhs = std::norm(field_eval(pulse_s, times[j])) / oa2 +
                       std::norm(field_eval(pulse_p, times[j])) / oc2;
    const double th = effective_area(ths[j], thp[j]);
    double rhs;
    if (scheme == Scheme::V) {
      const double s = std::sin(th);
      rhs = s * s;
    } else {
      const double f = detail::sinc_theta(th);
      rhs = std::norm(ths[j]) * f * f;
    }
    diff.push_back(lhs - rhs);
  }
  return diff;
}

}  // namespace trilevel
