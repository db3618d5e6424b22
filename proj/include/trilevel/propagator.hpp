#pragma once

// Exact numerical reference: adaptive RK5(4) integration of the
// time-dependent Schroedinger equation with the full interaction-picture
// Hamiltonian, beyond the RWA, with optional non-Hermitian decay
// H -> H - (i/2) diag(gamma). The initial state is the ground state |b>
// unless an explicit state is passed to the decay variant.

#include <cmath>
#include <numbers>

#include "trilevel/hamiltonian.hpp"
#include "trilevel/ode.hpp"
#include "trilevel/trajectory.hpp"

namespace trilevel {

// Step cap resolving the fastest phase w + nu of either channel.
inline double phase_resolving_max_step(const AtomSpec& atom,
                                       const PulseSpec& pulse_s,
                                       const PulseSpec& pulse_p) {
  const double fastest =
      std::max(atom.omega_ab + pulse_s.carrier_freq,
               atom.p_transition_freq() + pulse_p.carrier_freq);
  if (fastest <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / (20.0 * fastest);
}

namespace detail {

inline Trajectory assemble_trajectory(const AtomSpec& atom,
                                      const PulseSpec& pulse_s,
                                      const PulseSpec& pulse_p,
                                      std::vector<double> times,
                                      const std::vector<Vector3c>& psis,
                                      double t_start) {
  const double area_step =
      std::min(area_grid_limit(pulse_s, atom.omega_ab),
               area_grid_limit(pulse_p, atom.p_transition_freq())) /
      4.0;
  const auto ths =
      pulse_area_series(pulse_s, atom.omega_ab, t_start, times, area_step);
  const auto thp = pulse_area_series(pulse_p, atom.p_transition_freq(),
                                     t_start, times, area_step);

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
    const double t = traj.times[j];
    const StateVector psi{psis[j](0), psis[j](1), psis[j](2)};
    traj.states.push_back(psi);
    traj.observables.push_back(density_from_state(psi));
    traj.areas.push_back(ComplexArea::of(ths[j], thp[j]));
    traj.field_s.push_back(field_eval(pulse_s, t));
    traj.field_p.push_back(field_eval(pulse_p, t));
    traj.env_s.push_back(envelope_eval(pulse_s.envelope, t));
    traj.env_p.push_back(envelope_eval(pulse_p.envelope, t));
  }
  return traj;
}

inline Trajectory propagate(const AtomSpec& atom, const PulseSpec& pulse_s,
                            const PulseSpec& pulse_p, IntegratorConfig cfg,
                            double t_start, double t_end, int n_outputs,
                            const StateVector& initial, bool with_decay) {
  atom.validate();
  pulse_s.validate();
  pulse_p.validate();
  cfg.validate();
  auto times = uniform_grid(t_start, t_end, n_outputs);

  const double cap = phase_resolving_max_step(atom, pulse_s, pulse_p);
  cfg.max_step = cfg.max_step > 0.0 ? std::min(cfg.max_step, cap) : cap;

  Vector3c gamma_half = Vector3c::Zero();
  if (with_decay && atom.decay)
    for (int i = 0; i < 3; ++i) gamma_half(i) = 0.5 * (*atom.decay)[i];

  auto rhs = [&](double t, const Vector3c& psi) -> Vector3c {
    const complexd mi{0.0, -1.0};
    Vector3c d = mi * (hamiltonian(atom, pulse_s, pulse_p, t) * psi);
    if (with_decay) d -= gamma_half.cwiseProduct(psi);
    return d;
  };

  const Vector3c y0{initial.a, initial.b, initial.c};
  const auto psis = integrate_dense(rhs, y0, t_start, t_end,
                                    std::span<const double>(times), cfg);
  return assemble_trajectory(atom, pulse_s, pulse_p, std::move(times), psis,
                             t_start);
}

}  // namespace detail

inline Trajectory integrate(const AtomSpec& atom, const PulseSpec& pulse_s,
                            const PulseSpec& pulse_p,
                            const IntegratorConfig& cfg, double t_start,
                            double t_end, int n_outputs) {
  return detail::propagate(atom, pulse_s, pulse_p, cfg, t_start, t_end,
                           n_outputs, StateVector{0.0, 1.0, 0.0}, false);
}

inline Trajectory integrate_with_decay(
    const AtomSpec& atom, const PulseSpec& pulse_s, const PulseSpec& pulse_p,
    const IntegratorConfig& cfg, double t_start, double t_end, int n_outputs,
    const StateVector& initial = StateVector{0.0, 1.0, 0.0}) {
  return detail::propagate(atom, pulse_s, pulse_p, cfg, t_start, t_end,
                           n_outputs, initial, true);
}

}  // namespace trilevel
