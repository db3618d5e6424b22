#pragma once

// Scenario execution, analytic/numeric comparison reports, and parameter
// sweeps. The analytic path accumulates the complex areas by quadrature on
// the output grid and evaluates the closed-form state; the numeric path is
// the beyond-RWA propagator; theorem mode runs the self-consistent solver.

#include <array>
#include <cmath>
#include <future>
#include <string>
#include <vector>

#include "trilevel/propagator.hpp"
#include "trilevel/scenario.hpp"
#include "trilevel/theorem.hpp"

namespace trilevel {

struct RunOutput {
  std::optional<Trajectory> analytic;
  std::optional<Trajectory> numeric;
  std::optional<Trajectory> theorem;
  std::vector<double> residual;  // conservation residual for theorem runs
};

inline Trajectory run_analytic(const Scenario& s) {
  const auto& atom = s.atom;
  auto times = uniform_grid(s.t_start, s.t_end, s.n_outputs);
  const double area_step =
      std::min(area_grid_limit(s.pulse_s, atom.omega_ab),
               area_grid_limit(s.pulse_p, atom.p_transition_freq())) /
      4.0;
  const auto ths = pulse_area_series(s.pulse_s, atom.omega_ab, s.t_start,
                                     times, area_step);
  const auto thp = pulse_area_series(s.pulse_p, atom.p_transition_freq(),
                                     s.t_start, times, area_step);
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
    const StateVector psi = atom.scheme == Scheme::V
                                ? state_v(ths[j], thp[j])
                                : state_lambda(ths[j], thp[j]);
    traj.states.push_back(psi);
    traj.observables.push_back(density_from_state(psi));
    traj.areas.push_back(ComplexArea::of(ths[j], thp[j]));
    traj.field_s.push_back(field_eval(s.pulse_s, t));
    traj.field_p.push_back(field_eval(s.pulse_p, t));
    traj.env_s.push_back(envelope_eval(s.pulse_s.envelope, t));
    traj.env_p.push_back(envelope_eval(s.pulse_p.envelope, t));
  }
  return traj;
}

inline Trajectory run_numeric(const Scenario& s) {
  if (s.atom.decay)
    return integrate_with_decay(s.atom, s.pulse_s, s.pulse_p, s.integrator,
                                s.t_start, s.t_end, s.n_outputs);
  return integrate(s.atom, s.pulse_s, s.pulse_p, s.integrator, s.t_start,
                   s.t_end, s.n_outputs);
}

inline RunOutput run_scenario(const Scenario& s) {
  RunOutput out;
  switch (s.mode) {
    case RunMode::Analytic:
      out.analytic = run_analytic(s);
      break;
    case RunMode::Numeric:
      out.numeric = run_numeric(s);
      break;
    case RunMode::Both:
      out.analytic = run_analytic(s);
      out.numeric = run_numeric(s);
      break;
    case RunMode::Theorem: {
      if (!s.medium)
        throw std::invalid_argument("theorem mode requires a medium");
      FieldState init;
      init.dtheta_s = s.seed_dtheta_s;
      init.dtheta_p = s.seed_dtheta_p;
      out.theorem = solve_self_consistent(s.atom.scheme, *s.medium, init,
                                          s.integrator, s.t_start, s.t_end,
                                          s.n_outputs);
      out.residual = s.atom.scheme == Scheme::V
                         ? conservation_residual_v(*out.theorem, *s.medium)
                         : conservation_residual_lambda(*out.theorem,
                                                        *s.medium);
      break;
    }
  }
  return out;
}

struct ObservableDeviation {
  std::string name;
  double max_abs = 0.0;
  double rms = 0.0;
  double t_at_max = 0.0;
};

struct ComparisonReport {
  // rho_aa, rho_cc, im_rho_ab, im_rho_cb, im_rho_ac
  std::array<ObservableDeviation, 5> observables;
  double small_param_s = 0.0;
  double small_param_p = 0.0;

  double overall_max() const {
    double m = 0.0;
    for (const auto& o : observables) m = std::max(m, o.max_abs);
    return m;
  }
};

inline ComparisonReport compare(const Trajectory& a, const Trajectory& b) {
  if (a.times.size() != b.times.size())
    throw std::invalid_argument("compare: time grids differ in length");
  for (std::size_t j = 0; j < a.times.size(); ++j)
    if (a.times[j] != b.times[j])
      throw std::invalid_argument("compare: time grids differ");
  if (a.times.empty()) throw std::invalid_argument("compare: empty grids");

  static constexpr const char* names[5] = {"rho_aa", "rho_cc", "im_rho_ab",
                                           "im_rho_cb", "im_rho_ac"};
  auto pick = [](const DensityObservables& d, int which) {
    switch (which) {
      case 0: return d.aa;
      case 1: return d.cc;
      case 2: return d.ab.imag();
      case 3: return d.cb.imag();
      default: return d.ac.imag();
    }
  };

  ComparisonReport rep;
  for (int w = 0; w < 5; ++w) {
    ObservableDeviation dev;
    dev.name = names[w];
    dev.t_at_max = a.times.front();
    double sq = 0.0;
    for (std::size_t j = 0; j < a.times.size(); ++j) {
      const double d =
          std::abs(pick(a.observables[j], w) - pick(b.observables[j], w));
      sq += d * d;
      if (d > dev.max_abs) {
        dev.max_abs = d;
        dev.t_at_max = a.times[j];
      }
    }
    dev.rms = std::sqrt(sq / static_cast<double>(a.times.size()));
    rep.observables[static_cast<std::size_t>(w)] = dev;
  }
  return rep;
}

// peak_rabi / |w - nu| per channel (the Magnus-1 validity parameter).
inline void fill_small_parameters(ComparisonReport& rep, const Scenario& s) {
  const double ds = std::abs(s.atom.omega_ab - s.pulse_s.carrier_freq);
  const double dp =
      std::abs(s.atom.p_transition_freq() - s.pulse_p.carrier_freq);
  rep.small_param_s = ds > 0.0 ? s.pulse_s.peak_rabi / ds
                               : std::numeric_limits<double>::infinity();
  rep.small_param_p = dp > 0.0 ? s.pulse_p.peak_rabi / dp
                               : std::numeric_limits<double>::infinity();
}

// Runs Both mode and reports analytic-vs-numeric deviations.
inline ComparisonReport compare_scenario(Scenario s) {
  s.mode = RunMode::Both;
  if (s.atom.decay)
    throw std::invalid_argument("compare: decay rates not supported");
  const auto out = run_scenario(s);
  auto rep = compare(*out.analytic, *out.numeric);
  fill_small_parameters(rep, s);
  return rep;
}

// Dotted numeric leaves of a Scenario addressable by sweep.
inline void set_scenario_axis(Scenario& s, const std::string& axis,
                              double value) {
  auto tanh_env = [&](PulseSpec& p) -> TanhEnvelope& {
    auto* env = std::get_if<TanhEnvelope>(&p.envelope.kind);
    if (!env)
      throw std::invalid_argument("sweep: axis " + axis +
                                  " requires a tanh-family envelope");
    return *env;
  };
  auto gamma = [&](int i) -> double& {
    if (!s.atom.decay) s.atom.decay = {{0.0, 0.0, 0.0}};
    return (*s.atom.decay)[static_cast<std::size_t>(i)];
  };
  auto medium = [&]() -> MediumSpec& {
    if (!s.medium) s.medium = MediumSpec{};
    return *s.medium;
  };

  // "q" / "tau_p" address the shared envelope shape of both pulses.
  if (axis == "q") {
    tanh_env(s.pulse_s).q = value;
    tanh_env(s.pulse_p).q = value;
  }
  else if (axis == "tau_p") {
    tanh_env(s.pulse_s).tau_p = value;
    tanh_env(s.pulse_p).tau_p = value;
  }
  else if (axis == "atom.omega_ab") s.atom.omega_ab = value;
  else if (axis == "atom.omega_cb") s.atom.omega_cb = value;
  else if (axis == "atom.gamma_a") gamma(0) = value;
  else if (axis == "atom.gamma_b") gamma(1) = value;
  else if (axis == "atom.gamma_c") gamma(2) = value;
  else if (axis == "pulse_s.peak_rabi") s.pulse_s.peak_rabi = value;
  else if (axis == "pulse_s.carrier_freq") s.pulse_s.carrier_freq = value;
  else if (axis == "pulse_s.q") tanh_env(s.pulse_s).q = value;
  else if (axis == "pulse_s.tau_p") tanh_env(s.pulse_s).tau_p = value;
  else if (axis == "pulse_p.peak_rabi") s.pulse_p.peak_rabi = value;
  else if (axis == "pulse_p.carrier_freq") s.pulse_p.carrier_freq = value;
  else if (axis == "pulse_p.q") tanh_env(s.pulse_p).q = value;
  else if (axis == "pulse_p.tau_p") tanh_env(s.pulse_p).tau_p = value;
  else if (axis == "time.t_start") s.t_start = value;
  else if (axis == "time.t_end") s.t_end = value;
  else if (axis == "time.n_outputs") s.n_outputs = static_cast<int>(value);
  else if (axis == "integrator.rel_tol") s.integrator.rel_tol = value;
  else if (axis == "integrator.abs_tol") s.integrator.abs_tol = value;
  else if (axis == "medium.omega_a_coll") medium().omega_a_coll = value;
  else if (axis == "medium.omega_c_coll") medium().omega_c_coll = value;
  else if (axis == "medium.seed_dtheta_s") s.seed_dtheta_s = value;
  else if (axis == "medium.seed_dtheta_p") s.seed_dtheta_p = value;
  else
    throw std::invalid_argument("sweep: unknown axis " + axis);
}

// Both-mode run per value, fanned out across threads; results are returned
// in input order regardless of completion order.
inline std::vector<ComparisonReport> sweep(const Scenario& base,
                                           const std::string& axis,
                                           const std::vector<double>& values) {
  std::vector<std::future<ComparisonReport>> futures;
  futures.reserve(values.size());
  for (double v : values) {
    futures.push_back(std::async(std::launch::async, [&base, &axis, v]() {
      Scenario s = base;
      set_scenario_axis(s, axis, v);
      return compare_scenario(std::move(s));
    }));
  }
  std::vector<ComparisonReport> reports;
  reports.reserve(values.size());
  for (std::size_t i = 0; i < futures.size(); ++i) {
    try {
      reports.push_back(futures[i].get());
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep failed at " + axis + " = " +
                               std::to_string(values[i]) + ": " + e.what());
    }
  }
  return reports;
}

}  // namespace trilevel
