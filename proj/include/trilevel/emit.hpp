#pragma once

// Plot-ready emission of trajectories as CSV or JSON. Numbers are written
// in shortest round-trip form, so identical runs produce byte-identical
// files and JSON re-reads reproduce every value bit-exactly.

#include <charconv>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "trilevel/harness.hpp"
#include "trilevel/scenario.hpp"
#include "trilevel/trajectory.hpp"

namespace trilevel {

enum class EmitFormat { Csv, Json };

inline constexpr const char* kTrajectoryColumns[] = {
    "t",         "env_s",     "env_p",     "re_field_s", "re_field_p",
    "rho_aa",    "rho_bb",    "rho_cc",    "re_rho_ab",  "im_rho_ab",
    "re_rho_cb", "im_rho_cb", "re_rho_ac", "im_rho_ac",  "re_theta_s",
    "im_theta_s", "re_theta_p", "im_theta_p", "theta_eff"};

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::array<double, 19> trajectory_row(const Trajectory& traj,
                                             std::size_t j) {
  const auto& d = traj.observables[j];
  const auto& a = traj.areas[j];
  return {traj.times[j],           traj.env_s[j],
          traj.env_p[j],           traj.field_s[j].real(),
          traj.field_p[j].real(),  d.aa,
          d.bb,                    d.cc,
          d.ab.real(),             d.ab.imag(),
          d.cb.real(),             d.cb.imag(),
          d.ac.real(),             d.ac.imag(),
          a.theta_s.real(),        a.theta_s.imag(),
          a.theta_p.real(),        a.theta_p.imag(),
          a.theta_eff};
}

inline nlohmann::json pulse_to_json(const PulseSpec& p) {
  nlohmann::json j;
  j["peak_rabi"] = p.peak_rabi;
  j["carrier_freq"] = p.carrier_freq;
  if (const auto* th = std::get_if<TanhEnvelope>(&p.envelope.kind)) {
    j["q"] = th->q;
    j["tau_p"] = th->tau_p;
  } else {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [t, v] : std::get<TableEnvelope>(p.envelope.kind).samples)
      samples.push_back({t, v});
    j["samples"] = std::move(samples);
  }
  j["carrier_mode"] = to_string(p.carrier_mode);
  return j;
}

}  // namespace detail

inline nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["mode"] = to_string(s.mode);
  nlohmann::json atom;
  atom["scheme"] = to_string(s.atom.scheme);
  atom["omega_ab"] = s.atom.omega_ab;
  atom["omega_cb"] = s.atom.omega_cb;
  if (s.atom.decay) {
    atom["gamma_a"] = (*s.atom.decay)[0];
    atom["gamma_b"] = (*s.atom.decay)[1];
    atom["gamma_c"] = (*s.atom.decay)[2];
  }
  j["atom"] = std::move(atom);
  j["pulse_s"] = detail::pulse_to_json(s.pulse_s);
  j["pulse_p"] = detail::pulse_to_json(s.pulse_p);
  j["time"] = {{"t_start", s.t_start},
               {"t_end", s.t_end},
               {"n_outputs", s.n_outputs}};
  j["integrator"] = {{"rel_tol", s.integrator.rel_tol},
                     {"abs_tol", s.integrator.abs_tol}};
  if (s.medium)
    j["medium"] = {{"omega_a_coll", s.medium->omega_a_coll},
                   {"omega_c_coll", s.medium->omega_c_coll},
                   {"seed_dtheta_s", s.seed_dtheta_s},
                   {"seed_dtheta_p", s.seed_dtheta_p}};
  return j;
}

inline void emit(const Trajectory& traj, const Scenario& scenario,
                 EmitFormat format, std::ostream& os,
                 std::optional<double> max_residual = std::nullopt) {
  if (format == EmitFormat::Csv) {
    for (std::size_t c = 0; c < std::size(kTrajectoryColumns); ++c) {
      if (c) os << ',';
      os << kTrajectoryColumns[c];
    }
    os << '\n';
    for (std::size_t j = 0; j < traj.size(); ++j) {
      const auto row = detail::trajectory_row(traj, j);
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) os << ',';
        os << format_double(row[c]);
      }
      os << '\n';
    }
  } else {
    nlohmann::json doc;
    nlohmann::json meta;
    meta["scenario"] = scenario_to_json(scenario);
    nlohmann::json cols = nlohmann::json::array();
    for (const char* c : kTrajectoryColumns) cols.push_back(c);
    meta["columns"] = std::move(cols);
    if (max_residual) meta["max_conservation_residual"] = *max_residual;
    doc["metadata"] = std::move(meta);
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t j = 0; j < traj.size(); ++j) {
      const auto row = detail::trajectory_row(traj, j);
      nlohmann::json jr = nlohmann::json::array();
      for (double v : row) jr.push_back(v);
      rows.push_back(std::move(jr));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
  }
  if (!os) throw std::runtime_error("emit: write failed");
}

inline nlohmann::json report_to_json(const ComparisonReport& rep) {
  nlohmann::json j;
  nlohmann::json obs;
  for (const auto& o : rep.observables)
    obs[o.name] = {{"max_abs", o.max_abs},
                   {"rms", o.rms},
                   {"t_at_max", o.t_at_max}};
  j["observables"] = std::move(obs);
  j["overall_max"] = rep.overall_max();
  j["small_param_s"] = rep.small_param_s;
  j["small_param_p"] = rep.small_param_p;
  return j;
}

inline void emit_report_csv_header(std::ostream& os) {
  os << "value,observable,max_abs_dev,rms_dev,t_at_max,small_param_s,"
        "small_param_p\n";
}

inline void emit_report_csv_rows(const ComparisonReport& rep, std::ostream& os,
                                 std::optional<double> axis_value = std::nullopt) {
  for (const auto& o : rep.observables) {
    os << (axis_value ? format_double(*axis_value) : std::string{}) << ','
       << o.name << ',' << format_double(o.max_abs) << ','
       << format_double(o.rms) << ',' << format_double(o.t_at_max) << ','
       << format_double(rep.small_param_s) << ','
       << format_double(rep.small_param_p) << '\n';
  }
}

}  // namespace trilevel
