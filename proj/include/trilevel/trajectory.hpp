#pragma once

// Uniform-grid record of a run: states, density observables, cumulative
// complex areas, and field samples. For self-consistent (theorem) runs the
// field columns hold the area derivatives dtheta/dt, which play the role of
// the complex field envelopes, and env holds their moduli.

#include <stdexcept>
#include <vector>

#include "trilevel/analytic.hpp"
#include "trilevel/pulses.hpp"

namespace trilevel {

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<DensityObservables> observables;
  std::vector<ComplexArea> areas;
  std::vector<complexd> field_s, field_p;
  std::vector<double> env_s, env_p;

  std::size_t size() const { return times.size(); }
};

inline std::vector<double> uniform_grid(double t_start, double t_end,
                                        int n_outputs) {
  if (n_outputs < 2)
    throw std::invalid_argument("time grid needs n_outputs >= 2");
  if (!(t_end > t_start))
    throw std::invalid_argument("time grid needs t_end > t_start");
  std::vector<double> ts(static_cast<std::size_t>(n_outputs));
  const double dt = (t_end - t_start) / static_cast<double>(n_outputs - 1);
  for (int j = 0; j < n_outputs; ++j)
    ts[static_cast<std::size_t>(j)] = t_start + dt * static_cast<double>(j);
  ts.back() = t_end;
  return ts;
}

}  // namespace trilevel
