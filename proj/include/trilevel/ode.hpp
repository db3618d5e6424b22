#pragma once

// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince pair) over Eigen
// fixed-size complex states, with the standard order-4 continuous extension
// for dense output. Integrates in either time direction.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace trilevel {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double max_step = 0.0;      // <= 0: no cap beyond the span
  double initial_step = 0.0;  // <= 0: auto
  long max_steps = 10'000'000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw std::invalid_argument("integrator: tolerances must be > 0");
  }
};

namespace dopri5 {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat (embedded 4th-order error weights)
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
inline constexpr double d1 = -12715105075.0 / 11282082432.0;
inline constexpr double d3 = 87487479700.0 / 32700410799.0;
inline constexpr double d4 = -10690763975.0 / 1880347072.0;
inline constexpr double d5 = 701980252875.0 / 199316789632.0;
inline constexpr double d6 = -1453857185.0 / 822651844.0;
inline constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace dopri5

// Integrates y' = rhs(t, y) from t0 to t1 and returns the dense-output states
// at out_times (sorted in integration direction, inside [t0, t1]).
template <class State, class Rhs>
std::vector<State> integrate_dense(Rhs&& rhs, const State& y0, double t0,
                                   double t1, std::span<const double> out_times,
                                   const IntegratorConfig& cfg) {
  using namespace dopri5;
  cfg.validate();
  if (t1 == t0) throw std::invalid_argument("integrate: empty time span");
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  const double hmax = cfg.max_step > 0.0 ? std::min(cfg.max_step, span) : span;

  std::vector<State> out;
  out.reserve(out_times.size());
  std::size_t oi = 0;
  const double slack = 1e-12 * std::max({std::abs(t0), std::abs(t1), 1.0});
  while (oi < out_times.size() && dir * (out_times[oi] - t0) <= slack) {
    out.push_back(y0);
    ++oi;
  }

  auto err_norm = [&](const State& e, const State& ya, const State& yb) {
    double acc = 0.0;
    for (long i = 0; i < e.size(); ++i) {
      const double sc = cfg.abs_tol +
                        cfg.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      const double q = std::abs(e[i]) / sc;
      acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(e.size()));
  };

  double t = t0;
  State y = y0;
  State k1 = rhs(t, y);
  double h = cfg.initial_step > 0.0 ? std::min(cfg.initial_step, hmax)
                                    : std::min(hmax, span / 100.0);
  long steps = 0;

  while (dir * (t1 - t) > slack) {
    if (++steps > cfg.max_steps)
      throw std::runtime_error(
          "integrate: tolerance not achievable within max step count");
    h = std::min({h, hmax, std::abs(t1 - t)});
    if (h < 16.0 * std::numeric_limits<double>::epsilon() *
                std::max(std::abs(t), 1.0))
      throw std::runtime_error("integrate: step size underflow");
    const double hd = h * dir;

    const State k2 = rhs(t + c2 * hd, (y + hd * a21 * k1).eval());
    const State k3 = rhs(t + c3 * hd, (y + hd * (a31 * k1 + a32 * k2)).eval());
    const State k4 =
        rhs(t + c4 * hd, (y + hd * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    const State k5 = rhs(
        t + c5 * hd,
        (y + hd * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    const State k6 = rhs(
        t + hd,
        (y + hd * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5))
            .eval());
    const State ynew =
        y + hd * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const State k7 = rhs(t + hd, ynew);
    const State errv =
        hd * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double err = err_norm(errv, y, ynew);

    if (err <= 1.0) {
      const double tnew = t + hd;
      if (oi < out_times.size() && dir * (out_times[oi] - tnew) <= slack) {
        // order-4 continuous extension (Hairer's rcont form)
        const State ydiff = ynew - y;
        const State bspl = hd * k1 - ydiff;
        const State r4 = ydiff - hd * k7 - bspl;
        const State r5 = hd * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 +
                               d6 * k6 + d7 * k7);
        while (oi < out_times.size() &&
               dir * (out_times[oi] - tnew) <= slack) {
          double th = (out_times[oi] - t) / hd;
          th = std::clamp(th, 0.0, 1.0);
          const double th1 = 1.0 - th;
          out.push_back(y + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5))));
          ++oi;
        }
      }
      t = tnew;
      y = ynew;
      k1 = k7;  // FSAL
      const double grow =
          err > 0.0 ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
      h = std::min(hmax, h * std::max(grow, 0.2));
    } else {
      h *= std::max(0.2, std::min(1.0, 0.9 * std::pow(err, -0.2)));
    }
  }

  while (oi < out_times.size() &&
         std::abs(out_times[oi] - t1) <= 2.0 * slack) {
    out.push_back(y);
    ++oi;
  }
  if (oi != out_times.size())
    throw std::invalid_argument(
        "integrate: output times must lie inside the integration span");
  return out;
}

}  // namespace trilevel
