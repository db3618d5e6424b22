#pragma once

// Driving-field envelopes, carriers, and complex pulse areas.
//
// Conventions (natural units, hbar = 1):
//   RealCosine      Omega(t) = peak_rabi * Sigma(t) * cos(nu t)
//   RwaExponential  Omega(t) = (peak_rabi/2) * Sigma(t) * exp(-i nu t)
// The 1/2 in the exponential mode is the co-rotating half of the cosine,
// so a resonant CW drive accumulates the area peak_rabi * t / 2.
//
// Complex area of a channel with transition frequency w:
//   theta(t) = integral_{t0}^{t} Omega(t') exp(i w t') dt'

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace trilevel {

using complexd = std::complex<double>;

// Sigma(t) = tanh[10^q (t+tau_p)/tau_p] - tanh[10^q (t-tau_p)/tau_p].
// Nonnegative, -> 0 as |t| -> infinity; peak value 2*tanh(10^q), not 1.
struct TanhEnvelope {
  double q = 0.0;
  double tau_p = 1.0;
};

// Piecewise-linear sample table, zero outside the sampled range.
struct TableEnvelope {
  std::vector<std::pair<double, double>> samples;
};

struct EnvelopeSpec {
  std::variant<TanhEnvelope, TableEnvelope> kind = TanhEnvelope{};

  static EnvelopeSpec tanh_family(double q, double tau_p) {
    return {TanhEnvelope{q, tau_p}};
  }
  static EnvelopeSpec table(std::vector<std::pair<double, double>> samples) {
    return {TableEnvelope{std::move(samples)}};
  }

  void validate() const {
    if (const auto* th = std::get_if<TanhEnvelope>(&kind)) {
      if (!(th->tau_p > 0.0))
        throw std::invalid_argument("envelope: tau_p must be > 0");
    } else {
      const auto& s = std::get<TableEnvelope>(kind).samples;
      if (s.size() < 2)
        throw std::invalid_argument("envelope: table needs at least 2 samples");
      for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i - 1].first < s[i].first))
          throw std::invalid_argument(
              "envelope: table times must be strictly increasing");
    }
  }
};

enum class CarrierMode { RealCosine, RwaExponential };

struct PulseSpec {
  double peak_rabi = 0.0;
  double carrier_freq = 0.0;
  EnvelopeSpec envelope;
  CarrierMode carrier_mode = CarrierMode::RealCosine;

  void validate() const {
    if (!(peak_rabi >= 0.0))
      throw std::invalid_argument("pulse: peak_rabi must be >= 0");
    if (!(carrier_freq >= 0.0))
      throw std::invalid_argument("pulse: carrier_freq must be >= 0");
    envelope.validate();
  }
};

enum class Scheme { V, Lambda };

// Level layout: V has ground |b> below excited |a>, |c>;
// Lambda has |a> above |c> above |b> (omega_ac = omega_ab - omega_cb > 0).
struct AtomSpec {
  Scheme scheme = Scheme::V;
  double omega_ab = 0.0;
  double omega_cb = 0.0;
  std::optional<std::array<double, 3>> decay;  // gamma_a, gamma_b, gamma_c

  double omega_ac() const { return omega_ab - omega_cb; }

  // Transition frequency modulating the p-channel area:
  // omega_cb for V, omega_ac for Lambda.
  double p_transition_freq() const {
    return scheme == Scheme::V ? omega_cb : omega_ac();
  }

  void validate() const {
    if (!(omega_ab > 0.0))
      throw std::invalid_argument("atom: omega_ab must be > 0");
    if (!(omega_cb > 0.0))
      throw std::invalid_argument("atom: omega_cb must be > 0");
    if (scheme == Scheme::Lambda && !(omega_ac() > 0.0))
      throw std::invalid_argument(
          "atom: Lambda scheme requires omega_ab > omega_cb");
    if (decay)
      for (double g : *decay)
        if (!(g >= 0.0))
          throw std::invalid_argument("atom: decay rates must be >= 0");
  }
};

inline double effective_area(complexd theta_s, complexd theta_p) {
  return std::hypot(std::abs(theta_s), std::abs(theta_p));
}

// theta_eff is always recomputed from (theta_s, theta_p), never stored freely.
struct ComplexArea {
  complexd theta_s{};
  complexd theta_p{};
  double theta_eff = 0.0;

  static ComplexArea of(complexd s, complexd p) {
    return {s, p, effective_area(s, p)};
  }
};

inline double envelope_eval(const EnvelopeSpec& env, double t) {
  if (const auto* th = std::get_if<TanhEnvelope>(&env.kind)) {
    const double p = std::pow(10.0, th->q);
    return std::tanh(p * (t + th->tau_p) / th->tau_p) -
           std::tanh(p * (t - th->tau_p) / th->tau_p);
  }
  const auto& s = std::get<TableEnvelope>(env.kind).samples;
  if (t <= s.front().first || t >= s.back().first) {
    if (t == s.front().first) return s.front().second;
    if (t == s.back().first) return s.back().second;
    return 0.0;
  }
  auto it = std::upper_bound(
      s.begin(), s.end(), t,
      [](double x, const auto& pr) { return x < pr.first; });
  const auto& [t1, v1] = *it;
  const auto& [t0, v0] = *(it - 1);
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

inline complexd field_eval(const PulseSpec& pulse, double t) {
  const double sigma = envelope_eval(pulse.envelope, t);
  if (pulse.carrier_mode == CarrierMode::RealCosine)
    return {pulse.peak_rabi * sigma * std::cos(pulse.carrier_freq * t), 0.0};
  return 0.5 * pulse.peak_rabi * sigma *
         std::exp(complexd(0.0, -pulse.carrier_freq * t));
}

// Largest admissible quadrature step: 20 nodes per period of the fastest
// phase nu + w (the counter-rotating oscillation of the area integrand).
inline double area_grid_limit(const PulseSpec& pulse, double transition_freq) {
  const double fastest = pulse.carrier_freq + transition_freq;
  if (fastest <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / (20.0 * fastest);
}

namespace detail {

// Composite Simpson with an even number of subintervals spanning [a, b].
template <class F>
complexd simpson_even(F&& g, double a, double b, double step_limit) {
  if (!(b > a)) return {};
  long n = static_cast<long>(std::ceil((b - a) / step_limit));
  n += n & 1;
  if (n < 2) n = 2;
  const double h = (b - a) / static_cast<double>(n);
  complexd acc = g(a) + g(b);
  for (long k = 1; k < n; ++k)
    acc += (k & 1 ? 4.0 : 2.0) * g(a + h * static_cast<double>(k));
  return acc * (h / 3.0);
}

inline void check_area_grid(const PulseSpec& pulse, double transition_freq,
                            double grid_step) {
  if (!(grid_step > 0.0))
    throw std::invalid_argument("pulse_area: grid_step must be > 0");
  if (grid_step > area_grid_limit(pulse, transition_freq))
    throw std::invalid_argument(
        "pulse_area: grid_step too coarse for carrier + transition phase "
        "(aliasing risk)");
}

}  // namespace detail

// theta(t) = int_{t_start}^{t} Omega(t') e^{i w t'} dt' by composite Simpson
// on the uniform grid; the final partial interval is closed by a trapezoid.
inline complexd pulse_area(const PulseSpec& pulse, double transition_freq,
                           double t_start, double t, double grid_step) {
  if (t < t_start)
    throw std::invalid_argument("pulse_area: t must be >= t_start");
  detail::check_area_grid(pulse, transition_freq, grid_step);
  if (t == t_start) return {};

  auto g = [&](double u) {
    return field_eval(pulse, u) * std::exp(complexd(0.0, transition_freq * u));
  };

  const double h = grid_step;
  const long m = static_cast<long>(std::floor((t - t_start) / h));
  complexd acc{};
  long k = 0;
  for (; k + 2 <= m; k += 2) {
    const double a = t_start + h * static_cast<double>(k);
    acc += (h / 3.0) * (g(a) + 4.0 * g(a + h) + g(a + 2.0 * h));
  }
  if (k < m) {  // odd leftover full step
    const double a = t_start + h * static_cast<double>(k);
    acc += 0.5 * h * (g(a) + g(a + h));
  }
  const double tail_start = t_start + h * static_cast<double>(m);
  if (t > tail_start)
    acc += 0.5 * (t - tail_start) * (g(tail_start) + g(t));
  return acc;
}

// Cumulative areas on a nondecreasing grid, each segment integrated by
// composite Simpson with step <= grid_step. times.front() may exceed t_start;
// the lead-in [t_start, times.front()] is included in the first value.
inline std::vector<complexd> pulse_area_series(const PulseSpec& pulse,
                                               double transition_freq,
                                               double t_start,
                                               const std::vector<double>& times,
                                               double grid_step) {
  detail::check_area_grid(pulse, transition_freq, grid_step);
  auto g = [&](double u) {
    return field_eval(pulse, u) * std::exp(complexd(0.0, transition_freq * u));
  };
  std::vector<complexd> out;
  out.reserve(times.size());
  complexd acc{};
  double prev = t_start;
  for (double tk : times) {
    if (tk < prev)
      throw std::invalid_argument(
          "pulse_area_series: times must be nondecreasing and >= t_start");
    acc += detail::simpson_even(g, prev, tk, grid_step);
    out.push_back(acc);
    prev = tk;
  }
  return out;
}

}  // namespace trilevel
