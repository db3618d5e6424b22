#pragma once

// Shared test helpers and independent oracles. Oracles stay off the
// implementation's quadrature/integration paths: complex integrals go
// through adaptive Gauss-Kronrod, nested Magnus integrals through a
// brute-force cumulative trapezoid at high resolution.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <complex>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trilevel/trilevel.hpp"

namespace testsup {

using trilevel::complexd;

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] =
        a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = b;
  return v;
}

template <class F>
complexd gk_integrate(F&& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double re =
      GK::integrate([&](double t) { return f(t).real(); }, a, b, 15, 1e-13);
  const double im =
      GK::integrate([&](double t) { return f(t).imag(); }, a, b, 15, 1e-13);
  return {re, im};
}

// The fig2-style area integrand written from first principles (independent
// of field_eval / envelope_eval).
inline complexd cosine_pulse_integrand(double t, double peak, double nu,
                                       double q, double tau, double w) {
  const double p = std::pow(10.0, q);
  const double sigma =
      std::tanh(p * (t + tau) / tau) - std::tanh(p * (t - tau) / tau);
  return peak * sigma * std::cos(nu * t) *
         std::exp(complexd(0.0, w * t));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("test: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string scenario_path(const std::string& name) {
  return std::string(TRILEVEL_SCENARIO_DIR) + "/" + name;
}

// Brute-force nested quadrature for ||S2||: cumulative trapezoid inner
// integral and trapezoid outer integral on a fine uniform grid.
inline double magnus2_norm_oracle(const trilevel::PulseSpec& ps,
                                  const trilevel::PulseSpec& pp,
                                  const trilevel::AtomSpec& atom,
                                  double t_start, double t, long n) {
  using trilevel::Matrix3c;
  const double h = (t - t_start) / static_cast<double>(n);
  Matrix3c g = Matrix3c::Zero();
  Matrix3c outer = Matrix3c::Zero();
  Matrix3c h_prev = trilevel::hamiltonian(atom, ps, pp, t_start);
  Matrix3c f_prev = Matrix3c::Zero();  // [H, G] at t_start, G = 0
  for (long k = 1; k <= n; ++k) {
    const double tk = t_start + h * static_cast<double>(k);
    const Matrix3c hk = trilevel::hamiltonian(atom, ps, pp, tk);
    g += 0.5 * h * (h_prev + hk);
    const Matrix3c fk = hk * g - g * hk;
    outer += 0.5 * h * (f_prev + fk);
    h_prev = hk;
    f_prev = fk;
  }
  return (-0.5 * outer).norm();
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20260810u);
  return gen;
}

inline complexd random_complex(double max_mod) {
  std::uniform_real_distribution<double> mod(0.0, max_mod);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  const double m = mod(rng());
  const double a = arg(rng());
  return {m * std::cos(a), m * std::sin(a)};
}

}  // namespace testsup
