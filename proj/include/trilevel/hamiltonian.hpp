#pragma once

// Interaction-picture Hamiltonians of the driven V and Lambda schemes,
// in units of hbar and including the overall minus sign:
//
//   V:      H(t) = -[[0, Os e^{i w_ab t}, 0],
//                   [conj,            0, conj(Op) e^{-i w_cb t}],
//                   [0, Op e^{i w_cb t}, 0]]
//   Lambda: H(t) = -[[0, Os e^{i w_ab t}, Op e^{i w_ac t}],
//                   [conj, 0, 0],
//                   [conj, 0, 0]]
//
// Basis order (a, b, c). The Schroedinger equation reads psi' = -i H psi.

#include <Eigen/Dense>
#include <complex>

#include "trilevel/pulses.hpp"

namespace trilevel {

using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

inline Matrix3c hamiltonian(const AtomSpec& atom, const PulseSpec& pulse_s,
                            const PulseSpec& pulse_p, double t) {
  const complexd os = field_eval(pulse_s, t);
  const complexd op = field_eval(pulse_p, t);
  const complexd e_ab = std::exp(complexd(0.0, atom.omega_ab * t));
  Matrix3c h = Matrix3c::Zero();
  if (atom.scheme == Scheme::V) {
    const complexd e_cb = std::exp(complexd(0.0, atom.omega_cb * t));
    h(0, 1) = -os * e_ab;
    h(2, 1) = -op * e_cb;
    h(1, 0) = std::conj(h(0, 1));
    h(1, 2) = std::conj(h(2, 1));
  } else {
    const complexd e_ac = std::exp(complexd(0.0, atom.omega_ac() * t));
    h(0, 1) = -os * e_ab;
    h(0, 2) = -op * e_ac;
    h(1, 0) = std::conj(h(0, 1));
    h(2, 0) = std::conj(h(0, 2));
  }
  return h;
}

}  // namespace trilevel
