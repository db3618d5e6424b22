#pragma once

// Umbrella header: three-level V / Lambda atoms driven by arbitrary pulses.
// Complex pulse areas, the first-order-Magnus analytic state, an exact
// beyond-RWA propagator, the pulse area theorem machinery, and the
// scenario/comparison harness.

#include "trilevel/analytic.hpp"
#include "trilevel/emit.hpp"
#include "trilevel/hamiltonian.hpp"
#include "trilevel/harness.hpp"
#include "trilevel/ode.hpp"
#include "trilevel/propagator.hpp"
#include "trilevel/pulses.hpp"
#include "trilevel/scenario.hpp"
#include "trilevel/theorem.hpp"
#include "trilevel/trajectory.hpp"
