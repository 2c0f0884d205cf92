#pragma once

#include "qrabi/timeseries.hpp"

#include <span>

namespace qrabi::dynamics {

struct PopulationState {
    double p1;
    double p2;
    double t;
};

// a0: spontaneous rate A(0); r0: stimulated rate R(0) = B21(0) u(w0);
// omega_rabi = 0 selects the time-independent (Einstein) regime.
struct RateParams {
    double a0;
    double r0;
    double omega_rabi;
};

// Einstein's semiclassical solution with constant coefficients, generalized
// to an arbitrary initial value via the same integrating factor.
PopulationState einstein_solution(const RateParams& params, double p2_init,
                                  double t);

// Solution of dP2/dt = R(t) - [A(t)+2R(t)] P2 with the |J0(Omega_R t)| time
// factor on both rates. Because f'(t) = |J0(Omega_R t)|, the integrating
// factor integral collapses and the solution is the Einstein form evaluated
// at the reparameterized time f(t).
PopulationState generalized_solution(const RateParams& params, double p2_init,
                                     double t);

// Direct adaptive Runge-Kutta integration of the rate equation, with steps
// forced onto the kinks of |J0|. Channels: p2, p1.
TimeSeries ode_oracle(const RateParams& params, double p2_init,
                      std::span<const double> t_grid);

// S = -kB [p1 ln p1 + p2 ln p2], with 0 ln 0 = 0. In J/K.
double entropy(const PopulationState& state);

// Boltzmann-weighted average over the two pure initial conditions.
double average_entropy(const RateParams& params, double temperature,
                       double omega0, double t);

} // namespace qrabi::dynamics
