#pragma once

#include "qrabi/photons.hpp"

#include <optional>

namespace qrabi::coupling {

struct TwoLevelSystem {
    double omega0; // rad/s, Bohr frequency
    double d21;    // C m, transition dipole moment

    TwoLevelSystem(double omega0_, double d21_);
};

struct CavityGeometry {
    double q_factor;
    double mirror_radius;     // m
    double mirror_separation; // m

    CavityGeometry(double q, double radius, double separation);

    // Probability that a photon escapes through the open curved surface,
    // 1 / (1 + r/h).
    double escape_probability() const {
        return 1.0 / (1.0 + mirror_radius / mirror_separation);
    }
};

enum class Scenario { FreeSpace, BlackbodyThermal, LossyThermal, LossyCoherent };

// A resolved coupling: the renormalized constant, the Rabi frequency it
// implies, and the Einstein coefficients consistent with it. q_net is absent
// for ideal-cavity scenarios.
struct CouplingSolution {
    double g_prime;        // rad/s
    double omega_rabi;     // rad/s
    double a0_coefficient; // rad/s (possibly Purcell-enhanced)
    double b0_coefficient; // (rad/s) / (J s / m^3)
    std::optional<double> q_net;
    Scenario scenario = Scenario::FreeSpace;
};

// A(0) = d21^2 w0^3 / (3 pi c^3 eps0 hbar)
double free_space_a0(const TwoLevelSystem& system);

// B21(0) = pi d21^2 / (3 eps0 hbar^2)
double einstein_b0(const TwoLevelSystem& system);

// g'(nbar) = A(0) Li_{-1/2}(nbar/(1+nbar)) / nbar; returns a0 at nbar = 0.
double renorm_blackbody(double a0, double nbar);

// Q' = 1 / (1/Q + p0 A(0)/w0)
double net_quality_factor(const CavityGeometry& geometry, double a0_enhanced,
                          double omega0);

// Closed-form solution of g' = A(0) sqrt(nbar+1) / (1 + 4 g' sqrt(nbar+1) Q'/w0).
CouplingSolution lossy_fixed_point(double a0, double nbar, double q_net,
                                   double omega0);

// A(0) = Omega_R / (2(nbar+1)) + Omega_R^2 Q' / (w0 (nbar+1))
double invert_a0_from_rabi(double omega_rabi, double nbar, double q_net,
                           double omega0);

// Simultaneous solve of the A(0) inversion and Q' from geometry, by fixed
// point iteration from the Q'-free start.
CouplingSolution solve_cavity_coupled(double omega_rabi, double nbar,
                                      const CavityGeometry& geometry,
                                      double omega0);

// Coupling for a Poisson field from the constraint P_{2->1}(infinity) = 1/2,
// solved by bisection on the long-time limit with the photon-number
// fluctuation neglected (the single effective term at nbar). This is the
// approximation level the published coherent-field numbers satisfy.
CouplingSolution renorm_coherent(double a0, double nbar, double q_net,
                                 double omega0);

// Same constraint enforced on the full Poisson-weighted sum of per-n
// long-time limits. Lies below renorm_coherent by the Jensen gap of the
// n-sum (about 0.8% at nbar = 0.4); both coincide at nbar = 0.
CouplingSolution renorm_coherent_full(double a0, double nbar, double q_net,
                                      double omega0);

// Blackbody (ideal cavity) scenario for a thermal field.
CouplingSolution blackbody_solution(const TwoLevelSystem& system,
                                    const photons::PhotonField& field);

// Long-time limit of the lossy-cavity transition probability for coupling g:
// A(0) sum_n p_n (n+1) c / (w_n (c + 2 w_n)), w_n = 2 g sqrt(n+1), c = w0/Q'.
// This is the constraint whose 1/2 level set defines every lossy coupling.
double lossy_longtime_limit(double a0, const photons::PhotonField& field,
                            double g, double q_net);

} // namespace qrabi::coupling
