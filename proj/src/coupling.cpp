#include "qrabi/coupling.hpp"

#include "qrabi/constants.hpp"
#include "qrabi/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace qrabi::coupling {

TwoLevelSystem::TwoLevelSystem(double omega0_, double d21_)
    : omega0(omega0_), d21(d21_) {
    if (!(omega0 > 0.0)) throw std::domain_error("TwoLevelSystem: omega0 must be positive");
    if (!(d21 > 0.0)) throw std::domain_error("TwoLevelSystem: d21 must be positive");
}

CavityGeometry::CavityGeometry(double q, double radius, double separation)
    : q_factor(q), mirror_radius(radius), mirror_separation(separation) {
    if (!(q > 0.0) || !(radius > 0.0) || !(separation > 0.0)) {
        throw std::domain_error("CavityGeometry: all parameters must be positive");
    }
}

double free_space_a0(const TwoLevelSystem& system) {
    const auto& k = constants::codata2018;
    double w = system.omega0;
    return system.d21 * system.d21 * w * w * w /
           (3.0 * constants::pi * k.c * k.c * k.c * k.epsilon0 * k.hbar);
}

double einstein_b0(const TwoLevelSystem& system) {
    const auto& k = constants::codata2018;
    return constants::pi * system.d21 * system.d21 /
           (3.0 * k.epsilon0 * k.hbar * k.hbar);
}

double renorm_blackbody(double a0, double nbar) {
    if (!(a0 > 0.0)) throw std::domain_error("renorm_blackbody: a0 must be positive");
    if (!(nbar >= 0.0)) throw std::domain_error("renorm_blackbody: negative nbar");
    if (nbar == 0.0) return a0; // Li_{-1/2}(x)/x -> 1
    return a0 * specfun::polylog_neg_half(nbar / (1.0 + nbar)) / nbar;
}

double net_quality_factor(const CavityGeometry& geometry, double a0_enhanced,
                          double omega0) {
    if (!(a0_enhanced >= 0.0) || !(omega0 > 0.0)) {
        throw std::domain_error("net_quality_factor: invalid arguments");
    }
    return 1.0 / (1.0 / geometry.q_factor +
                  geometry.escape_probability() * a0_enhanced / omega0);
}

CouplingSolution lossy_fixed_point(double a0, double nbar, double q_net,
                                   double omega0) {
    if (!(a0 > 0.0) || !(nbar >= 0.0) || !(q_net > 0.0) || !(omega0 > 0.0)) {
        throw std::domain_error("lossy_fixed_point: invalid arguments");
    }
    double beta = 4.0 * q_net / omega0;
    double disc = 1.0 + 4.0 * beta * a0 * (nbar + 1.0);
    // (sqrt(disc)-1)/beta rewritten to stay stable as beta -> 0
    double omega_rabi = 4.0 * a0 * (nbar + 1.0) / (1.0 + std::sqrt(disc));
    double g = omega_rabi / (2.0 * std::sqrt(nbar + 1.0));
    return {g, omega_rabi, a0, a0 / photons::planck_density_per_photon(omega0),
            q_net, Scenario::LossyThermal};
}

double invert_a0_from_rabi(double omega_rabi, double nbar, double q_net,
                           double omega0) {
    if (!(omega_rabi > 0.0) || !(nbar >= 0.0) || !(q_net >= 0.0) || !(omega0 > 0.0)) {
        throw std::domain_error("invert_a0_from_rabi: invalid arguments");
    }
    return omega_rabi / (2.0 * (nbar + 1.0)) +
           omega_rabi * omega_rabi * q_net / (omega0 * (nbar + 1.0));
}

CouplingSolution solve_cavity_coupled(double omega_rabi, double nbar,
                                      const CavityGeometry& geometry,
                                      double omega0) {
    if (!(omega_rabi > 0.0) || !(nbar >= 0.0) || !(omega0 > 0.0)) {
        throw std::domain_error("solve_cavity_coupled: invalid arguments");
    }
    double a = omega_rabi / (2.0 * (nbar + 1.0)); // Q'-free start
    double q = net_quality_factor(geometry, a, omega0);
    bool done = false;
    for (int iter = 0; iter < 200; ++iter) {
        double a_next = invert_a0_from_rabi(omega_rabi, nbar, q, omega0);
        q = net_quality_factor(geometry, a_next, omega0);
        if (std::fabs(a_next - a) <= 1e-12 * a_next) {
            a = a_next;
            done = true;
            break;
        }
        a = a_next;
    }
    if (!done) {
        throw std::runtime_error("solve_cavity_coupled: no convergence in 200 iterations");
    }
    double g = omega_rabi / (2.0 * std::sqrt(nbar + 1.0));
    return {g, omega_rabi, a, a / photons::planck_density_per_photon(omega0),
            q, Scenario::LossyThermal};
}

double lossy_longtime_limit(double a0, const photons::PhotonField& field,
                            double g, double q_net) {
    double c = field.omega0 / q_net;
    std::size_t nmax = photons::truncation_count(field);
    double sum = 0.0;
    for (std::size_t n = 0; n <= nmax; ++n) {
        double pn = photons::occupation_probability(field, n);
        double wn = 2.0 * g * std::sqrt(static_cast<double>(n) + 1.0);
        sum += pn * (static_cast<double>(n) + 1.0) * c / (wn * (c + 2.0 * wn));
    }
    return a0 * sum;
}

namespace {

// Bisection on a decreasing long-time-limit function; returns the g with
// limit(g) = 1/2.
template <class Limit>
double solve_halftime_constraint(const Limit& limit, double a0, const char* who) {
    double lo = 1e-3 * a0, hi = 1e3 * a0;
    if (!(limit(lo) > 0.5 && limit(hi) < 0.5)) {
        throw std::runtime_error(std::string(who) + ": bracket failure on [1e-3, 1e3] a0");
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (limit(mid) > 0.5) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

CouplingSolution renorm_coherent(double a0, double nbar, double q_net,
                                 double omega0) {
    if (!(a0 > 0.0) || !(nbar >= 0.0) || !(q_net > 0.0) || !(omega0 > 0.0)) {
        throw std::domain_error("renorm_coherent: invalid arguments");
    }
    double c = omega0 / q_net;
    auto limit = [&](double g) {
        double w = 2.0 * g * std::sqrt(nbar + 1.0);
        return a0 * (nbar + 1.0) * c / (w * (c + 2.0 * w));
    };
    double g = solve_halftime_constraint(limit, a0, "renorm_coherent");
    double omega_rabi = 2.0 * g * std::sqrt(nbar + 1.0);
    return {g, omega_rabi, a0, a0 / photons::planck_density_per_photon(omega0),
            q_net, Scenario::LossyCoherent};
}

CouplingSolution renorm_coherent_full(double a0, double nbar, double q_net,
                                      double omega0) {
    if (!(a0 > 0.0) || !(nbar >= 0.0) || !(q_net > 0.0) || !(omega0 > 0.0)) {
        throw std::domain_error("renorm_coherent_full: invalid arguments");
    }
    auto field = photons::PhotonField::coherent(omega0, nbar);
    auto limit = [&](double g) { return lossy_longtime_limit(a0, field, g, q_net); };
    double g = solve_halftime_constraint(limit, a0, "renorm_coherent_full");
    double omega_rabi = 2.0 * g * std::sqrt(nbar + 1.0);
    return {g, omega_rabi, a0, a0 / photons::planck_density_per_photon(omega0),
            q_net, Scenario::LossyCoherent};
}

CouplingSolution blackbody_solution(const TwoLevelSystem& system,
                                    const photons::PhotonField& field) {
    if (field.kind != photons::FieldKind::Thermal) {
        throw std::domain_error("blackbody_solution: requires a thermal field");
    }
    double a0 = free_space_a0(system);
    double nbar = photons::mean_photon_number(field);
    double g = renorm_blackbody(a0, nbar);
    double omega_rabi = 2.0 * g * std::sqrt(nbar + 1.0);
    return {g, omega_rabi, a0, einstein_b0(system), std::nullopt,
            Scenario::BlackbodyThermal};
}

} // namespace qrabi::coupling
