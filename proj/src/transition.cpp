#include "qrabi/transition.hpp"

#include "qrabi/constants.hpp"
#include "qrabi/quadrature.hpp"
#include "qrabi/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace qrabi::transition {

namespace {

// Integral_S^inf c^2 / ((4 s^2 + c^2)(wn^2 + s^2)) ds via u = 1/s, which is a
// smooth bounded integrand on [0, 1/S]; composite Simpson is ample here.
double lorentz_tail(double c, double wn2, double s_cut) {
    const int n = 128;
    const double h = 1.0 / (s_cut * n);
    auto f = [&](double u) {
        double cu = c * u;
        return c * c * u * u / ((4.0 + cu * cu) * (wn2 * u * u + 1.0));
    };
    double sum = f(0.0) + f(1.0 / s_cut);
    for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

} // namespace

TransitionModel TransitionModel::make(const coupling::TwoLevelSystem& system,
                                      const photons::PhotonField& field,
                                      const coupling::CouplingSolution& solution,
                                      CavityMode mode) {
    using coupling::Scenario;
    if (mode == CavityMode::Lossy) {
        if (solution.scenario != Scenario::LossyThermal &&
            solution.scenario != Scenario::LossyCoherent) {
            throw std::domain_error("TransitionModel: lossy mode needs a lossy coupling");
        }
        if (!solution.q_net) {
            throw std::domain_error("TransitionModel: lossy mode needs q_net");
        }
    } else if (solution.scenario != Scenario::BlackbodyThermal) {
        throw std::domain_error("TransitionModel: ideal mode needs a blackbody coupling");
    }
    return {system, field, solution, mode};
}

double lossy_term(double prefactor, double omega_n, double linewidth, double t,
                  double tol_abs) {
    if (t == 0.0 || prefactor == 0.0) return 0.0;
    const double c = linewidth;
    const double c2 = c * c;
    const double wn2 = omega_n * omega_n;
    const double scale = std::max(c, omega_n);
    const double four_over_pi = 4.0 / constants::pi;
    const double tol_local = tol_abs / prefactor;

    // Truncation radius: past S the integrand is replaced by its sin^2 -> 1/2
    // mean (exact Lorentzian tail). That substitution is off by at most the
    // oscillatory remainder, bounded by min over two estimates: the whole
    // mean tail itself, c^2/(3 pi S^3), or c^2/(pi t S^4) after one
    // integration by parts. Whichever gives the smaller S wins.
    double s_a = std::cbrt(2.0 * c2 / (3.0 * constants::pi * tol_local));
    double s_b = std::pow(2.0 * c2 / (constants::pi * t * tol_local), 0.25);
    double s_cut = std::max(8.0 * scale, std::min(s_a, s_b));

    auto f = [&](double s) {
        double omega2 = wn2 + s * s;
        double sine = std::sin(0.5 * std::sqrt(omega2) * t);
        return c2 / (4.0 * s * s + c2) * sine * sine / omega2;
    };
    double width = std::min(constants::pi / t, 0.5 * c);
    width = std::max(width, s_cut / 65536.0);
    auto r = quadrature::integrate(f, 0.0, s_cut, 0.5 * tol_local / four_over_pi,
                                   0.0, width);
    double value = r.value + 0.5 * lorentz_tail(c, wn2, s_cut);
    return prefactor * four_over_pi * value;
}

double prob_ideal(const TransitionModel& model, double t) {
    if (!(t >= 0.0)) throw std::domain_error("prob_ideal: negative time");
    if (t == 0.0) return 0.0;
    const auto& sol = model.coupling;
    std::size_t nmax = photons::truncation_count(model.field);
    double sum = 0.0;
    for (std::size_t n = 0; n <= nmax; ++n) {
        double pn = photons::occupation_probability(model.field, n);
        double root = std::sqrt(static_cast<double>(n) + 1.0);
        double wn = 2.0 * sol.g_prime * root;
        sum += pn * (static_cast<double>(n) + 1.0) * specfun::hyp1f2_kernel(wn * t);
    }
    return sol.a0_coefficient * sum * t;
}

double prob_lossy(const TransitionModel& model, double t) {
    if (!(t >= 0.0)) throw std::domain_error("prob_lossy: negative time");
    if (!model.coupling.q_net) throw std::domain_error("prob_lossy: model has no q_net");
    if (t == 0.0) return 0.0;
    const auto& sol = model.coupling;
    double c = model.field.omega0 / *sol.q_net;
    std::size_t nmax = photons::truncation_count(model.field);
    double sum = 0.0;
    for (std::size_t n = 0; n <= nmax; ++n) {
        double pn = photons::occupation_probability(model.field, n);
        double root = std::sqrt(static_cast<double>(n) + 1.0);
        double wn = 2.0 * sol.g_prime * root;
        double pref = sol.a0_coefficient * pn * (static_cast<double>(n) + 1.0);
        sum += lossy_term(pref, wn, c, t);
    }
    return sum;
}

double prob_lossy_low_nbar(const TransitionModel& model, double t) {
    if (!(t >= 0.0)) throw std::domain_error("prob_lossy_low_nbar: negative time");
    if (!model.coupling.q_net) {
        throw std::domain_error("prob_lossy_low_nbar: model has no q_net");
    }
    if (t == 0.0) return 0.0;
    const auto& sol = model.coupling;
    double nbar = photons::mean_photon_number(model.field);
    double c = model.field.omega0 / *sol.q_net;
    double pref = sol.a0_coefficient * (nbar + 1.0);
    return lossy_term(pref, sol.omega_rabi, c, t);
}

double emission_prob(const TransitionModel& model, double t) {
    return model.cavity_mode == CavityMode::Ideal ? prob_ideal(model, t)
                                                  : prob_lossy(model, t);
}

double absorption_prob(const TransitionModel& model, double t) {
    return 1.0 - emission_prob(model, t);
}

double generalized_A(const coupling::CouplingSolution& solution,
                     const photons::PhotonField& field, double t,
                     CoefficientMode mode) {
    if (!(t >= 0.0)) throw std::domain_error("generalized_A: negative time");
    if (mode == CoefficientMode::Approx) {
        return solution.a0_coefficient *
               std::fabs(specfun::bessel_j0(solution.omega_rabi * t));
    }
    std::size_t nmax = photons::truncation_count(field);
    double sum = 0.0;
    for (std::size_t n = 0; n <= nmax; ++n) {
        double pn = photons::occupation_probability(field, n);
        double wn = 2.0 * solution.g_prime * std::sqrt(static_cast<double>(n) + 1.0);
        sum += pn * std::fabs(specfun::bessel_j0(wn * t));
    }
    return solution.a0_coefficient * sum;
}

double generalized_B21(const coupling::CouplingSolution& solution,
                       const photons::PhotonField& field, double t,
                       CoefficientMode mode) {
    if (!(t >= 0.0)) throw std::domain_error("generalized_B21: negative time");
    if (mode == CoefficientMode::Approx) {
        return solution.b0_coefficient *
               std::fabs(specfun::bessel_j0(solution.omega_rabi * t));
    }
    double nbar = photons::mean_photon_number(field);
    if (nbar == 0.0) {
        throw std::domain_error(
            "generalized_B21: exact n-sum undefined at nbar = 0");
    }
    std::size_t nmax = photons::truncation_count(field);
    double sum = 0.0;
    for (std::size_t n = 1; n <= nmax; ++n) {
        double pn = photons::occupation_probability(field, n);
        double wn = 2.0 * solution.g_prime * std::sqrt(static_cast<double>(n) + 1.0);
        sum += static_cast<double>(n) * pn * std::fabs(specfun::bessel_j0(wn * t));
    }
    return solution.b0_coefficient * sum / nbar;
}

double emission_rate(const TransitionModel& model, double t, CoefficientMode mode) {
    double stim = photons::energy_density(model.field) *
                  generalized_B21(model.coupling, model.field, t,
                                  photons::mean_photon_number(model.field) == 0.0
                                      ? CoefficientMode::Approx
                                      : mode);
    double spont = generalized_A(model.coupling, model.field, t, mode);
    return stim + spont;
}

double absorption_rate(const TransitionModel& model, double t, CoefficientMode mode) {
    double nbar = photons::mean_photon_number(model.field);
    double b12 = generalized_B21(model.coupling, model.field, t,
                                 nbar == 0.0 ? CoefficientMode::Approx : mode);
    return photons::planck_density_per_photon(model.field.omega0) * (nbar + 1.0) * b12;
}

} // namespace qrabi::transition
