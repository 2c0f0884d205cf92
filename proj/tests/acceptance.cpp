// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line each. Exit code is the number of failures.

#include "oracles.hpp"
#include "qrabi/constants.hpp"
#include "qrabi/coupling.hpp"
#include "qrabi/dynamics.hpp"
#include "qrabi/fit.hpp"
#include "qrabi/photons.hpp"
#include "qrabi/specfun.hpp"
#include "qrabi/transition.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

using namespace qrabi;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    if (!pass) ++failures;
}

std::string rel_str(const char* name, double got, double want, double tol) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s = %.6g (expected %.6g, rel err %.2e, tol %.1e)",
                  name, got, want, std::fabs(got - want) / std::fabs(want), tol);
    return buf;
}

bool rel_ok(double got, double want, double tol) {
    return std::fabs(got - want) <= tol * std::fabs(want);
}

const double brune_omega0 = constants::two_pi * 51.099e9;

struct Criteria3 {
    double nbar;
    coupling::CouplingSolution solution;
};

Criteria3 solve_criterion3() {
    auto field = photons::PhotonField::thermal(brune_omega0, 0.8);
    double nbar = photons::mean_photon_number(field);
    coupling::CavityGeometry geom{7e7, 0.025, 0.027};
    return {nbar, coupling::solve_cavity_coupled(0.295310e6, nbar, geom, brune_omega0)};
}

struct Sodium {
    double omega0;
    double nbar;
    coupling::CouplingSolution solution;
    dynamics::RateParams params_scaled; // in units of Omega_R
};

Sodium solve_sodium() {
    double omega0 = constants::two_pi * constants::codata2018.c / 589.0e-9;
    auto field = photons::PhotonField::thermal(omega0, 2700.0);
    coupling::TwoLevelSystem na{omega0, constants::dipole_from_a0e(2.5)};
    auto sol = coupling::blackbody_solution(na, field);
    double nbar = photons::mean_photon_number(field);
    double a_ratio = sol.a0_coefficient / sol.omega_rabi;
    return {omega0, nbar, sol, {a_ratio, nbar * a_ratio, 1.0}};
}

double windowed_mean(const std::function<double(double)>& f, double t_end,
                     double width, int samples) {
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) {
        sum += f(t_end - width + width * (i + 0.5) / samples);
    }
    return sum / samples;
}

void criterion1() {
    auto field = photons::PhotonField::thermal(brune_omega0, 0.8);
    double nbar = photons::mean_photon_number(field);
    bool pass = std::fabs(nbar - 0.0489) <= 0.0002;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "thermal occupancy nbar = %.6f (expected 0.0489 +- 0.0002)", nbar);
    report(1, pass, buf);
}

void criterion2() {
    coupling::TwoLevelSystem rb{brune_omega0, constants::dipole_from_a0e(1250.0)};
    double a0 = coupling::free_space_a0(rb);
    report(2, rel_ok(a0, 15.6765, 0.01), rel_str("free-space A(0)", a0, 15.6765, 1e-2));
}

void criterion3() {
    auto c3 = solve_criterion3();
    double a0 = c3.solution.a0_coefficient;
    double q_net = *c3.solution.q_net;
    double linewidth = brune_omega0 / q_net;
    bool pass = rel_ok(a0, 0.473053e6, 1e-3) && rel_ok(q_net, 1.28318e6, 1e-3) &&
                rel_ok(linewidth, 250210.0, 1e-3);
    report(3, pass,
           rel_str("coupled solve A(0)", a0, 0.473053e6, 1e-3) + "; " +
               rel_str("Q'", q_net, 1.28318e6, 1e-3) + "; " +
               rel_str("w0/Q'", linewidth, 250210.0, 1e-3));
}

void criterion4() {
    auto c3 = solve_criterion3();
    auto sol = coupling::renorm_coherent(c3.solution.a0_coefficient, 0.4,
                                         *c3.solution.q_net, brune_omega0);
    bool pass = rel_ok(sol.g_prime, 0.147877e6, 5e-3) &&
                rel_ok(sol.omega_rabi, constants::two_pi * 55.6949e3, 5e-3);
    report(4, pass,
           rel_str("coherent g", sol.g_prime, 0.147877e6, 5e-3) + "; " +
               rel_str("Omega_R", sol.omega_rabi, constants::two_pi * 55.6949e3, 5e-3));
}

void criterion5() {
    auto na = solve_sodium();
    double a_ratio = na.solution.a0_coefficient / na.solution.omega_rabi;
    double r_ratio = na.nbar * a_ratio;
    bool pass = rel_ok(a_ratio, 0.499941, 0.01) && rel_ok(r_ratio, 5.9409e-5, 0.02);
    report(5, pass,
           rel_str("A(0)/Omega_R", a_ratio, 0.499941, 1e-2) + "; " +
               rel_str("R(0)/Omega_R", r_ratio, 5.9409e-5, 2e-2));
}

void criterion6() {
    auto c3 = solve_criterion3();
    double a0 = c3.solution.a0_coefficient;
    double nbar = c3.nbar;
    auto field = photons::PhotonField::thermal(brune_omega0, 0.8);
    coupling::TwoLevelSystem rb{brune_omega0, constants::dipole_from_a0e(1250.0)};

    double g_bb = coupling::renorm_blackbody(a0, nbar);
    coupling::CouplingSolution ideal{
        g_bb, 2.0 * g_bb * std::sqrt(nbar + 1.0), a0,
        a0 / photons::planck_density_per_photon(brune_omega0), std::nullopt,
        coupling::Scenario::BlackbodyThermal};
    auto ideal_model = transition::TransitionModel::make(
        rb, field, ideal, transition::CavityMode::Ideal);
    auto lossy_model = transition::TransitionModel::make(
        rb, field, c3.solution, transition::CavityMode::Lossy);

    double t_end_ideal = 300.0 / ideal.omega_rabi;
    double mean_ideal = windowed_mean(
        [&](double t) { return transition::prob_ideal(ideal_model, t); },
        t_end_ideal, constants::two_pi / ideal.omega_rabi, 64);

    double t_end_lossy = 300.0 / c3.solution.omega_rabi;
    double mean_lossy = windowed_mean(
        [&](double t) { return transition::prob_lossy(lossy_model, t); },
        t_end_lossy, constants::two_pi / c3.solution.omega_rabi, 64);

    bool pass = mean_ideal > 0.49 && mean_ideal < 0.51 && mean_lossy > 0.49 &&
                mean_lossy < 0.51;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "renormalization constraint: final-period means ideal = %.4f, "
                  "lossy = %.4f (window [0.49, 0.51])",
                  mean_ideal, mean_lossy);
    report(6, pass, buf);
}

void criterion7() {
    auto na = solve_sodium();
    std::vector<double> grid(201);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 50.0 * i / 200.0;
    auto series = dynamics::ode_oracle(na.params_scaled, 1.0, grid);
    const auto& p2 = *series.channel("p2");
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double analytic = dynamics::generalized_solution(na.params_scaled, 1.0, grid[i]).p2;
        sup = std::max(sup, std::fabs(analytic - p2[i]));
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "analytic vs ODE: sup |dP2| = %.2e on Omega_R t in [0, 50] (tol 1e-6)",
                  sup);
    report(7, sup < 1e-6, buf);
}

void criterion8() {
    // 1F2 kernel vs direct J0 quadrature
    double worst_kernel = 0.0;
    for (int i = 1; i <= 50; ++i) {
        double x = 100.0 * i / 50.0;
        std::vector<double> breaks{0.0};
        for (std::size_t j = 1; j <= specfun::j0_zero_count(x); ++j) {
            breaks.push_back(specfun::j0_zero(j));
        }
        breaks.push_back(x);
        double integral = oracle::simpson_pieces(
            [](double u) { return specfun::bessel_j0(u); }, breaks, 1e-13);
        double got = specfun::hyp1f2_kernel(x);
        worst_kernel = std::max(worst_kernel, std::fabs(got - integral / x) /
                                                  std::fabs(integral / x));
    }

    // f_{Omega_R} vs |J0| quadrature on 100 random pairs
    oracle::Rng rng(2024);
    double worst_f = 0.0;
    for (int i = 0; i < 100; ++i) {
        double omega = rng.log_uniform(1e2, 1e7);
        double x = rng.uniform(0.3, 120.0);
        double t = x / omega;
        std::vector<double> breaks{0.0};
        for (std::size_t j = 1; j <= specfun::j0_zero_count(x); ++j) {
            breaks.push_back(specfun::j0_zero(j) / omega);
        }
        breaks.push_back(t);
        double quad = oracle::simpson_pieces(
            [omega](double tau) { return std::fabs(specfun::bessel_j0(omega * tau)); },
            breaks, 1e-13 * t);
        double got = specfun::abs_j0_integral(omega, t);
        worst_f = std::max(worst_f, std::fabs(got - quad) / quad);
    }

    // Li_{-1/2} vs brute sums
    double worst_li = 0.0;
    for (int i = 1; i <= 25; ++i) {
        double x = 0.99 * i / 25.0;
        double brute = oracle::polylog_brute(x, 40000);
        worst_li = std::max(worst_li,
                            std::fabs(specfun::polylog_neg_half(x) - brute) / brute);
    }

    // first ten zeros
    double worst_zero = 0.0;
    for (std::size_t j = 1; j <= 10; ++j) {
        worst_zero = std::max(worst_zero,
                              std::fabs(specfun::bessel_j0(specfun::j0_zero(j))));
    }

    bool pass = worst_kernel < 1e-10 && worst_f < 1e-8 && worst_li < 1e-12 &&
                worst_zero < 1e-12;
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "special functions: kernel %.1e (1e-10), f %.1e (1e-8), "
                  "Li %.1e (1e-12), |J0(zeros)| %.1e (1e-12)",
                  worst_kernel, worst_f, worst_li, worst_zero);
    report(8, pass, buf);
}

void criterion9() {
    auto na = solve_sodium();
    const double kb = constants::codata2018.kB;
    const double ln2 = std::log(2.0);

    bool bounded = true, has_decrease = false, averaged_monotone = true;
    double prev_s = -1.0, prev_avg = -1.0;
    for (int i = 0; i <= 2000; ++i) {
        double t = 50.0 * i / 2000.0;
        double s = dynamics::entropy(
            dynamics::generalized_solution(na.params_scaled, 1.0, t));
        if (s > kb * ln2 + 1e-12 * kb) bounded = false;
        if (i > 0 && s < prev_s - 1e-12 * kb) has_decrease = true;
        prev_s = s;

        double avg = dynamics::average_entropy(na.params_scaled, 2700.0, na.omega0, t);
        if (i > 0 && avg < prev_avg - 1e-6 * kb) averaged_monotone = false;
        prev_avg = avg;
    }
    bool pass = bounded && has_decrease && averaged_monotone;
    char buf[220];
    std::snprintf(buf, sizeof(buf),
                  "entropy: bounded by kB ln2 %s, has decreasing interval %s, "
                  "averaged non-decreasing %s",
                  bounded ? "yes" : "NO", has_decrease ? "yes" : "NO",
                  averaged_monotone ? "yes" : "NO");
    report(9, pass, buf);
}

void criterion10() {
    auto c3 = solve_criterion3();
    fit::RabiTraceModel model;
    model.omega0 = brune_omega0;
    model.defaults["omega_rabi"] = c3.solution.omega_rabi;
    model.defaults["q_net"] = *c3.solution.q_net;
    model.defaults["nbar"] = c3.nbar;

    oracle::Rng rng(4096);
    fit::TraceData data;
    for (int i = 0; i < 80; ++i) {
        double t = 0.5e-6 + (60e-6 - 0.5e-6) * i / 79.0;
        double y = model.evaluate(model.defaults, t) + 0.01 * rng.normal();
        data.samples.push_back({t, y, 1.0});
    }

    std::map<std::string, fit::FitBounds> bounds{
        {"omega_rabi", {1.5e5, 4.5e5}},
        {"amplitude", {0.5, 1.5}},
        {"offset", {-0.2, 0.2}},
    };
    auto run = [&] {
        return fit::fit_trace(data, model, {"omega_rabi", "amplitude", "offset"},
                              bounds, 11);
    };
    auto first = run();
    auto second = run();
    double got = first.parameters.at("omega_rabi");
    bool deterministic = first.parameters == second.parameters &&
                         first.residual_rms == second.residual_rms;
    bool pass = rel_ok(got, c3.solution.omega_rabi, 0.02) && deterministic;
    report(10, pass,
           rel_str("fit round-trip Omega_R", got, c3.solution.omega_rabi, 2e-2) +
               (deterministic ? "; deterministic" : "; NOT deterministic"));
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    std::printf("%d/10 criteria passed in %.1f s\n", 10 - failures, dt.count());
    return failures;
}
