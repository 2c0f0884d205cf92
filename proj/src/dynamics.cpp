#include "qrabi/dynamics.hpp"

#include "qrabi/constants.hpp"
#include "qrabi/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qrabi::dynamics {

namespace {

void check_inputs(const RateParams& params, double p2_init, double t) {
    if (!(params.a0 >= 0.0) || !(params.r0 >= 0.0) || !(params.omega_rabi >= 0.0)) {
        throw std::domain_error("rate params must be non-negative");
    }
    if (!(p2_init >= 0.0 && p2_init <= 1.0)) {
        throw std::domain_error("p2_init must lie in [0, 1]");
    }
    if (!(t >= 0.0)) throw std::domain_error("negative time");
}

PopulationState from_p2(double p2, double t) {
    p2 = std::clamp(p2, 0.0, 1.0);
    return {1.0 - p2, p2, t};
}

// Dormand-Prince 5(4) step for the scalar rate equation.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                            c5 = 8.0 / 9.0;
    template <class F>
    static double step(const F& deriv, double t, double y, double h, double& err) {
        double k1 = deriv(t, y);
        double k2 = deriv(t + c2 * h, y + h * (k1 / 5.0));
        double k3 = deriv(t + c3 * h, y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
        double k4 = deriv(t + c4 * h,
                          y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
        double k5 = deriv(t + c5 * h,
                          y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                                   64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
        double k6 = deriv(t + h,
                          y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                                   46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                                   5103.0 / 18656.0 * k5));
        double y5 = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 +
                             125.0 / 192.0 * k4 - 2187.0 / 6784.0 * k5 +
                             11.0 / 84.0 * k6);
        double k7 = deriv(t + h, y5);
        double y4 = y + h * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                             393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                             187.0 / 2100.0 * k6 + 1.0 / 40.0 * k7);
        err = std::fabs(y5 - y4);
        return y5;
    }
};

// Integrate from t0 to t1 (t1 > t0) with adaptive steps; smooth segment.
template <class F>
double integrate_segment(const F& deriv, double t0, double t1, double y,
                         double rtol, double atol) {
    double t = t0;
    double h = (t1 - t0);
    int rejects_in_a_row = 0;
    while (t < t1) {
        h = std::min(h, t1 - t);
        double err = 0.0;
        double y_new = Dopri5::step(deriv, t, y, h, err);
        double tol = atol + rtol * std::max(std::fabs(y), std::fabs(y_new));
        if (err <= tol || h <= 1e-15 * (t1 - t0)) {
            if (h <= 1e-15 * (t1 - t0) && err > tol) {
                throw std::runtime_error("ode_oracle: step size underflow");
            }
            t += h;
            y = y_new;
            rejects_in_a_row = 0;
        } else if (++rejects_in_a_row > 60) {
            throw std::runtime_error("ode_oracle: repeated step rejection");
        }
        double scale = 0.9 * std::pow(tol / std::max(err, 1e-300), 0.2);
        h *= std::clamp(scale, 0.2, 5.0);
    }
    return y;
}

} // namespace

PopulationState einstein_solution(const RateParams& params, double p2_init,
                                  double t) {
    check_inputs(params, p2_init, t);
    double kappa = params.a0 + 2.0 * params.r0;
    if (kappa == 0.0) return from_p2(p2_init, t);
    double p_inf = params.r0 / kappa;
    return from_p2(p_inf + (p2_init - p_inf) * std::exp(-kappa * t), t);
}

PopulationState generalized_solution(const RateParams& params, double p2_init,
                                     double t) {
    check_inputs(params, p2_init, t);
    if (params.omega_rabi == 0.0) return einstein_solution(params, p2_init, t);
    double kappa = params.a0 + 2.0 * params.r0;
    if (kappa == 0.0) return from_p2(p2_init, t);
    double f = specfun::abs_j0_integral(params.omega_rabi, t);
    double p_inf = params.r0 / kappa;
    return from_p2(p_inf + (p2_init - p_inf) * std::exp(-kappa * f), t);
}

TimeSeries ode_oracle(const RateParams& params, double p2_init,
                      std::span<const double> t_grid) {
    if (t_grid.empty()) throw std::domain_error("ode_oracle: empty grid");
    check_inputs(params, p2_init, t_grid.front());
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw std::domain_error("ode_oracle: grid must be strictly increasing");
        }
    }

    const double omega = params.omega_rabi;
    auto deriv = [&](double t, double y) {
        double j = omega > 0.0 ? std::fabs(specfun::bessel_j0(omega * t)) : 1.0;
        return params.r0 * j - (params.a0 + 2.0 * params.r0) * j * y;
    };

    // Breakpoints: grid points plus the |J0| kinks at gamma_j / omega.
    std::vector<double> breaks(t_grid.begin(), t_grid.end());
    if (omega > 0.0) {
        double t_end = t_grid.back();
        std::size_t nz = specfun::j0_zero_count(omega * t_end);
        for (std::size_t j = 1; j <= nz; ++j) {
            double tz = specfun::j0_zero(j) / omega;
            if (tz > t_grid.front() && tz < t_end) breaks.push_back(tz);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    }

    TimeSeries out;
    out.t.assign(t_grid.begin(), t_grid.end());
    auto& p2_chan = out.add_channel("p2");
    auto& p1_chan = out.add_channel("p1");

    double y = p2_init;
    std::size_t grid_idx = 0;
    if (breaks.front() == t_grid.front()) {
        p2_chan[0] = y;
        p1_chan[0] = 1.0 - y;
        grid_idx = 1;
    }
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
        y = integrate_segment(deriv, breaks[b], breaks[b + 1], y, 1e-10, 1e-12);
        if (grid_idx < t_grid.size() && breaks[b + 1] == t_grid[grid_idx]) {
            p2_chan[grid_idx] = y;
            p1_chan[grid_idx] = 1.0 - y;
            ++grid_idx;
        }
    }
    return out;
}

double entropy(const PopulationState& state) {
    if (!(state.p1 >= 0.0 && state.p2 >= 0.0) ||
        std::fabs(state.p1 + state.p2 - 1.0) > 1e-9) {
        throw std::domain_error("entropy: probabilities must be normalized");
    }
    auto plogp = [](double p) { return p > 0.0 ? p * std::log(p) : 0.0; };
    return -constants::codata2018.kB * (plogp(state.p1) + plogp(state.p2));
}

double average_entropy(const RateParams& params, double temperature,
                       double omega0, double t) {
    if (!(temperature > 0.0) || !(omega0 > 0.0)) {
        throw std::domain_error("average_entropy: temperature and omega0 must be positive");
    }
    const auto& k = constants::codata2018;
    double w2 = 1.0 / (1.0 + std::exp(k.hbar * omega0 / (k.kB * temperature)));
    double w1 = 1.0 - w2;
    double s_excited = entropy(generalized_solution(params, 1.0, t));
    double s_ground = entropy(generalized_solution(params, 0.0, t));
    return w2 * s_excited + w1 * s_ground;
}

} // namespace qrabi::dynamics
