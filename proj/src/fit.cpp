#include "qrabi/fit.hpp"

#include "qrabi/constants.hpp"
#include "qrabi/coupling.hpp"
#include "qrabi/transition.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>
#include <stdexcept>

namespace qrabi::fit {

namespace {

constexpr std::size_t eval_budget = 2000;
constexpr int restart_count = 3;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// Bounded parameter <-> unbounded Nelder-Mead coordinate.
double to_bounded(double u, const FitBounds& b) {
    return b.lower + (b.upper - b.lower) * 0.5 * (1.0 + std::sin(u));
}

double to_unbounded(double x, const FitBounds& b) {
    double frac = (x - b.lower) / (b.upper - b.lower);
    frac = std::clamp(frac, 1e-12, 1.0 - 1e-12);
    return std::asin(2.0 * frac - 1.0);
}

struct NmOutcome {
    std::vector<double> best;
    double objective;
    std::size_t evaluations;
    bool converged;
};

template <class F>
NmOutcome nelder_mead(const F& objective, std::vector<double> start,
                      double step, std::size_t budget) {
    const std::size_t n = start.size();
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    std::size_t evals = 0;
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) {
        vals[i] = objective(pts[i]);
        ++evals;
    }

    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> p2;
        std::vector<double> v2;
        for (auto i : idx) {
            p2.push_back(pts[i]);
            v2.push_back(vals[i]);
        }
        pts.swap(p2);
        vals.swap(v2);
    };

    auto diameter = [&] {
        double d = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                d = std::max(d, std::fabs(pts[i][k] - pts[0][k]));
            }
        }
        return d;
    };

    bool converged = false;
    while (evals < budget) {
        order();
        if (vals[n] - vals[0] <= 1e-12 * (1.0 + std::fabs(vals[0])) ||
            diameter() < 1e-9) {
            converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d];
        }
        for (auto& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d) {
                p[d] = centroid[d] + coef * (pts[n][d] - centroid[d]);
            }
            return p;
        };

        auto refl = blend(-alpha);
        double f_refl = objective(refl);
        ++evals;
        if (f_refl < vals[0]) {
            auto exp_pt = blend(-gamma);
            double f_exp = objective(exp_pt);
            ++evals;
            if (f_exp < f_refl) {
                pts[n] = exp_pt;
                vals[n] = f_exp;
            } else {
                pts[n] = refl;
                vals[n] = f_refl;
            }
        } else if (f_refl < vals[n - 1]) {
            pts[n] = refl;
            vals[n] = f_refl;
        } else {
            auto con = blend(f_refl < vals[n] ? -rho : rho);
            double f_con = objective(con);
            ++evals;
            if (f_con < std::min(f_refl, vals[n])) {
                pts[n] = con;
                vals[n] = f_con;
            } else {
                for (std::size_t i = 1; i <= n && evals < budget; ++i) {
                    for (std::size_t d = 0; d < n; ++d) {
                        pts[i][d] = pts[0][d] + sigma * (pts[i][d] - pts[0][d]);
                    }
                    vals[i] = objective(pts[i]);
                    ++evals;
                }
            }
        }
    }
    order();
    return {pts[0], vals[0], evals, converged};
}

} // namespace

void TraceData::validate() const {
    if (samples.size() < 8) {
        throw std::invalid_argument("TraceData: need at least 8 samples");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (i > 0 && !(s.t > samples[i - 1].t)) {
            throw std::invalid_argument("TraceData: t must be strictly increasing");
        }
        if (!(s.value >= -0.1 && s.value <= 1.1)) {
            throw std::invalid_argument("TraceData: value outside [-0.1, 1.1]");
        }
        if (!(s.weight >= 0.0)) {
            throw std::invalid_argument("TraceData: negative weight");
        }
    }
}

double RabiTraceModel::evaluate(const std::map<std::string, double>& params,
                                double t) const {
    double omega_rabi = params.at("omega_rabi");
    double q_net = params.at("q_net");
    double nbar = params.at("nbar");
    double amplitude = params.at("amplitude");
    double offset = params.at("offset");

    double a0 = coupling::invert_a0_from_rabi(omega_rabi, nbar, q_net, omega0);
    double c = omega0 / q_net;
    double pref = a0 * (nbar + 1.0);
    return offset + amplitude * transition::lossy_term(pref, omega_rabi, c, t, 1e-7);
}

FitResult fit_trace(const TraceData& data, const RabiTraceModel& model,
                    const std::vector<std::string>& vary,
                    const std::map<std::string, FitBounds>& bounds,
                    std::uint64_t seed) {
    data.validate();
    if (vary.empty()) throw std::invalid_argument("fit_trace: empty vary set");
    for (const auto& name : vary) {
        if (!model.defaults.count(name)) {
            throw std::invalid_argument("fit_trace: unknown parameter " + name);
        }
        auto it = bounds.find(name);
        if (it == bounds.end()) {
            throw std::invalid_argument("fit_trace: missing bounds for " + name);
        }
        if (!std::isfinite(it->second.lower) || !std::isfinite(it->second.upper) ||
            !(it->second.lower < it->second.upper)) {
            throw std::invalid_argument("fit_trace: invalid bounds for " + name);
        }
    }

    double weight_sum = 0.0;
    for (const auto& s : data.samples) weight_sum += s.weight;
    if (!(weight_sum > 0.0)) {
        throw std::invalid_argument("fit_trace: all weights are zero");
    }

    auto params_from = [&](const std::vector<double>& u) {
        auto p = model.defaults;
        for (std::size_t i = 0; i < vary.size(); ++i) {
            p[vary[i]] = to_bounded(u[i], bounds.at(vary[i]));
        }
        return p;
    };

    std::vector<double> history;
    double incumbent = std::numeric_limits<double>::infinity();
    auto objective = [&](const std::vector<double>& u) {
        auto p = params_from(u);
        double ssr = 0.0;
        try {
            for (const auto& s : data.samples) {
                double r = model.evaluate(p, s.t) - s.value;
                ssr += s.weight * r * r;
            }
        } catch (const std::exception& e) {
            std::string where;
            for (const auto& [name, value] : p) {
                where += " " + name + "=" + std::to_string(value);
            }
            throw std::runtime_error(std::string("fit: forward model failed at") +
                                     where + ": " + e.what());
        }
        incumbent = std::min(incumbent, ssr);
        history.push_back(incumbent);
        return ssr;
    };

    NmOutcome best{};
    bool have_best = false;
    std::size_t total_evals = 0;
    for (int restart = 0; restart < restart_count; ++restart) {
        std::vector<double> start(vary.size());
        std::uint64_t rng = seed * 0x100000001b3ULL + static_cast<std::uint64_t>(restart);
        for (std::size_t i = 0; i < vary.size(); ++i) {
            const auto& b = bounds.at(vary[i]);
            double x0 = restart == 0 ? 0.5 * (b.lower + b.upper)
                                     : b.lower + (b.upper - b.lower) * uniform01(rng);
            start[i] = to_unbounded(x0, b);
        }
        auto outcome = nelder_mead(objective, start, 0.5, eval_budget);
        total_evals += outcome.evaluations;
        if (!have_best || outcome.objective < best.objective) {
            best = outcome;
            have_best = true;
        }
    }

    FitResult result;
    auto p = params_from(best.best);
    result.parameters = p;
    for (const auto& [name, value] : p) {
        (void)value;
        result.varied[name] =
            std::find(vary.begin(), vary.end(), name) != vary.end();
    }
    result.residual_rms = std::sqrt(best.objective / weight_sum);
    result.iterations = total_evals;
    result.converged = best.converged;
    result.objective_history = std::move(history);
    return result;
}

} // namespace qrabi::fit
