#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qrabi::fit {

struct TraceSample {
    double t;
    double value;
    double weight = 1.0;
};

struct TraceData {
    std::vector<TraceSample> samples;

    // Enforces: >= 8 samples, strictly increasing t, values within the
    // digitization slack [-0.1, 1.1], non-negative weights.
    void validate() const;
};

// Forward model for fitting occupation-probability traces: the low-nbar
// lossy-cavity oscillation with nuisance amplitude and offset,
//   y(t) = offset + amplitude * P_{2->1}(t; omega_rabi, q_net, nbar).
// A(0) is implied by (omega_rabi, nbar, q_net) through the 1/2 constraint,
// so the model stays self-renormalized at every trial point.
struct RabiTraceModel {
    double omega0; // rad/s
    // Default parameter values; names are the fit parameter keys.
    std::map<std::string, double> defaults{
        {"omega_rabi", 0.0}, {"q_net", 0.0}, {"nbar", 0.0},
        {"amplitude", 1.0},  {"offset", 0.0},
    };

    double evaluate(const std::map<std::string, double>& params, double t) const;
};

struct FitBounds {
    double lower;
    double upper;
};

struct FitResult {
    std::map<std::string, double> parameters;
    std::map<std::string, bool> varied;
    double residual_rms = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    // Best objective seen so far, recorded at every evaluation (all restarts
    // in order); non-increasing by construction of the incumbent update.
    std::vector<double> objective_history;
};

// Weighted least squares with Nelder-Mead inside a sine bound transform;
// three seeded restarts, 2000 evaluations each. Deterministic for a given
// seed. Throws on forward-model failure inside the bounds.
FitResult fit_trace(const TraceData& data, const RabiTraceModel& model,
                    const std::vector<std::string>& vary,
                    const std::map<std::string, FitBounds>& bounds,
                    std::uint64_t seed);

} // namespace qrabi::fit
