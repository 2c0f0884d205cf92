#pragma once

#include "qrabi/config.hpp"
#include "qrabi/coupling.hpp"
#include "qrabi/fit.hpp"
#include "qrabi/timeseries.hpp"
#include "qrabi/transition.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace qrabi::cli {

class TraceParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scenario wiring: field statistics plus the coupling solution the config
// implies (blackbody for ideal cavities, fixed point / constraint solve for
// lossy ones).
struct Scenario {
    photons::PhotonField field;
    coupling::CouplingSolution solution;
    transition::CavityMode mode;
    std::vector<std::string> warnings;
};

Scenario resolve_scenario(const RunConfig& config);
transition::TransitionModel build_model(const RunConfig& config,
                                        const Scenario& scenario);

nlohmann::json cmd_constants(const RunConfig& config);
TimeSeries cmd_rabi(const RunConfig& config);
TimeSeries cmd_coefficients(const RunConfig& config,
                            transition::CoefficientMode mode);
TimeSeries cmd_dynamics(const RunConfig& config);
fit::FitResult cmd_fit(const RunConfig& config, const fit::TraceData& data,
                       std::uint64_t seed);

// CSV with a header row; floats in scientific notation with 15 significant
// digits, locale-independent, newline terminated.
void write_csv(std::ostream& out, const TimeSeries& series);

// Trace format: 2-3 columns (t_s, value[, weight]); '#' comments and one
// optional header line allowed. Errors carry the line number.
fit::TraceData parse_trace_csv(std::istream& in);

nlohmann::json fit_result_json(const fit::FitResult& result);

struct CliOptions {
    std::string command;     // constants | rabi | coefficients | dynamics | fit
    std::string config_path;
    std::string out_path;    // empty -> stdout
    std::string data_path;   // fit only
    std::uint64_t seed = 0;  // fit only
    std::string mode = "approx"; // coefficients only: exact | approx
};

// Exit codes: 0 success, 2 config/schema error, 3 numerical failure,
// 4 fit non-convergence.
int run_cli(const CliOptions& options, std::ostream& err);

} // namespace qrabi::cli
