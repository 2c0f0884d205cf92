#include "qrabi/cli.hpp"

#include "qrabi/constants.hpp"
#include "qrabi/dynamics.hpp"
#include "qrabi/specfun.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qrabi::cli {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::scientific, 14);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

coupling::TwoLevelSystem system_from(const RunConfig& config,
                                     const coupling::CouplingSolution& solution) {
    if (config.system.dipole) {
        return {config.system.omega0, *config.system.dipole};
    }
    // No dipole given: derive the effective one implied by the scenario's
    // (possibly Purcell-enhanced) A coefficient.
    const auto& k = constants::codata2018;
    double w = config.system.omega0;
    double d2 = solution.a0_coefficient * 3.0 * constants::pi * k.c * k.c * k.c *
                k.epsilon0 * k.hbar / (w * w * w);
    return {w, std::sqrt(d2)};
}

photons::PhotonField field_from(const RunConfig& config) {
    if (config.field.type == FieldType::Thermal) {
        return photons::PhotonField::thermal(config.system.omega0,
                                             config.field.temperature);
    }
    return photons::PhotonField::coherent(config.system.omega0, config.field.nbar);
}

coupling::CavityGeometry geometry_from(const CavityConfig& cavity) {
    if (!cavity.q_factor || !cavity.mirror_radius || !cavity.mirror_separation) {
        throw ConfigError(
            "cavity: lossy geometry needs q_factor, mirror_radius_m and mirror_separation_m");
    }
    return {*cavity.q_factor, *cavity.mirror_radius, *cavity.mirror_separation};
}

std::vector<double> make_grid(const GridConfig& grid) {
    if (grid.t_max == 0.0 || grid.points == 1) return {0.0};
    std::vector<double> t(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i) {
        t[i] = grid.t_max * static_cast<double>(i) / static_cast<double>(grid.points - 1);
    }
    return t;
}

} // namespace

Scenario resolve_scenario(const RunConfig& config) {
    auto field = field_from(config);
    double omega0 = config.system.omega0;
    double nbar = photons::mean_photon_number(field);
    std::vector<std::string> warnings;

    bool lossy = config.cavity && config.cavity->mode == CavityModeCfg::Lossy;
    coupling::CouplingSolution solution;
    if (!lossy) {
        if (config.field.type != FieldType::Thermal) {
            throw ConfigError("field: ideal-cavity runs require a thermal field");
        }
        if (!config.system.dipole) {
            throw ConfigError("system.dipole: required for ideal-cavity runs");
        }
        coupling::TwoLevelSystem system{omega0, *config.system.dipole};
        solution = coupling::blackbody_solution(system, field);
    } else {
        double a0 = 0.0, q_net = 0.0;
        if (config.coupling.a0_cavity) {
            a0 = *config.coupling.a0_cavity;
            if (config.coupling.q_net) {
                q_net = *config.coupling.q_net;
            } else {
                auto geometry = geometry_from(*config.cavity);
                q_net = coupling::net_quality_factor(geometry, a0, omega0);
            }
        } else if (config.coupling.omega_rabi) {
            auto geometry = geometry_from(*config.cavity);
            double nbar_ref = nbar;
            if (config.coupling.reference_nbar) {
                nbar_ref = *config.coupling.reference_nbar;
            } else if (config.field.type == FieldType::Coherent) {
                throw ConfigError(
                    "coupling.reference_nbar: required when the measured omega_rabi "
                    "was taken on a thermal background but the field is coherent");
            }
            auto coupled =
                coupling::solve_cavity_coupled(*config.coupling.omega_rabi, nbar_ref,
                                               geometry, omega0);
            a0 = coupled.a0_coefficient;
            q_net = *coupled.q_net;
        } else {
            throw ConfigError(
                "coupling: lossy runs need omega_rabi (measured) or a0_cavity");
        }
        if (config.field.type == FieldType::Thermal) {
            solution = coupling::lossy_fixed_point(a0, nbar, q_net, omega0);
        } else {
            solution = coupling::renorm_coherent(a0, nbar, q_net, omega0);
        }
    }

    double rwa = 2.0 * solution.g_prime / omega0;
    if (rwa > 0.01) {
        warnings.push_back("rotating-wave ratio 2g'/omega0 = " + format_double(rwa) +
                           " exceeds 0.01");
    }
    double dn = photons::photon_number_fluctuation(field);
    if (lossy && dn > 1.0) {
        warnings.push_back("photon-number fluctuation dn = " + format_double(dn) +
                           " exceeds 1; the low-nbar evaluator is unreliable here");
    }
    return {field, solution,
            lossy ? transition::CavityMode::Lossy : transition::CavityMode::Ideal,
            warnings};
}

transition::TransitionModel build_model(const RunConfig& config,
                                        const Scenario& scenario) {
    auto system = system_from(config, scenario.solution);
    return transition::TransitionModel::make(system, scenario.field,
                                             scenario.solution, scenario.mode);
}

json cmd_constants(const RunConfig& config) {
    auto scenario = resolve_scenario(config);
    const auto& sol = scenario.solution;
    double omega0 = config.system.omega0;
    double nbar = photons::mean_photon_number(scenario.field);

    json report;
    auto entry = [](double value, const char* unit, const char* formula) {
        return json{{"value", value}, {"unit", unit}, {"formula", formula}};
    };

    switch (sol.scenario) {
        case coupling::Scenario::FreeSpace: report["scenario"] = "free_space"; break;
        case coupling::Scenario::BlackbodyThermal: report["scenario"] = "blackbody_thermal"; break;
        case coupling::Scenario::LossyThermal: report["scenario"] = "lossy_thermal"; break;
        case coupling::Scenario::LossyCoherent: report["scenario"] = "lossy_coherent"; break;
    }
    report["nbar"] = entry(nbar, "dimensionless",
                           config.field.type == FieldType::Thermal
                               ? "bose_einstein_occupancy"
                               : "configured_mean");
    report["delta_n"] = entry(photons::photon_number_fluctuation(scenario.field),
                              "dimensionless",
                              config.field.type == FieldType::Thermal
                                  ? "sqrt(nbar(nbar+1))"
                                  : "sqrt(nbar)");
    report["u_tilde"] = entry(photons::planck_density_per_photon(omega0),
                              "J_s_per_m3", "hbar_omega0^3_over_pi^2_c^3");
    if (config.system.dipole) {
        coupling::TwoLevelSystem system{omega0, *config.system.dipole};
        report["a0_free_space"] =
            entry(coupling::free_space_a0(system), "rad_s", "free_space_a0");
        report["b0"] = entry(coupling::einstein_b0(system), "rad_s_per_J_s_m3",
                             "einstein_b0");
    } else {
        report["b0"] = entry(sol.b0_coefficient, "rad_s_per_J_s_m3",
                             "a0_over_u_tilde");
    }
    report["a0"] = entry(sol.a0_coefficient, "rad_s",
                         scenario.mode == transition::CavityMode::Lossy
                             ? "invert_a0_from_rabi"
                             : "free_space_a0");
    report["g_prime"] = entry(sol.g_prime, "rad_s",
                              sol.scenario == coupling::Scenario::LossyCoherent
                                  ? "halftime_limit_constraint"
                                  : (scenario.mode == transition::CavityMode::Lossy
                                         ? "lossy_fixed_point"
                                         : "renorm_blackbody"));
    report["omega_rabi"] = entry(sol.omega_rabi, "rad_s", "2_g_prime_sqrt(nbar+1)");
    report["a0_over_omega_rabi"] =
        entry(sol.a0_coefficient / sol.omega_rabi, "dimensionless", "ratio");
    report["r0_over_omega_rabi"] = entry(
        nbar * sol.a0_coefficient / sol.omega_rabi, "dimensionless", "ratio");
    if (sol.q_net) {
        report["q_net"] = entry(*sol.q_net, "dimensionless", "net_quality_factor");
        report["cavity_linewidth"] =
            entry(omega0 / *sol.q_net, "rad_s", "omega0_over_q_net");
    }
    if (config.cavity && config.cavity->mirror_radius &&
        config.cavity->mirror_separation) {
        double p0 = 1.0 / (1.0 + *config.cavity->mirror_radius /
                                     *config.cavity->mirror_separation);
        report["p0"] = entry(p0, "dimensionless", "escape_probability");
    }
    if (!scenario.warnings.empty()) report["warnings"] = scenario.warnings;
    return report;
}

TimeSeries cmd_rabi(const RunConfig& config) {
    if (!config.grid) throw ConfigError("grid: required for the rabi command");
    auto scenario = resolve_scenario(config);
    auto model = build_model(config, scenario);

    RabiEvaluator evaluator = config.rabi_evaluator.value_or(
        config.field.type == FieldType::Thermal ? RabiEvaluator::LowNbar
                                                : RabiEvaluator::FullSum);

    TimeSeries out;
    out.t = make_grid(*config.grid);
    auto& p21 = out.add_channel("p21");
    for (std::size_t i = 0; i < out.t.size(); ++i) {
        double t = out.t[i];
        if (scenario.mode == transition::CavityMode::Ideal) {
            p21[i] = transition::prob_ideal(model, t);
        } else if (evaluator == RabiEvaluator::LowNbar) {
            p21[i] = transition::prob_lossy_low_nbar(model, t);
        } else {
            p21[i] = transition::prob_lossy(model, t);
        }
    }
    return out;
}

TimeSeries cmd_coefficients(const RunConfig& config,
                            transition::CoefficientMode mode) {
    if (!config.grid) throw ConfigError("grid: required for the coefficients command");
    auto scenario = resolve_scenario(config);
    auto model = build_model(config, scenario);
    double a0 = scenario.solution.a0_coefficient;
    double norm = config.coefficients_normalize ? a0 : 1.0;

    TimeSeries out;
    out.t = make_grid(*config.grid);
    auto& a_t = out.add_channel("a_t");
    auto& b21_u = out.add_channel("b21_u");
    auto& r12 = out.add_channel("r12");
    double u = photons::energy_density(scenario.field);
    for (std::size_t i = 0; i < out.t.size(); ++i) {
        double t = out.t[i];
        a_t[i] = transition::generalized_A(scenario.solution, scenario.field, t, mode) / norm;
        b21_u[i] = u * transition::generalized_B21(scenario.solution, scenario.field, t, mode) / norm;
        r12[i] = transition::absorption_rate(model, t, mode) / norm;
    }
    return out;
}

TimeSeries cmd_dynamics(const RunConfig& config) {
    if (!config.grid) throw ConfigError("grid: required for the dynamics command");
    auto scenario = resolve_scenario(config);
    double nbar = photons::mean_photon_number(scenario.field);
    dynamics::RateParams params{scenario.solution.a0_coefficient,
                                nbar * scenario.solution.a0_coefficient,
                                scenario.solution.omega_rabi};

    TimeSeries out;
    out.t = make_grid(*config.grid);
    const auto& kb = constants::codata2018.kB;

    if (config.dynamics_init == DynamicsInit::ThermalAverage) {
        if (config.field.type != FieldType::Thermal) {
            throw ConfigError("dynamics.init: thermal-average requires a thermal field");
        }
        auto& p1 = out.add_channel("p1");
        auto& p2 = out.add_channel("p2");
        auto& s = out.add_channel("entropy_over_kB");
        auto& s_avg = out.add_channel("s_avg_over_kB");
        const auto& k = constants::codata2018;
        double w2 = 1.0 / (1.0 + std::exp(k.hbar * config.system.omega0 /
                                          (k.kB * config.field.temperature)));
        for (std::size_t i = 0; i < out.t.size(); ++i) {
            double t = out.t[i];
            auto hot = dynamics::generalized_solution(params, 1.0, t);
            auto cold = dynamics::generalized_solution(params, 0.0, t);
            double p2_mix = w2 * hot.p2 + (1.0 - w2) * cold.p2;
            p1[i] = 1.0 - p2_mix;
            p2[i] = p2_mix;
            s[i] = dynamics::entropy({1.0 - p2_mix, p2_mix, t}) / kb;
            s_avg[i] = dynamics::average_entropy(params, config.field.temperature,
                                                 config.system.omega0, t) / kb;
        }
        return out;
    }

    double p2_init = config.dynamics_init == DynamicsInit::Excited ? 1.0 : 0.0;
    auto& p1 = out.add_channel("p1");
    auto& p2 = out.add_channel("p2");
    auto& s = out.add_channel("entropy_over_kB");
    for (std::size_t i = 0; i < out.t.size(); ++i) {
        auto state = dynamics::generalized_solution(params, p2_init, out.t[i]);
        p1[i] = state.p1;
        p2[i] = state.p2;
        s[i] = dynamics::entropy(state) / kb;
    }
    return out;
}

fit::FitResult cmd_fit(const RunConfig& config, const fit::TraceData& data,
                       std::uint64_t seed) {
    if (!config.fit) throw ConfigError("fit: section required for the fit command");
    const auto& section = *config.fit;

    fit::RabiTraceModel model;
    model.omega0 = config.system.omega0;

    // Fill defaults from the scenario where the config does not pin them.
    std::optional<Scenario> scenario;
    auto scenario_default = [&](const std::string& name) -> double {
        if (!scenario) scenario = resolve_scenario(config);
        if (name == "omega_rabi") return scenario->solution.omega_rabi;
        if (name == "nbar") return photons::mean_photon_number(scenario->field);
        if (name == "q_net") {
            if (!scenario->solution.q_net) {
                throw ConfigError("fit: q_net has no default in an ideal-cavity scenario");
            }
            return *scenario->solution.q_net;
        }
        throw ConfigError("fit: unknown parameter '" + name + "'");
    };
    for (auto& [name, value] : model.defaults) {
        auto it = section.initial.find(name);
        if (it != section.initial.end()) {
            value = it->second;
        } else if (name != "amplitude" && name != "offset") {
            value = scenario_default(name);
        }
    }
    for (const auto& [name, value] : section.initial) {
        if (!model.defaults.count(name)) {
            throw ConfigError("fit.initial: unknown parameter '" + name + "'");
        }
        (void)value;
    }

    std::map<std::string, fit::FitBounds> bounds;
    for (const auto& name : section.vary) {
        auto it = section.bounds.find(name);
        if (it == section.bounds.end()) {
            throw ConfigError("fit.bounds: missing bounds for varied parameter '" + name + "'");
        }
        bounds[name] = {it->second.lower, it->second.upper};
    }
    return fit::fit_trace(data, model, section.vary, bounds, seed);
}

void write_csv(std::ostream& out, const TimeSeries& series) {
    out << "t_s";
    for (const auto& [name, values] : series.channels) {
        (void)values;
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        out << format_double(series.t[i]);
        for (const auto& [name, values] : series.channels) {
            (void)name;
            out << ',' << format_double(values[i]);
        }
        out << '\n';
    }
}

fit::TraceData parse_trace_csv(std::istream& in) {
    fit::TraceData data;
    std::string line;
    std::size_t lineno = 0;
    bool header_allowed = true;
    bool any_row = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        auto pos = trimmed.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (trimmed[pos] == '#') continue;

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() < 2 || fields.size() > 3) {
            throw TraceParseError("trace line " + std::to_string(lineno) +
                                  ": expected 2 or 3 columns");
        }
        auto parse_field = [&](const std::string& s, double& value) {
            const char* begin = s.data();
            const char* end = s.data() + s.size();
            while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
            while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
            auto [ptr, ec] = std::from_chars(begin, end, value);
            return ec == std::errc() && ptr == end;
        };
        double t, v, w = 1.0;
        bool ok = parse_field(fields[0], t) && parse_field(fields[1], v) &&
                  (fields.size() < 3 || parse_field(fields[2], w));
        if (!ok) {
            if (header_allowed) {
                header_allowed = false;
                continue; // single header line
            }
            throw TraceParseError("trace line " + std::to_string(lineno) +
                                  ": malformed number");
        }
        header_allowed = false;
        data.samples.push_back({t, v, w});
        any_row = true;
    }
    if (!any_row) throw TraceParseError("trace: no data rows found");
    try {
        data.validate();
    } catch (const std::invalid_argument& e) {
        throw TraceParseError(std::string("trace: ") + e.what());
    }
    return data;
}

nlohmann::json fit_result_json(const fit::FitResult& result) {
    json parameters;
    for (const auto& [name, value] : result.parameters) {
        parameters[name] = {{"value", value}, {"varied", result.varied.at(name)}};
    }
    return json{{"parameters", parameters},
                {"residual_rms", result.residual_rms},
                {"iterations", result.iterations},
                {"converged", result.converged}};
}

namespace {

int run_cli_inner(const CliOptions& options, std::ostream& out, std::ostream& err) {
    RunConfig config = load_config(options.config_path);

    if (options.command == "constants") {
        out << cmd_constants(config).dump(2) << '\n';
        return 0;
    }
    if (options.command == "rabi") {
        write_csv(out, cmd_rabi(config));
        return 0;
    }
    if (options.command == "coefficients") {
        transition::CoefficientMode mode;
        if (options.mode == "exact") {
            mode = transition::CoefficientMode::Exact;
        } else if (options.mode == "approx") {
            mode = transition::CoefficientMode::Approx;
        } else {
            throw ConfigError("--mode: must be 'exact' or 'approx'");
        }
        write_csv(out, cmd_coefficients(config, mode));
        return 0;
    }
    if (options.command == "dynamics") {
        write_csv(out, cmd_dynamics(config));
        return 0;
    }
    if (options.command == "fit") {
        std::ifstream data_in(options.data_path);
        if (!data_in) throw ConfigError("--data: cannot open '" + options.data_path + "'");
        auto data = parse_trace_csv(data_in);
        auto result = cmd_fit(config, data, options.seed);
        out << fit_result_json(result).dump(2) << '\n';
        if (!result.converged) {
            err << "fit: did not converge within the evaluation budget\n";
            return 4;
        }
        return 0;
    }
    throw ConfigError("unknown command '" + options.command + "'");
}

} // namespace

int run_cli(const CliOptions& options, std::ostream& err) {
    try {
        if (options.out_path.empty()) {
            return run_cli_inner(options, std::cout, err);
        }
        std::ofstream out(options.out_path);
        if (!out) {
            err << "error: cannot open output file '" << options.out_path << "'\n";
            return 2;
        }
        return run_cli_inner(options, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const TraceParseError& e) {
        err << "trace error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace qrabi::cli
