#include "qrabi/config.hpp"

#include "qrabi/constants.hpp"

#include <fstream>

namespace qrabi::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed) {
            if (key == a) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

const json& require(const json& j, const std::string& where, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(where + ": missing required key '" + key + "'");
    return *it;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

// Frequencies must carry an explicit unit tag; "hz" values are converted to
// angular frequency here, once, at the boundary.
double angular_frequency(const json& j, const std::string& where) {
    if (!j.is_object()) {
        throw ConfigError(where + ": frequency needs {\"value\":..., \"unit\":\"hz\"|\"rad_s\"}");
    }
    reject_unknown(j, where, {"value", "unit"});
    double v = number(require(j, where, "value"), where + ".value");
    std::string unit = require(j, where, "unit").get<std::string>();
    if (unit == "hz") return v * constants::two_pi;
    if (unit == "rad_s") return v;
    throw ConfigError(where + ".unit: must be 'hz' or 'rad_s'");
}

SystemConfig parse_system(const json& j) {
    reject_unknown(j, "system", {"omega0", "dipole"});
    SystemConfig out;
    out.omega0 = angular_frequency(require(j, "system", "omega0"), "system.omega0");
    if (!(out.omega0 > 0.0)) throw ConfigError("system.omega0: must be positive");
    if (j.contains("dipole")) {
        const json& d = j.at("dipole");
        if (!d.is_object()) throw ConfigError("system.dipole: expected an object");
        if (d.contains("a0e_multiple")) {
            reject_unknown(d, "system.dipole", {"a0e_multiple"});
            double m = number(d.at("a0e_multiple"), "system.dipole.a0e_multiple");
            if (!(m > 0.0)) throw ConfigError("system.dipole.a0e_multiple: must be positive");
            out.dipole = constants::dipole_from_a0e(m);
        } else {
            reject_unknown(d, "system.dipole", {"value", "unit"});
            double v = number(require(d, "system.dipole", "value"), "system.dipole.value");
            std::string unit = require(d, "system.dipole", "unit").get<std::string>();
            if (unit != "C_m") throw ConfigError("system.dipole.unit: must be 'C_m'");
            if (!(v > 0.0)) throw ConfigError("system.dipole.value: must be positive");
            out.dipole = v;
        }
    }
    return out;
}

FieldConfig parse_field(const json& j) {
    reject_unknown(j, "field", {"type", "temperature_K", "nbar"});
    FieldConfig out;
    std::string type = require(j, "field", "type").get<std::string>();
    if (type == "thermal") {
        out.type = FieldType::Thermal;
        out.temperature = number(require(j, "field", "temperature_K"), "field.temperature_K");
        if (!(out.temperature >= 0.0)) throw ConfigError("field.temperature_K: must be non-negative");
        if (j.contains("nbar")) throw ConfigError("field: 'nbar' not allowed for thermal fields");
    } else if (type == "coherent") {
        out.type = FieldType::Coherent;
        out.nbar = number(require(j, "field", "nbar"), "field.nbar");
        if (!(out.nbar >= 0.0)) throw ConfigError("field.nbar: must be non-negative");
        if (j.contains("temperature_K")) {
            throw ConfigError("field: 'temperature_K' not allowed for coherent fields");
        }
    } else {
        throw ConfigError("field.type: must be 'thermal' or 'coherent'");
    }
    return out;
}

CavityConfig parse_cavity(const json& j) {
    reject_unknown(j, "cavity",
                   {"mode", "q_factor", "mirror_radius_m", "mirror_separation_m"});
    CavityConfig out;
    std::string mode = require(j, "cavity", "mode").get<std::string>();
    if (mode == "ideal") {
        out.mode = CavityModeCfg::Ideal;
    } else if (mode == "lossy") {
        out.mode = CavityModeCfg::Lossy;
    } else {
        throw ConfigError("cavity.mode: must be 'ideal' or 'lossy'");
    }
    auto positive = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key)) return std::nullopt;
        double v = number(j.at(key), std::string("cavity.") + key);
        if (!(v > 0.0)) throw ConfigError(std::string("cavity.") + key + ": must be positive");
        return v;
    };
    out.q_factor = positive("q_factor");
    out.mirror_radius = positive("mirror_radius_m");
    out.mirror_separation = positive("mirror_separation_m");
    return out;
}

CouplingConfig parse_coupling(const json& j) {
    reject_unknown(j, "coupling", {"omega_rabi", "a0_cavity", "q_net", "reference_nbar"});
    CouplingConfig out;
    if (j.contains("omega_rabi")) {
        out.omega_rabi = angular_frequency(j.at("omega_rabi"), "coupling.omega_rabi");
        if (!(*out.omega_rabi > 0.0)) throw ConfigError("coupling.omega_rabi: must be positive");
    }
    if (j.contains("a0_cavity")) {
        out.a0_cavity = angular_frequency(j.at("a0_cavity"), "coupling.a0_cavity");
        if (!(*out.a0_cavity > 0.0)) throw ConfigError("coupling.a0_cavity: must be positive");
    }
    if (j.contains("q_net")) {
        out.q_net = number(j.at("q_net"), "coupling.q_net");
        if (!(*out.q_net > 0.0)) throw ConfigError("coupling.q_net: must be positive");
    }
    if (j.contains("reference_nbar")) {
        out.reference_nbar = number(j.at("reference_nbar"), "coupling.reference_nbar");
        if (!(*out.reference_nbar >= 0.0)) {
            throw ConfigError("coupling.reference_nbar: must be non-negative");
        }
    }
    return out;
}

GridConfig parse_grid(const json& j) {
    reject_unknown(j, "grid", {"t_max_s", "points"});
    GridConfig out;
    out.t_max = number(require(j, "grid", "t_max_s"), "grid.t_max_s");
    if (!(out.t_max >= 0.0)) throw ConfigError("grid.t_max_s: must be non-negative");
    const json& p = require(j, "grid", "points");
    if (!p.is_number_unsigned() || p.get<std::uint64_t>() == 0) {
        throw ConfigError("grid.points: must be a positive integer");
    }
    out.points = p.get<std::size_t>();
    return out;
}

FitSection parse_fit(const json& j) {
    reject_unknown(j, "fit", {"vary", "initial", "bounds"});
    FitSection out;
    const json& vary = require(j, "fit", "vary");
    if (!vary.is_array() || vary.empty()) {
        throw ConfigError("fit.vary: must be a non-empty array of parameter names");
    }
    for (const auto& v : vary) out.vary.push_back(v.get<std::string>());

    auto param_value = [&](const json& v, const std::string& where, const std::string& name) {
        // omega_rabi is a frequency and must be unit-tagged; the rest are plain
        if (name == "omega_rabi") return angular_frequency(v, where);
        return number(v, where);
    };

    if (j.contains("initial")) {
        for (const auto& [name, v] : j.at("initial").items()) {
            out.initial[name] = param_value(v, "fit.initial." + name, name);
        }
    }
    if (j.contains("bounds")) {
        for (const auto& [name, v] : j.at("bounds").items()) {
            std::string where = "fit.bounds." + name;
            if (!v.is_object()) throw ConfigError(where + ": expected {lower, upper}");
            reject_unknown(v, where, {"lower", "upper"});
            FitParamBounds b;
            b.lower = param_value(require(v, where, "lower"), where + ".lower", name);
            b.upper = param_value(require(v, where, "upper"), where + ".upper", name);
            if (!(b.lower < b.upper)) throw ConfigError(where + ": lower must be < upper");
            out.bounds[name] = b;
        }
    }
    return out;
}

} // namespace

RunConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown(j, "config",
                   {"system", "field", "cavity", "coupling", "grid", "rabi",
                    "dynamics", "coefficients", "fit"});
    RunConfig out;
    out.system = parse_system(require(j, "config", "system"));
    out.field = parse_field(require(j, "config", "field"));
    if (j.contains("cavity")) out.cavity = parse_cavity(j.at("cavity"));
    if (j.contains("coupling")) out.coupling = parse_coupling(j.at("coupling"));
    if (j.contains("grid")) out.grid = parse_grid(j.at("grid"));
    if (j.contains("rabi")) {
        const json& r = j.at("rabi");
        reject_unknown(r, "rabi", {"evaluator"});
        std::string e = require(r, "rabi", "evaluator").get<std::string>();
        if (e == "low_nbar") {
            out.rabi_evaluator = RabiEvaluator::LowNbar;
        } else if (e == "full_sum") {
            out.rabi_evaluator = RabiEvaluator::FullSum;
        } else {
            throw ConfigError("rabi.evaluator: must be 'low_nbar' or 'full_sum'");
        }
    }
    if (j.contains("dynamics")) {
        const json& d = j.at("dynamics");
        reject_unknown(d, "dynamics", {"init"});
        std::string init = require(d, "dynamics", "init").get<std::string>();
        if (init == "excited") {
            out.dynamics_init = DynamicsInit::Excited;
        } else if (init == "ground") {
            out.dynamics_init = DynamicsInit::Ground;
        } else if (init == "thermal-average") {
            out.dynamics_init = DynamicsInit::ThermalAverage;
        } else {
            throw ConfigError("dynamics.init: must be 'excited', 'ground' or 'thermal-average'");
        }
    }
    if (j.contains("coefficients")) {
        const json& c = j.at("coefficients");
        reject_unknown(c, "coefficients", {"normalize"});
        if (c.contains("normalize")) {
            if (!c.at("normalize").is_boolean()) {
                throw ConfigError("coefficients.normalize: must be a boolean");
            }
            out.coefficients_normalize = c.at("normalize").get<bool>();
        }
    }
    if (j.contains("fit")) out.fit = parse_fit(j.at("fit"));
    return out;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

} // namespace qrabi::cli
