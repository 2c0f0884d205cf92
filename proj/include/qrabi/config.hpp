#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qrabi::cli {

// Schema violation in a run config; message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FieldType { Thermal, Coherent };
enum class CavityModeCfg { Ideal, Lossy };
enum class DynamicsInit { Excited, Ground, ThermalAverage };
enum class RabiEvaluator { LowNbar, FullSum };

struct SystemConfig {
    double omega0 = 0.0;          // rad/s (converted at the boundary)
    std::optional<double> dipole; // C m
};

struct FieldConfig {
    FieldType type = FieldType::Thermal;
    double temperature = 0.0; // K
    double nbar = 0.0;
};

struct CavityConfig {
    CavityModeCfg mode = CavityModeCfg::Ideal;
    std::optional<double> q_factor;
    std::optional<double> mirror_radius;     // m
    std::optional<double> mirror_separation; // m
};

struct CouplingConfig {
    std::optional<double> omega_rabi; // rad/s, measured
    std::optional<double> a0_cavity;  // rad/s, Purcell-enhanced A(0)
    std::optional<double> q_net;
    std::optional<double> reference_nbar;
};

struct GridConfig {
    double t_max = 0.0; // s
    std::size_t points = 1;
};

struct FitParamBounds {
    double lower = 0.0;
    double upper = 0.0;
};

struct FitSection {
    std::vector<std::string> vary;
    std::map<std::string, double> initial;
    std::map<std::string, FitParamBounds> bounds;
};

struct RunConfig {
    SystemConfig system;
    FieldConfig field;
    std::optional<CavityConfig> cavity;
    CouplingConfig coupling;
    std::optional<GridConfig> grid;
    std::optional<RabiEvaluator> rabi_evaluator;
    DynamicsInit dynamics_init = DynamicsInit::Excited;
    bool coefficients_normalize = false;
    std::optional<FitSection> fit;
};

// Parses and validates; unknown keys and untagged frequencies are rejected.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

} // namespace qrabi::cli
