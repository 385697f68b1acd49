#ifndef COOPDECAY_CONFIG_HPP
#define COOPDECAY_CONFIG_HPP

#include <string>
#include <vector>

#include "coopdecay/analysis.hpp"

namespace coopdecay {

struct AnalysisConfig {
    double omega_half_width = 0.0;  // 0: auto, 20 * max Gamma_f over the run
    int omega_points = 4096;
    std::vector<double> alpha_list = {0.1, 0.3, 1.0};
    PlateauThresholds plateau;
};

struct OutputConfig {
    std::string directory = "out";
};

struct SweepConfig {
    std::vector<double> eta_list;  // mapped to fixed rho rungs, C = eta/rho
    std::vector<double> c_list;    // explicit (C, rho) grid, zipped
    std::vector<double> rho_list;
};

struct RunConfig {
    SystemParams system;
    IntegratorConfig integrator;
    AnalysisConfig analysis;
    OutputConfig output;
    SweepConfig sweep;
};

/// Strict INI-style parser: [section] headers, key = value lines, '#' comments.
/// Unknown sections/keys, duplicate keys and malformed values all throw
/// ConfigError.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Lossless round-trip of a RunConfig back to config text.
std::string serialize_config(const RunConfig& config);

}  // namespace coopdecay

#endif
