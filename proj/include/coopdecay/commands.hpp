#ifndef COOPDECAY_COMMANDS_HPP
#define COOPDECAY_COMMANDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "coopdecay/config.hpp"
#include "coopdecay/output.hpp"

namespace coopdecay {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitAllSweepFailed = 4;
inline constexpr int kExitValidateFailed = 5;

struct CliOptions {
    std::string config_path;
    std::optional<std::string> out_dir;       // overrides [output] directory
    int jobs = 0;                             // 0: default
    std::optional<std::string> q0_mode;       // "taylor" | "exact"
    std::vector<double> snapshot_times;       // cmd_spectrum
    std::vector<double> alpha_list;           // cmd_phase override
};

int cmd_run(const CliOptions& opts);
int cmd_sweep(const CliOptions& opts);
int cmd_spectrum(const CliOptions& opts);
int cmd_phase(const CliOptions& opts);
int cmd_validate(const CliOptions& opts);

struct ValidationResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<ValidationResult> run_validation_suite();

}  // namespace coopdecay

#endif
