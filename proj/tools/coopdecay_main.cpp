#include "CLI11.hpp"
#include "coopdecay/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"coopdecay: cooperative spontaneous emission simulator"};
    app.require_subcommand(1);

    coopdecay::CliOptions opts;
    std::string q0_mode;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", opts.config_path, "configuration file");
        if (config_required) c->required();
        sub->add_option("--out", [&](const std::vector<std::string>& v) {
            opts.out_dir = v.back();
            return true;
        }, "output directory override");
        sub->add_option("--jobs", opts.jobs, "parallel sweep workers");
        sub->add_option("--q0-mode", q0_mode, "taylor|exact")
            ->check(CLI::IsMember({"taylor", "exact"}));
    };

    auto* run = app.add_subcommand("run", "integrate one configuration");
    add_common(run, true);
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    add_common(sweep, true);
    auto* spectrum = app.add_subcommand("spectrum", "emit instantaneous spectra");
    add_common(spectrum, true);
    spectrum->add_option("--time", opts.snapshot_times, "snapshot times")->required();
    auto* phase = app.add_subcommand("phase", "emit the phase-angle trace");
    add_common(phase, true);
    phase->add_option("--alpha", opts.alpha_list, "lag constants (overrides config)");
    auto* validate = app.add_subcommand("validate", "run the built-in oracle suite");
    add_common(validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : coopdecay::kExitConfig;
    }
    if (!q0_mode.empty()) opts.q0_mode = q0_mode;

    if (run->parsed()) return coopdecay::cmd_run(opts);
    if (sweep->parsed()) return coopdecay::cmd_sweep(opts);
    if (spectrum->parsed()) return coopdecay::cmd_spectrum(opts);
    if (phase->parsed()) return coopdecay::cmd_phase(opts);
    return coopdecay::cmd_validate(opts);
}
