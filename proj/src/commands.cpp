#include "coopdecay/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coopdecay/analysis.hpp"

namespace coopdecay {

namespace {

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

RunConfig load_with_overrides(const CliOptions& opts) {
    RunConfig cfg = load_config(opts.config_path);
    if (opts.out_dir) cfg.output.directory = *opts.out_dir;
    if (opts.q0_mode) {
        if (*opts.q0_mode == "taylor") cfg.system.q0_mode = Q0Mode::Taylor;
        else if (*opts.q0_mode == "exact") cfg.system.q0_mode = Q0Mode::Exact;
        else throw ConfigError("--q0-mode must be taylor or exact");
    }
    return cfg;
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<double> spectrum_grid_for(const RunConfig& cfg, const TimeSeries& series) {
    double hw = cfg.analysis.omega_half_width;
    if (hw <= 0.0) {
        double max_gf = 0.0;
        for (const auto& r : series.records)
            max_gf = std::max(max_gf, r.rates.Gamma_f(cfg.system));
        hw = 20.0 * std::max(max_gf, cfg.system.gamma);
    }
    return make_omega_grid(hw, cfg.analysis.omega_points);
}

struct PointSummary {
    double eta = 0.0, C = 0.0, rho = 0.0;
    double t_burst = std::nan("");
    double peak_adot_over_eta = std::nan("");
    double plateau_inv_xi_eta = std::nan("");
    double max_linewidth = std::nan("");
    std::string status = "ok";
};

double burst_time(const TimeSeries& series) {
    double best = std::nan("");
    double peak = -1.0;
    for (const auto& r : series.records)
        if (r.t > 0.0 && -r.adot > peak) {
            peak = -r.adot;
            best = r.t;
        }
    return best;
}

double peak_intensity(const TimeSeries& series) {
    double peak = 0.0;
    for (const auto& r : series.records) peak = std::max(peak, -r.adot);
    return peak;
}

void summarize_point(const RunConfig& cfg, const TimeSeries& series, PointSummary& ps,
                     bool serial_spectra) {
    ps.t_burst = burst_time(series);
    const double eta = cfg.system.eta();
    ps.peak_adot_over_eta = peak_intensity(series) / eta;
    try {
        ps.plateau_inv_xi_eta =
            subradiance_metrics(series, cfg.system, cfg.analysis.plateau).mean_inv_xi_eta;
    } catch (const NoPlateau&) {
    }
    const std::vector<double> grid = spectrum_grid_for(cfg, series);
    double max_fw = 0.0;
    bool any = false;
    for (const auto& r : series.records) {
        if (!(r.rates.Gamma > 0.0)) continue;
        const Spectrum sp =
            instantaneous_spectrum(r.state, r.rates, cfg.system, grid, serial_spectra);
        try {
            max_fw = std::max(max_fw, fwhm(sp));
            any = true;
        } catch (const NoHalfCrossing&) {
        }
    }
    if (any) ps.max_linewidth = max_fw;
}

void write_run_outputs(const RunConfig& cfg, const std::string& dir, const TimeSeries& series,
                       double wall_seconds) {
    RunStats stats;
    stats.solver_iterations = series.solver_iterations;
    stats.rhs_evaluations = series.rhs_evaluations;
    stats.wall_seconds = wall_seconds;
    stats.records = series.size();
    write_file_atomic(dir + "/timeseries.csv", timeseries_csv(series));
    write_file_atomic(dir + "/run_meta.json", run_meta_json(cfg, stats));
}

int classify_runtime_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
}

}  // namespace

int cmd_run(const CliOptions& opts) {
    RunConfig cfg;
    try {
        cfg = load_with_overrides(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        const auto t0 = clock_type::now();
        const TimeSeries series = run(cfg.system, cfg.integrator);
        write_run_outputs(cfg, cfg.output.directory, series, seconds_since(t0));
    } catch (const std::exception& e) {
        return classify_runtime_error(e);
    }
    return kExitOk;
}

int cmd_sweep(const CliOptions& opts) {
    RunConfig cfg;
    try {
        cfg = load_with_overrides(opts);
        if (cfg.sweep.eta_list.empty() && cfg.sweep.c_list.empty())
            throw ConfigError("sweep requires eta_list or c_list/rho_list");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    struct Point {
        double C, rho;
    };
    std::vector<Point> points;
    // Fixed sample-size rungs: rho = 10 for thin samples, rho = 40 above.
    // C = rho = sqrt(eta) lands on rho values where the propagation phase makes
    // the inter-atom rate negative and the closure breaks down.
    for (double eta : cfg.sweep.eta_list) {
        const double rho = (eta <= 400.0) ? 10.0 : 40.0;
        points.push_back({eta / rho, rho});
    }
    for (std::size_t i = 0; i < cfg.sweep.c_list.size(); ++i)
        points.push_back({cfg.sweep.c_list[i], cfg.sweep.rho_list[i]});

    const auto n = static_cast<long>(points.size());
    std::vector<PointSummary> summary(n);

#ifdef _OPENMP
    const int jobs = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
#endif
    for (long i = 0; i < n; ++i) {
        RunConfig pc = cfg;
        pc.system.C = points[i].C;
        pc.system.rho_size = points[i].rho;
        char sub[32];
        std::snprintf(sub, sizeof sub, "/point_%03ld", i);
        pc.output.directory = cfg.output.directory + sub;
        PointSummary& ps = summary[i];
        ps.C = pc.system.C;
        ps.rho = pc.system.rho_size;
        ps.eta = pc.system.eta();
        try {
            const auto t0 = clock_type::now();
            const TimeSeries series = run(pc.system, pc.integrator);
            write_run_outputs(pc, pc.output.directory, series, seconds_since(t0));
            summarize_point(pc, series, ps, /*serial_spectra=*/true);
        } catch (const std::exception& e) {
            std::string what = e.what();
            std::replace(what.begin(), what.end(), ',', ';');
            ps.status = "failed: " + what;
        }
    }

    std::string csv =
        "index,eta,C,rho,t_burst,peak_adot_over_eta,plateau_inv_xi_eta,max_linewidth,status\n";
    bool any_ok = false;
    for (long i = 0; i < n; ++i) {
        const PointSummary& ps = summary[i];
        if (ps.status == "ok") any_ok = true;
        csv += std::to_string(i) + ',' + format_double(ps.eta) + ',' + format_double(ps.C) +
               ',' + format_double(ps.rho) + ',' + format_double(ps.t_burst) + ',' +
               format_double(ps.peak_adot_over_eta) + ',' +
               format_double(ps.plateau_inv_xi_eta) + ',' + format_double(ps.max_linewidth) +
               ',' + ps.status + '\n';
    }
    try {
        write_file_atomic(cfg.output.directory + "/summary.csv", csv);
    } catch (const std::exception& e) {
        return classify_runtime_error(e);
    }
    return any_ok ? kExitOk : kExitAllSweepFailed;
}

int cmd_spectrum(const CliOptions& opts) {
    RunConfig cfg;
    try {
        cfg = load_with_overrides(opts);
        if (opts.snapshot_times.empty())
            throw ConfigError("spectrum requires at least one --time");
        for (double t : opts.snapshot_times)
            if (!(t >= 0.0 && t <= cfg.integrator.t_end))
                throw ConfigError("snapshot time outside [0, t_end]: " + std::to_string(t));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        const TimeSeries series = run(cfg.system, cfg.integrator);
        const std::vector<double> grid = spectrum_grid_for(cfg, series);

        for (double treq : opts.snapshot_times) {
            // snap to the nearest output record (log distance for t > 0)
            std::size_t best = 0;
            double bestd = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < series.size(); ++i) {
                const double d = std::abs(series[i].t - treq);
                if (d < bestd) {
                    bestd = d;
                    best = i;
                }
            }
            const double tsnap = series[best].t;
            const double cell =
                tsnap * (std::pow(10.0, 1.0 / cfg.integrator.points_per_decade) - 1.0);
            if (bestd > 0.5 * std::max(cell, 1e-300))
                std::cerr << "warning: requested t=" << treq << " snapped to t=" << tsnap
                          << "\n";
            Spectrum sp = instantaneous_spectrum(series[best].state, series[best].rates,
                                                 cfg.system, grid);
            sp.t = tsnap;
            char name[64];
            std::snprintf(name, sizeof name, "/spectrum_%g.csv", treq);
            write_file_atomic(cfg.output.directory + name, spectrum_csv(sp));
        }

        std::string lw = "t,fwhm\n";
        for (const auto& r : series.records) {
            double w = std::nan("");
            if (r.rates.Gamma > 0.0) {
                const Spectrum sp = instantaneous_spectrum(r.state, r.rates, cfg.system, grid);
                try {
                    w = fwhm(sp);
                } catch (const NoHalfCrossing&) {
                }
            }
            lw += format_double(r.t) + ',' + format_double(w) + '\n';
        }
        write_file_atomic(cfg.output.directory + "/linewidth.csv", lw);
    } catch (const std::exception& e) {
        return classify_runtime_error(e);
    }
    return kExitOk;
}

int cmd_phase(const CliOptions& opts) {
    RunConfig cfg;
    std::vector<double> alphas;
    try {
        cfg = load_with_overrides(opts);
        alphas = opts.alpha_list.empty() ? cfg.analysis.alpha_list : opts.alpha_list;
        if (alphas.empty()) throw ConfigError("phase requires a non-empty alpha list");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        const TimeSeries series = run(cfg.system, cfg.integrator);
        const std::vector<double> grid = spectrum_grid_for(cfg, series);

        std::vector<double> times;
        std::vector<Spectrum> spectra;
        for (const auto& r : series.records) {
            if (r.t <= 0.0 || !(r.rates.Gamma > 0.0)) continue;
            times.push_back(r.t);
            spectra.push_back(instantaneous_spectrum(r.state, r.rates, cfg.system, grid));
        }

        std::string csv = "t,alpha,phi,phi_norm\n";
        for (double alpha : alphas) {
            std::vector<double> phis(times.size());
            double maxabs = 0.0;
            for (std::size_t i = 0; i < times.size(); ++i) {
                phis[i] = phase_angle(spectra[i], alpha * times[i]);
                maxabs = std::max(maxabs, std::abs(phis[i]));
            }
            for (std::size_t i = 0; i < times.size(); ++i) {
                const double norm = maxabs > 0.0 ? phis[i] / maxabs : 0.0;
                csv += format_double(times[i]) + ',' + format_double(alpha) + ',' +
                       format_double(phis[i]) + ',' + format_double(norm) + '\n';
            }
        }
        write_file_atomic(cfg.output.directory + "/phase.csv", csv);
    } catch (const std::exception& e) {
        return classify_runtime_error(e);
    }
    return kExitOk;
}

int cmd_validate(const CliOptions&) {
    const std::vector<ValidationResult> results = run_validation_suite();
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
        std::cout << "\n";
        all = all && r.pass;
    }
    return all ? kExitOk : kExitValidateFailed;
}

}  // namespace coopdecay
