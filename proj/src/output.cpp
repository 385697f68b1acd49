#include "coopdecay/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace coopdecay {

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string timeseries_csv(const TimeSeries& series) {
    std::string s =
        "t,a,n,x,re_rho_eg,im_rho_eg,re_m_eg,im_m_eg,re_rho_egeg,im_rho_egeg,"
        "Gamma,Gamma_bar,adot,xi,chi_re,chi_im\n";
    for (const auto& r : series.records) {
        s += format_double(r.t);
        s += ',';
        s += format_double(r.state.a);
        s += ',';
        s += format_double(r.state.n);
        s += ',';
        s += format_double(r.state.x);
        s += ',';
        s += format_double(std::real(r.state.rho_eg));
        s += ',';
        s += format_double(std::imag(r.state.rho_eg));
        s += ',';
        s += format_double(std::real(r.state.m_eg));
        s += ',';
        s += format_double(std::imag(r.state.m_eg));
        s += ',';
        s += format_double(std::real(r.state.rho_egeg));
        s += ',';
        s += format_double(std::imag(r.state.rho_egeg));
        s += ',';
        s += format_double(r.rates.Gamma);
        s += ',';
        s += format_double(r.rates.Gamma_bar);
        s += ',';
        s += format_double(r.adot);
        s += ',';
        s += format_double(r.xi);
        s += ',';
        s += format_double(std::real(r.chi));
        s += ',';
        s += format_double(std::imag(r.chi));
        s += '\n';
    }
    return s;
}

std::string spectrum_csv(const Spectrum& spectrum) {
    std::string s = "omega,Gamma\n";
    for (std::size_t i = 0; i < spectrum.omega.size(); ++i) {
        s += format_double(spectrum.omega[i]);
        s += ',';
        s += format_double(spectrum.values[i]);
        s += '\n';
    }
    return s;
}

std::string run_meta_json(const RunConfig& config, const RunStats& stats) {
    nlohmann::ordered_json j;
    j["artifact_version"] = kArtifactVersion;
    j["config"]["system"] = {
        {"gamma", config.system.gamma},
        {"C", config.system.C},
        {"rho", config.system.rho_size},
        {"Omega", config.system.Omega},
        {"Delta0", config.system.Delta0},
        {"delta_lamb", config.system.delta_lamb},
        {"gamma_bar", config.system.gamma_bar},
        {"delta_bar", config.system.delta_bar},
        {"q0_mode", config.system.q0_mode == Q0Mode::Taylor ? "taylor" : "exact"},
        {"enable_kk_shift", config.system.enable_kk_shift},
        {"bprime_equals_b", config.system.bprime_equals_b},
        {"eta", config.system.eta()},
        {"k0l", config.system.k0l()},
    };
    j["config"]["integrator"] = {
        {"rel_tol", config.integrator.rel_tol},
        {"abs_tol", config.integrator.abs_tol},
        {"dt_init", config.integrator.dt_init},
        {"dt_max_factor", config.integrator.dt_max_factor},
        {"t_end", config.integrator.t_end},
        {"t_out_start", config.integrator.t_out_start},
        {"points_per_decade", config.integrator.points_per_decade},
        {"stage_frozen_rates", config.integrator.stage_frozen_rates},
    };
    j["config"]["analysis"] = {
        {"omega_half_width", config.analysis.omega_half_width},
        {"omega_points", config.analysis.omega_points},
        {"alpha_list", config.analysis.alpha_list},
        {"plateau_max_log_slope", config.analysis.plateau.max_log_slope},
        {"plateau_min_decades", config.analysis.plateau.min_decades},
        {"plateau_fit_half_decades", config.analysis.plateau.fit_half_decades},
    };
    j["config"]["output"] = {{"directory", config.output.directory}};
    j["stats"] = {
        {"solver_iterations", stats.solver_iterations},
        {"rhs_evaluations", stats.rhs_evaluations},
        {"wall_seconds", stats.wall_seconds},
        {"records", stats.records},
    };
    return j.dump(2) + "\n";
}

}  // namespace coopdecay
