#include "coopdecay/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace coopdecay {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("bad boolean value for '" + key + "': " + v);
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty element in list '" + key + "'");
        out.push_back(parse_double(key, item));
    }
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += fmt(xs[i]);
    }
    return s;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "system" && section != "integrator" && section != "analysis" &&
                section != "output" && section != "sweep")
                throw ConfigError("unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError("key '" + key + "' outside any section");
        const std::string full = section + "." + key;
        if (!seen.insert(full).second) throw ConfigError("duplicate key '" + full + "'");

        if (section == "system") {
            if (key == "gamma") cfg.system.gamma = parse_double(full, val);
            else if (key == "C") cfg.system.C = parse_double(full, val);
            else if (key == "rho") cfg.system.rho_size = parse_double(full, val);
            else if (key == "Omega") cfg.system.Omega = parse_double(full, val);
            else if (key == "Delta0") cfg.system.Delta0 = parse_double(full, val);
            else if (key == "delta_lamb") cfg.system.delta_lamb = parse_double(full, val);
            else if (key == "gamma_bar") cfg.system.gamma_bar = parse_double(full, val);
            else if (key == "delta_bar") cfg.system.delta_bar = parse_double(full, val);
            else if (key == "q0_mode") {
                if (val == "taylor") cfg.system.q0_mode = Q0Mode::Taylor;
                else if (val == "exact") cfg.system.q0_mode = Q0Mode::Exact;
                else throw ConfigError("q0_mode must be taylor or exact, got: " + val);
            } else if (key == "enable_kk_shift") cfg.system.enable_kk_shift = parse_bool(full, val);
            else if (key == "bprime_equals_b") cfg.system.bprime_equals_b = parse_bool(full, val);
            else throw ConfigError("unknown key '" + full + "'");
        } else if (section == "integrator") {
            if (key == "rel_tol") cfg.integrator.rel_tol = parse_double(full, val);
            else if (key == "abs_tol") cfg.integrator.abs_tol = parse_double(full, val);
            else if (key == "dt_init") cfg.integrator.dt_init = parse_double(full, val);
            else if (key == "dt_max_factor") cfg.integrator.dt_max_factor = parse_double(full, val);
            else if (key == "t_end") cfg.integrator.t_end = parse_double(full, val);
            else if (key == "t_out_start") cfg.integrator.t_out_start = parse_double(full, val);
            else if (key == "points_per_decade") cfg.integrator.points_per_decade = parse_int(full, val);
            else if (key == "stage_frozen_rates") cfg.integrator.stage_frozen_rates = parse_bool(full, val);
            else throw ConfigError("unknown key '" + full + "'");
        } else if (section == "analysis") {
            if (key == "omega_half_width") cfg.analysis.omega_half_width = parse_double(full, val);
            else if (key == "omega_points") cfg.analysis.omega_points = parse_int(full, val);
            else if (key == "alpha_list") cfg.analysis.alpha_list = parse_list(full, val);
            else if (key == "plateau_max_log_slope") cfg.analysis.plateau.max_log_slope = parse_double(full, val);
            else if (key == "plateau_min_decades") cfg.analysis.plateau.min_decades = parse_double(full, val);
            else if (key == "plateau_fit_half_decades") cfg.analysis.plateau.fit_half_decades = parse_double(full, val);
            else throw ConfigError("unknown key '" + full + "'");
        } else if (section == "output") {
            if (key == "directory") cfg.output.directory = val;
            else throw ConfigError("unknown key '" + full + "'");
        } else {  // sweep
            if (key == "eta_list") cfg.sweep.eta_list = parse_list(full, val);
            else if (key == "c_list") cfg.sweep.c_list = parse_list(full, val);
            else if (key == "rho_list") cfg.sweep.rho_list = parse_list(full, val);
            else throw ConfigError("unknown key '" + full + "'");
        }
    }

    if (cfg.sweep.c_list.size() != cfg.sweep.rho_list.size())
        throw ConfigError("sweep.c_list and sweep.rho_list must have equal length");
    try {
        cfg.system.validate();
        cfg.integrator.validate();
    } catch (const InvariantViolation& e) {
        throw ConfigError(e.what());
    }
    if (cfg.analysis.omega_points < 8) throw ConfigError("analysis.omega_points too small");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream o;
    o << "[system]\n";
    o << "gamma = " << fmt(c.system.gamma) << "\n";
    o << "C = " << fmt(c.system.C) << "\n";
    o << "rho = " << fmt(c.system.rho_size) << "\n";
    o << "Omega = " << fmt(c.system.Omega) << "\n";
    o << "Delta0 = " << fmt(c.system.Delta0) << "\n";
    o << "delta_lamb = " << fmt(c.system.delta_lamb) << "\n";
    o << "gamma_bar = " << fmt(c.system.gamma_bar) << "\n";
    o << "delta_bar = " << fmt(c.system.delta_bar) << "\n";
    o << "q0_mode = " << (c.system.q0_mode == Q0Mode::Taylor ? "taylor" : "exact") << "\n";
    o << "enable_kk_shift = " << (c.system.enable_kk_shift ? "true" : "false") << "\n";
    o << "bprime_equals_b = " << (c.system.bprime_equals_b ? "true" : "false") << "\n";
    o << "\n[integrator]\n";
    o << "rel_tol = " << fmt(c.integrator.rel_tol) << "\n";
    o << "abs_tol = " << fmt(c.integrator.abs_tol) << "\n";
    o << "dt_init = " << fmt(c.integrator.dt_init) << "\n";
    o << "dt_max_factor = " << fmt(c.integrator.dt_max_factor) << "\n";
    o << "t_end = " << fmt(c.integrator.t_end) << "\n";
    o << "t_out_start = " << fmt(c.integrator.t_out_start) << "\n";
    o << "points_per_decade = " << c.integrator.points_per_decade << "\n";
    o << "stage_frozen_rates = " << (c.integrator.stage_frozen_rates ? "true" : "false") << "\n";
    o << "\n[analysis]\n";
    o << "omega_half_width = " << fmt(c.analysis.omega_half_width) << "\n";
    o << "omega_points = " << c.analysis.omega_points << "\n";
    o << "alpha_list = " << fmt_list(c.analysis.alpha_list) << "\n";
    o << "plateau_max_log_slope = " << fmt(c.analysis.plateau.max_log_slope) << "\n";
    o << "plateau_min_decades = " << fmt(c.analysis.plateau.min_decades) << "\n";
    o << "plateau_fit_half_decades = " << fmt(c.analysis.plateau.fit_half_decades) << "\n";
    o << "\n[output]\n";
    o << "directory = " << c.output.directory << "\n";
    if (!c.sweep.eta_list.empty() || !c.sweep.c_list.empty()) {
        o << "\n[sweep]\n";
        if (!c.sweep.eta_list.empty()) o << "eta_list = " << fmt_list(c.sweep.eta_list) << "\n";
        if (!c.sweep.c_list.empty()) {
            o << "c_list = " << fmt_list(c.sweep.c_list) << "\n";
            o << "rho_list = " << fmt_list(c.sweep.rho_list) << "\n";
        }
    }
    return o.str();
}

}  // namespace coopdecay
