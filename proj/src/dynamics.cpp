#include "coopdecay/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace coopdecay {

namespace {

constexpr complex kI{0.0, 1.0};
constexpr int kNVars = 9;
using Vec = std::array<double, kNVars>;

Vec pack(const AtomicState& s) {
    return {s.a,
            s.n,
            s.x,
            std::real(s.rho_eg),
            std::imag(s.rho_eg),
            std::real(s.m_eg),
            std::imag(s.m_eg),
            std::real(s.rho_egeg),
            std::imag(s.rho_egeg)};
}

AtomicState unpack(const Vec& v) {
    AtomicState s;
    s.a = v[0];
    s.n = v[1];
    s.x = v[2];
    s.rho_eg = complex(v[3], v[4]);
    s.m_eg = complex(v[5], v[6]);
    s.rho_egeg = complex(v[7], v[8]);
    return s;
}

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,   0.0,           7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct RunState {
    double last_Gamma = -1.0;  // warm start; < 0 means cold bracket solve
    long solver_iterations = 0;
    long rhs_evaluations = 0;
};

RateSet solve_rates(const AtomicState& state, const SystemParams& params, RunState& rs) {
    const GammaSolveReport rep = solve_gamma(state, params, rs.last_Gamma);
    rs.last_Gamma = rep.Gamma;
    rs.solver_iterations += rep.iterations;
    const RateCandidates cand = assemble_rates(state, 0.0, params, rep.Gamma);
    RateSet rates;
    rates.Gamma = rep.Gamma;
    rates.Gamma_bar = cand.Gamma_bar;
    rates.Delta = 0.0;
    if (params.enable_kk_shift) {
        const double hw = 40.0 * (rep.Gamma + params.gamma);
        rates.Delta = solve_light_shift(state, params, rep.Gamma, hw, 4097);
    }
    return rates;
}

}  // namespace

AtomicState rhs_driven(const AtomicState& s, const RateSet& r, const SystemParams& p) {
    const double g = p.gamma, gb = p.gamma_bar, Om = p.Omega;
    const double G = r.Gamma, Gb = r.Gamma_bar;
    const double dt = r.delta_tilde(p);
    const complex reg = s.rho_eg, m = s.m_eg, ee = s.rho_egeg;

    AtomicState d;
    d.a = G - (g + 2.0 * G) * s.a - gb * s.x + 2.0 * Om * std::imag(reg);
    d.n = 2.0 * g - 2.0 * (g + 2.0 * G) * s.n - 4.0 * g * s.a +
          4.0 * (gb + 2.0 * Gb) * s.x + 8.0 * Om * std::imag(m);
    d.x = -(g + 2.0 * G) * s.x + 0.5 * (gb + 2.0 * Gb) * s.n + gb * s.a - 0.5 * gb -
          2.0 * Om * std::imag(m);
    d.rho_eg = -(0.5 * (g + 2.0 * G) + kI * dt) * reg +
               0.5 * complex(gb, 2.0 * p.delta_bar) * m - kI * Om * (2.0 * s.a - 1.0);
    d.m_eg = -(1.5 * (g + 2.0 * G) + gb + 2.0 * Gb + kI * dt) * m -
             complex(g + 0.5 * gb, -p.delta_bar) * reg -
             kI * Om * (s.n - 2.0 * s.x + 2.0 * ee);
    d.rho_egeg = -((g + 2.0 * G) + 2.0 * kI * dt) * ee - 2.0 * kI * Om * m;
    return d;
}

Deriv3 rhs_nondriven(const AtomicState& s, const RateSet& r, const SystemParams& p) {
    const double g = p.gamma, G = r.Gamma, Gb = r.Gamma_bar;
    Deriv3 d;
    d.da = -(2.0 * G + g) * s.a + G;
    d.dn = -2.0 * (2.0 * G + g) * s.n - 2.0 * g * (2.0 * s.a - 1.0) + 8.0 * Gb * s.x;
    d.dx = -(2.0 * G + g) * s.x + Gb * s.n;
    return d;
}

std::vector<double> output_grid(const IntegratorConfig& config) {
    std::vector<double> out;
    const double lg0 = std::log10(config.t_out_start);
    for (int i = 0;; ++i) {
        const double t = std::pow(10.0, lg0 + static_cast<double>(i) / config.points_per_decade);
        if (t > config.t_end * (1.0 + 1e-12)) break;
        out.push_back(t);
    }
    return out;
}

namespace {

TimeSeries integrate(const SystemParams& params, const IntegratorConfig& config) {
    params.validate();
    config.validate();
    const double g = params.gamma;

    RunState rs;
    Vec y = pack(AtomicState::inverted());
    double t = 0.0;

    TimeSeries series;
    auto record = [&](double tr, const Vec& yv) {
        const AtomicState s = unpack(yv);
        const RateSet rates = solve_rates(s, params, rs);
        const AtomicState d = rhs_driven(s, rates, params);
        const SourceEval src = eval_sources(s, rates, 0.0, params);
        const MediumResponse med = medium_response(src.Pret, params);
        TimeSeriesRecord rec;
        rec.t = tr;
        rec.state = s;
        rec.rates = rates;
        rec.adot = d.a;
        rec.xi = (s.a != 0.0) ? -d.a / s.a : 0.0;
        rec.chi = med.chi;
        series.append(rec);
        return rates;
    };

    RateSet rates0 = record(0.0, y);
    const std::vector<double> grid = output_grid(config);
    std::size_t next_out = 0;

    std::array<Vec, 7> k;
    double dt = config.dt_init;
    RateSet step_rates = rates0;

    while (t < config.t_end) {
        // step-size cap from the current rates
        const double cap = config.dt_max_factor /
                           (step_rates.Gamma + g + params.Omega +
                            std::abs(step_rates.delta_tilde(params)));
        dt = std::min(dt, cap);
        bool hit_output = false;
        if (next_out < grid.size() && t + dt >= grid[next_out] - 1e-15 * grid[next_out]) {
            dt = grid[next_out] - t;
            hit_output = true;
        } else if (t + dt > config.t_end) {
            dt = config.t_end - t;
        }
        if (dt < 1e-16 / g)
            throw StepSizeUnderflow("integrator step size underflow");

        // stage evaluations
        for (int st = 0; st < 7; ++st) {
            Vec ys = y;
            for (int j = 0; j < st; ++j)
                for (int i = 0; i < kNVars; ++i) ys[i] += dt * kA[st][j] * k[j][i];
            const AtomicState ss = unpack(ys);
            const RateSet rr = (config.stage_frozen_rates && st > 0)
                                   ? step_rates
                                   : (st == 0 ? step_rates : solve_rates(ss, params, rs));
            k[st] = pack(rhs_driven(ss, rr, params));
            ++rs.rhs_evaluations;
        }

        Vec y5 = y, y4 = y;
        for (int st = 0; st < 7; ++st)
            for (int i = 0; i < kNVars; ++i) {
                y5[i] += dt * kB5[st] * k[st][i];
                y4[i] += dt * kB4[st] * k[st][i];
            }

        double err = 0.0;
        for (int i = 0; i < kNVars; ++i) {
            const double sc = config.abs_tol +
                              config.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double e = (y5[i] - y4[i]) / sc;
            err += e * e;
        }
        err = std::sqrt(err / kNVars);

        if (err <= 1.0) {
            t += dt;
            y = y5;
            unpack(y).check_bounds();
            if (hit_output && next_out < grid.size() &&
                std::abs(t - grid[next_out]) <= 1e-12 * grid[next_out]) {
                step_rates = record(grid[next_out], y);
                ++next_out;
            } else {
                step_rates = solve_rates(unpack(y), params, rs);
            }
        }
        const double fac = std::clamp(
            0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        dt *= fac;
    }
    series.solver_iterations = rs.solver_iterations;
    series.rhs_evaluations = rs.rhs_evaluations;
    return series;
}

}  // namespace

TimeSeries run(const SystemParams& params, const IntegratorConfig& config) {
    return integrate(params, config);
}

TimeSeries run_driven(const SystemParams& params, const IntegratorConfig& config) {
    return integrate(params, config);
}

}  // namespace coopdecay
