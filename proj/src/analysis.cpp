#include "coopdecay/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace coopdecay {

std::vector<double> make_omega_grid(double half_width, int points) {
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = -half_width + 2.0 * half_width * i / (points - 1);
    return grid;
}

Spectrum instantaneous_spectrum(const AtomicState& state, const RateSet& rates,
                                const SystemParams& params,
                                const std::vector<double>& omega_grid, bool serial) {
    Spectrum sp;
    sp.omega = omega_grid;
    sp.values.assign(omega_grid.size(), 0.0);
    const auto n = static_cast<long>(omega_grid.size());

    auto eval_one = [&](long i) {
        const RateCandidates c =
            assemble_rates_no_a2(state, omega_grid[i], params, rates.Gamma, rates.Delta);
        sp.values[i] = c.Gamma_candidate;
    };
    if (serial) {
        for (long i = 0; i < n; ++i) eval_one(i);
    } else {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) eval_one(i);
    }

    double peak = 0.0;
    for (double v : sp.values) peak = std::max(peak, v);
    for (double& v : sp.values) {
        if (v < 0.0) {
            if (v < -1e-12 * std::max(peak, 1.0))
                throw NegativeSpectralDensity("spectrum value below -1e-12 of peak");
            v = 0.0;
        }
    }
    sp.tails_ok = peak == 0.0 || (sp.values.front() < 1e-4 * peak &&
                                  sp.values.back() < 1e-4 * peak);
    return sp;
}

double fwhm(const Spectrum& spectrum) {
    const auto& w = spectrum.omega;
    const auto& v = spectrum.values;
    const std::size_t ipk =
        std::distance(v.begin(), std::max_element(v.begin(), v.end()));
    const double half = v[ipk] / 2.0;
    if (!(v[ipk] > 0.0)) throw NoHalfCrossing("fwhm: spectrum has no positive peak");

    auto cross = [&](bool left) -> double {
        if (left) {
            for (std::size_t i = ipk; i-- > 0;) {
                if (v[i] < half) {
                    const double f = (half - v[i]) / (v[i + 1] - v[i]);
                    return w[i] + f * (w[i + 1] - w[i]);
                }
            }
        } else {
            for (std::size_t i = ipk + 1; i < v.size(); ++i) {
                if (v[i] < half) {
                    const double f = (v[i - 1] - half) / (v[i - 1] - v[i]);
                    return w[i - 1] + f * (w[i] - w[i - 1]);
                }
            }
        }
        throw NoHalfCrossing("fwhm: tails never fall below half maximum");
    };
    return cross(false) - cross(true);
}

SubradianceMetrics subradiance_metrics(const TimeSeries& series, const SystemParams& params,
                                       const PlateauThresholds& th) {
    SubradianceMetrics m;
    // restrict to the post-burst decay: before the intensity peak the flat
    // xi region is superradiant, not subradiant
    double t_peak = 0.0, peak = -std::numeric_limits<double>::infinity();
    for (const auto& r : series.records)
        if (-r.adot > peak) {
            peak = -r.adot;
            t_peak = r.t;
        }
    for (const auto& r : series.records)
        if (r.t >= t_peak && r.t > 0.0 && r.xi > 0.0) {
            m.t.push_back(r.t);
            m.xi.push_back(r.xi);
        }
    const std::size_t n = m.t.size();
    if (n < 4) throw NoPlateau("subradiance_metrics: too few usable points");

    std::vector<double> lt(n), lx(n);
    for (std::size_t i = 0; i < n; ++i) {
        lt[i] = std::log10(m.t[i]);
        lx[i] = std::log10(m.xi[i]);
    }

    // local log-log slope by least squares over a +-fit_half_decades window
    std::vector<double> slope(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i, hi = i;
        while (lo > 0 && lt[i] - lt[lo - 1] <= th.fit_half_decades) --lo;
        while (hi + 1 < n && lt[hi + 1] - lt[i] <= th.fit_half_decades) ++hi;
        const std::size_t cnt = hi - lo + 1;
        if (cnt < 2) {
            slope[i] = 0.0;
            continue;
        }
        double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            st += lt[j];
            sx += lx[j];
            stt += lt[j] * lt[j];
            stx += lt[j] * lx[j];
        }
        const double denom = cnt * stt - st * st;
        slope[i] = (denom != 0.0) ? (cnt * stx - st * sx) / denom : 0.0;
    }

    // longest contiguous window with a flat slope
    std::size_t best_lo = 0, best_hi = 0;
    double best_span = 0.0;
    std::size_t i = 0;
    while (i < n) {
        if (std::abs(slope[i]) >= th.max_log_slope) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && std::abs(slope[j + 1]) < th.max_log_slope) ++j;
        const double span = lt[j] - lt[i];
        if (span > best_span) {
            best_span = span;
            best_lo = i;
            best_hi = j;
        }
        i = j + 1;
    }
    if (best_span < th.min_decades)
        throw NoPlateau("subradiance_metrics: no plateau spanning 0.5 decades");

    m.plateau_t_lo = m.t[best_lo];
    m.plateau_t_hi = m.t[best_hi];
    m.plateau_decades = best_span;
    const double eta = params.eta();
    double acc = 0.0;
    for (std::size_t j = best_lo; j <= best_hi; ++j) acc += 1.0 / (m.xi[j] * eta);
    m.mean_inv_xi_eta = acc / static_cast<double>(best_hi - best_lo + 1);
    return m;
}

double phase_angle(const Spectrum& spectrum, double dt_lag) {
    const auto& w = spectrum.omega;
    const auto& v = spectrum.values;
    complex acc{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double h = w[i + 1] - w[i];
        const complex f0 = v[i] * std::exp(complex(0.0, -w[i] * dt_lag));
        const complex f1 = v[i + 1] * std::exp(complex(0.0, -w[i + 1] * dt_lag));
        acc += 0.5 * h * (f0 + f1);
    }
    double phi = -std::arg(acc);
    if (phi <= -M_PI) phi += 2.0 * M_PI;  // keep phi in (-pi, pi]
    return phi;
}

PhaseTrace phase_trace(const TimeSeries& series, const SystemParams& params,
                       double alpha, const std::vector<double>& omega_grid) {
    PhaseTrace tr;
    tr.alpha = alpha;
    for (const auto& r : series.records) {
        if (r.t <= 0.0) continue;
        const Spectrum sp = instantaneous_spectrum(r.state, r.rates, params, omega_grid);
        tr.t.push_back(r.t);
        tr.phi.push_back(phase_angle(sp, alpha * r.t));
    }
    return tr;
}

Q0Comparison compare_q0_modes(const SystemParams& params, const IntegratorConfig& config) {
    Q0Comparison cmp;
    SystemParams pt = params, pe = params;
    pt.q0_mode = Q0Mode::Taylor;
    pe.q0_mode = Q0Mode::Exact;
    cmp.taylor = run(pt, config);
    cmp.exact = run(pe, config);

    const std::size_t n = std::min(cmp.taylor.size(), cmp.exact.size());
    for (std::size_t i = 0; i < n; ++i)
        cmp.max_abs_da = std::max(cmp.max_abs_da,
                                  std::abs(cmp.taylor[i].state.a - cmp.exact[i].state.a));

    // |chi| at the first downward crossing of a = 0.95, from the exact-mode run
    for (std::size_t i = 1; i < cmp.exact.size(); ++i) {
        const double a0 = cmp.exact[i - 1].state.a, a1 = cmp.exact[i].state.a;
        if (a0 >= 0.95 && a1 < 0.95) {
            const double f = (a0 - 0.95) / (a0 - a1);
            const double c0 = std::abs(cmp.exact[i - 1].chi);
            const double c1 = std::abs(cmp.exact[i].chi);
            cmp.chi_at_a095 = c0 + f * (c1 - c0);
            break;
        }
    }
    return cmp;
}

}  // namespace coopdecay
