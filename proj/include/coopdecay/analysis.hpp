#ifndef COOPDECAY_ANALYSIS_HPP
#define COOPDECAY_ANALYSIS_HPP

#include "coopdecay/dynamics.hpp"

namespace coopdecay {

/// Instantaneous emission spectrum Gamma(omega) at one snapshot.
struct Spectrum {
    double t = 0.0;
    std::vector<double> omega;   // uniform, symmetric, units of gamma
    std::vector<double> values;  // Gamma(omega, t) >= 0
    bool tails_ok = true;        // tails < 1e-4 of peak
};

struct PlateauThresholds {
    double max_log_slope = 0.1;     // |d log xi / d log t| bound
    double min_decades = 0.5;       // minimum plateau extent
    double fit_half_decades = 0.15; // half-width of the local slope fit
};

struct SubradianceMetrics {
    std::vector<double> t;   // times with usable xi > 0
    std::vector<double> xi;
    double plateau_t_lo = 0.0;
    double plateau_t_hi = 0.0;
    double plateau_decades = 0.0;
    double mean_inv_xi_eta = 0.0;  // mean of 1/(xi*eta) over the plateau
};

struct PhaseTrace {
    double alpha = 0.0;  // lag constant, dt_lag = alpha * t
    std::vector<double> t;
    std::vector<double> phi;  // radians, (-pi, pi]
};

struct Q0Comparison {
    TimeSeries taylor;
    TimeSeries exact;
    double max_abs_da = 0.0;   // sup-norm population difference on the shared grid
    double chi_at_a095 = 0.0;  // |chi| when a first crosses 0.95 (exact mode)
};

std::vector<double> make_omega_grid(double half_width, int points);

/// Gamma(omega) with Gamma_f anchored at the solved omega = 0 rates.
/// Parallel over grid points; `serial` selects the reference evaluator.
Spectrum instantaneous_spectrum(const AtomicState& state, const RateSet& rates,
                                const SystemParams& params,
                                const std::vector<double>& omega_grid,
                                bool serial = false);

/// Full width at half maximum by linear interpolation around the global peak.
double fwhm(const Spectrum& spectrum);

SubradianceMetrics subradiance_metrics(const TimeSeries& series, const SystemParams& params,
                                       const PlateauThresholds& thresholds = {});

/// -arg of the trapezoid estimate of \int e^{-i omega dt_lag} Gamma(omega) domega.
double phase_angle(const Spectrum& spectrum, double dt_lag);

/// Phase trace phi(t) with adaptive lag dt_lag = alpha*t over a whole run.
PhaseTrace phase_trace(const TimeSeries& series, const SystemParams& params,
                       double alpha, const std::vector<double>& omega_grid);

Q0Comparison compare_q0_modes(const SystemParams& params, const IntegratorConfig& config);

}  // namespace coopdecay

#endif
