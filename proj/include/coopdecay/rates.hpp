#ifndef COOPDECAY_RATES_HPP
#define COOPDECAY_RATES_HPP

#include <span>
#include <string>

#include "coopdecay/model.hpp"
#include "coopdecay/sources.hpp"

namespace coopdecay {

/// Outcome of the per-step self-consistency solve for Gamma.
struct GammaSolveReport {
    double Gamma = 0.0;
    int iterations = 0;
    double residual = 0.0;
    std::string method;  // "fixed-point" or "bisection-fallback"
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

struct RateCandidates {
    double Gamma_candidate = 0.0;  // A1 + B
    double Gamma_bar = 0.0;        // A2 + B'
    double A1 = 0.0;
    double A2 = 0.0;
    double B = 0.0;
    MediumResponse medium;
};

/// One-atom contribution, gamma^2*C*rho * P1 * (e^R - 1)/R.
double compute_A1(double P1, double R, const SystemParams& params);

/// Two-atom contribution from the squared volume integral of the propagator.
double compute_B(double P2, double R, double rho_tilde, const SystemParams& params);

/// Inter-atom one-source contribution; radial quadrature of the paired
/// propagator kernel, symmetrized by taking the real part.
double compute_A2(double P1, complex q0_over_k0, const SystemParams& params);

/// Same quadrature machinery with the kernel replaced by |kernel|^2; must
/// reproduce the closed-form compute_A1 (normalization oracle).
double compute_A1_via_quadrature(double P1, complex q0_over_k0, const SystemParams& params);

/// Evaluates sources at Gamma_guess and assembles the rate candidates.
RateCandidates assemble_rates(const AtomicState& state, double omega,
                              const SystemParams& params, double Gamma_guess,
                              double Delta = 0.0);

/// As assemble_rates but skips the A2 quadrature (Gamma_bar left at B');
/// used for spectrum evaluation where only A1 + B is needed per omega.
RateCandidates assemble_rates_no_a2(const AtomicState& state, double omega,
                                    const SystemParams& params, double Gamma_guess,
                                    double Delta = 0.0);

/// Solves Gamma = A1(Gamma) + B(Gamma) at omega = 0. Damped fixed point with
/// bisection fallback; warm_start < 0 requests a cold bracket start.
GammaSolveReport solve_gamma(const AtomicState& state, const SystemParams& params,
                             double warm_start = -1.0, double Delta = 0.0);

/// Principal-value transform of a sampled spectrum (uniform grid) at
/// omega_eval; singularity-subtraction quadrature.
double kramers_kronig(std::span<const double> omega, std::span<const double> gamma_of_omega,
                      double omega_eval);

/// Outer damped fixed point for the induced light shift: Delta such that
/// Delta = KK[Gamma(., Delta)](2*Delta + delta_lamb).
double solve_light_shift(const AtomicState& state, const SystemParams& params,
                         double Gamma0, double half_width, int grid_points);

}  // namespace coopdecay

#endif
