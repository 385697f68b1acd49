#include "coopdecay/sources.hpp"

namespace coopdecay {

namespace {

constexpr double kDenominatorFloor = 1e-300;
constexpr complex kI{0.0, 1.0};

// Shared denominator of both source functions:
//   (2 Gf - i w)((Gf - i w)^2 + dt^2) + 4 Omega^2 (Gf - i w)
complex source_denominator(double Gf, double dt, double Omega, double omega) {
    const complex z = complex(Gf, -omega);
    const complex d = (2.0 * Gf - kI * omega) * (z * z + dt * dt) + 4.0 * Omega * Omega * z;
    if (std::abs(d) < kDenominatorFloor)
        throw DenominatorUnderflow("source function denominator underflow");
    return d;
}

double source_bracket(complex A0, complex Rge0, complex Reg0, double Gf, double dt,
                      double Omega, double omega) {
    const complex num = 2.0 * Omega * A0 * (kI * Gf + omega - dt) +
                        Rge0 * (2.0 * Gf - kI * omega) * (complex(Gf, -omega) + kI * dt) +
                        2.0 * Omega * Omega * (Reg0 + Rge0);
    return std::real(num / source_denominator(Gf, dt, Omega, omega));
}

}  // namespace

complex eval_P1ret(const AtomicState& state, const RateSet& rates, double omega,
                   const SystemParams& params) {
    const double Gf = rates.Gamma_f(params);
    const double dt = rates.delta_tilde(params);
    const double Om = params.Omega;
    const double two_a_1 = 2.0 * state.a - 1.0;
    const complex num =
        two_a_1 * ((Gf + kI * dt - kI * omega) * (2.0 * Gf - kI * omega) + 2.0 * Om * Om) +
        2.0 * Om * state.rho_eg * complex(dt - omega, -Gf);
    return num / source_denominator(Gf, dt, Om, omega);
}

void eval_P1_P2(const AtomicState& state, const RateSet& rates, double omega,
                const SystemParams& params, double& P1, double& P2) {
    const double Gf = rates.Gamma_f(params);
    const double dt = rates.delta_tilde(params);
    const double Om = params.Omega;
    const complex reg = state.rho_eg;
    const complex rge = std::conj(reg);

    // one-atom coefficients
    const complex A0_1 = -state.a * reg;
    const complex Rge0_1 = state.a - reg * rge;
    const complex Reg0_1 = -reg * reg;
    // two-atom coefficients
    const complex A0_2 = (reg + state.m_eg) / 2.0 - state.a * reg;
    const complex Rge0_2 = state.x - reg * rge;
    const complex Reg0_2 = state.rho_egeg - reg * reg;

    P1 = source_bracket(A0_1, Rge0_1, Reg0_1, Gf, dt, Om, omega);
    P2 = source_bracket(A0_2, Rge0_2, Reg0_2, Gf, dt, Om, omega);
}

SourceEval eval_sources(const AtomicState& state, const RateSet& rates, double omega,
                        const SystemParams& params) {
    SourceEval s;
    eval_P1_P2(state, rates, omega, params, s.P1, s.P2);
    s.Pret = eval_P1ret(state, rates, omega, params);
    return s;
}

MediumResponse medium_response(complex Pret, const SystemParams& params) {
    MediumResponse m;
    m.chi = params.gamma * params.C * Pret;
    if (params.q0_mode == Q0Mode::Taylor) {
        m.q0_over_k0 = 1.0 + kI * m.chi / 2.0;
    } else {
        // principal branch, q0 -> k0 as chi -> 0
        complex q = std::sqrt(1.0 + kI * m.chi);
        if (std::real(q) < 0.0) q = -q;
        m.q0_over_k0 = q;
    }
    // Gain exponent q''l and phase q'l across the sample. In Taylor mode these
    // coincide with gamma*C*rho*Re[Pret] and 2*rho - gamma*C*rho*Im[Pret].
    m.R = 2.0 * params.rho_size * std::imag(m.q0_over_k0);
    m.rho_tilde = 2.0 * params.rho_size * std::real(m.q0_over_k0);
    return m;
}

}  // namespace coopdecay
