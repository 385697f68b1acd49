#ifndef COOPDECAY_SOURCES_HPP
#define COOPDECAY_SOURCES_HPP

#include "coopdecay/model.hpp"

namespace coopdecay {

/// Dimensionless source-function values at one (state, rates, omega) point.
/// Prefactors carrying the dipole moment and particle density are stripped;
/// everything is in units of gamma.
struct SourceEval {
    double P1 = 0.0;          // one-atom source
    double P2 = 0.0;          // two-atom source
    complex Pret{0.0, 0.0};   // retarded source
};

/// Dressed-propagator parameters derived from Pret.
struct MediumResponse {
    complex chi{0.0, 0.0};         // expansion parameter gamma*C*Pret
    complex q0_over_k0{1.0, 0.0};  // medium wavenumber over vacuum wavenumber
    double R = 0.0;                // gain exponent across the sample
    double rho_tilde = 0.0;        // phase accumulated across the sample
};

/// Retarded source function (dimensionless).
complex eval_P1ret(const AtomicState& state, const RateSet& rates, double omega,
                   const SystemParams& params);

/// One- and two-atom sources (dimensionless, real).
void eval_P1_P2(const AtomicState& state, const RateSet& rates, double omega,
                const SystemParams& params, double& P1, double& P2);

SourceEval eval_sources(const AtomicState& state, const RateSet& rates, double omega,
                        const SystemParams& params);

MediumResponse medium_response(complex Pret, const SystemParams& params);

}  // namespace coopdecay

#endif
