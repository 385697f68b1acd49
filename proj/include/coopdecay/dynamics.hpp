#ifndef COOPDECAY_DYNAMICS_HPP
#define COOPDECAY_DYNAMICS_HPP

#include "coopdecay/model.hpp"
#include "coopdecay/rates.hpp"

namespace coopdecay {

struct IntegratorConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double dt_init = 1e-6;
    double dt_max_factor = 0.05;  // dt <= factor/(Gamma+gamma+Omega+|dt~|)
    double t_end = 1e2;
    double t_out_start = 1e-5;    // first point of the log output grid
    int points_per_decade = 40;
    bool stage_frozen_rates = false;  // re-solve Gamma once per step, not per stage

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw InvariantViolation("IntegratorConfig: tolerances must be > 0");
        if (!(dt_init > 0.0) || !(dt_max_factor > 0.0))
            throw InvariantViolation("IntegratorConfig: step sizes must be > 0");
        if (!(t_end > t_out_start) || !(t_out_start > 0.0))
            throw InvariantViolation("IntegratorConfig: need 0 < t_out_start < t_end");
        if (points_per_decade < 1)
            throw InvariantViolation("IntegratorConfig: points_per_decade < 1");
    }
};

struct Deriv3 {
    double da = 0.0;
    double dn = 0.0;
    double dx = 0.0;
};

/// Full driven six-variable right-hand side; pure algebra.
AtomicState rhs_driven(const AtomicState& state, const RateSet& rates,
                       const SystemParams& params);

/// Non-driven three-variable reduction.
Deriv3 rhs_nondriven(const AtomicState& state, const RateSet& rates,
                     const SystemParams& params);

/// Integrates from the fully inverted state {a=1, n=1, coherences 0}.
TimeSeries run(const SystemParams& params, const IntegratorConfig& config);

/// Same loop on the six-variable system with the drive active.
TimeSeries run_driven(const SystemParams& params, const IntegratorConfig& config);

/// Log-spaced output times (prepended t = 0 is added by run itself).
std::vector<double> output_grid(const IntegratorConfig& config);

}  // namespace coopdecay

#endif
