#ifndef COOPDECAY_MODEL_HPP
#define COOPDECAY_MODEL_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "coopdecay/errors.hpp"

namespace coopdecay {

using complex = std::complex<double>;

enum class Q0Mode { Taylor, Exact };

/// Physical and numerical configuration in reduced units: gamma = 1 sets the
/// clock, all rates are in units of gamma and times in units of 1/gamma.
struct SystemParams {
    double gamma = 1.0;      // vacuum spontaneous decay rate
    double C = 0.0;          // particle number within a cubed wavelength
    double rho_size = 1.0;   // normalized sample size, pi*l/lambda
    double Omega = 0.0;      // Rabi frequency of the external drive
    double Delta0 = 0.0;     // drive detuning
    double delta_lamb = 0.0; // free-space Lamb shift
    double gamma_bar = 0.0;  // inter-atom spontaneous decay rate
    double delta_bar = 0.0;  // inter-atom spontaneous shift
    Q0Mode q0_mode = Q0Mode::Taylor;
    bool enable_kk_shift = false;
    bool bprime_equals_b = true;  // two-atom-source contribution to Gamma_bar

    double eta() const { return C * rho_size; }
    double k0l() const { return 2.0 * rho_size; }

    void validate() const {
        if (!(gamma > 0.0)) throw InvariantViolation("SystemParams: gamma must be > 0");
        if (!(C >= 0.0)) throw InvariantViolation("SystemParams: C must be >= 0");
        if (!(rho_size > 0.0)) throw InvariantViolation("SystemParams: rho_size must be > 0");
        if (!(Omega >= 0.0)) throw InvariantViolation("SystemParams: Omega must be >= 0");
    }
};

/// Mean-field variables of the effective two-atom density matrix.
struct AtomicState {
    double a = 0.0;  // average upper-state population
    double n = 0.0;  // effective two-atom inversion <sz1 sz2>
    double x = 0.0;  // symmetric coherence (rho_eg,ge + rho_ge,eg)/2
    complex rho_eg{0.0, 0.0};    // single-atom coherence
    complex m_eg{0.0, 0.0};      // <sigma1 sz2>
    complex rho_egeg{0.0, 0.0};  // <sigma1 sigma2>

    static constexpr double kBoundTol = 1e-9;

    // Hard population/inversion bounds; throws on violation.
    void check_bounds() const {
        if (a < -kBoundTol || a > 1.0 + kBoundTol)
            throw InvariantViolation("AtomicState: a out of [0,1]");
        if (n < -1.0 - kBoundTol || n > 1.0 + kBoundTol)
            throw InvariantViolation("AtomicState: n out of [-1,1]");
    }

    // Cauchy-Schwarz bound on the coherence; monitored, not fatal.
    bool coherence_bound_ok() const {
        double cap = (a > 0.0 && a < 1.0) ? std::sqrt(a * (1.0 - a)) : 0.0;
        return std::abs(x) <= cap + 1e-6;
    }

    static AtomicState inverted() {
        AtomicState s;
        s.a = 1.0;
        s.n = 1.0;
        return s;
    }
};

/// Self-consistent rates and shifts at one instant.
struct RateSet {
    double Gamma = 0.0;      // single-atom induced rate at omega = 0
    double Gamma_bar = 0.0;  // inter-atom rate at omega = 0
    double Delta = 0.0;      // induced light shift (0 unless enable_kk_shift)

    double Gamma_f(const SystemParams& p) const { return Gamma + p.gamma / 2.0; }
    double delta_tilde(const SystemParams& p) const {
        return p.delta_lamb + 2.0 * Delta + p.Delta0;
    }

    void check(const SystemParams& p) const {
        if (Gamma < 0.0) throw InvariantViolation("RateSet: Gamma must be >= 0");
        if (!(Gamma_f(p) >= p.gamma / 2.0))
            throw InvariantViolation("RateSet: Gamma_f below gamma/2");
    }
    bool interatom_bound_ok() const {
        return std::abs(Gamma_bar) <= Gamma + 1e-6 * Gamma;
    }
};

struct TimeSeriesRecord {
    double t = 0.0;
    AtomicState state;
    RateSet rates;
    double adot = 0.0;  // da/dt from the RHS
    double xi = 0.0;    // -adot/a
    complex chi{0.0, 0.0};
};

struct TimeSeries {
    std::vector<TimeSeriesRecord> records;
    long solver_iterations = 0;  // accumulated Gamma-solve iterations
    long rhs_evaluations = 0;

    void append(const TimeSeriesRecord& r) {
        if (!records.empty() && !(r.t > records.back().t))
            throw InvariantViolation("TimeSeries: t must be strictly increasing");
        records.push_back(r);
    }
    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }
    const TimeSeriesRecord& operator[](std::size_t i) const { return records[i]; }
    const TimeSeriesRecord& back() const { return records.back(); }
};

struct DerivedQuantities {
    double eta;
    double k0l;
};

inline DerivedQuantities derived_quantities(const SystemParams& p) {
    p.validate();
    return {p.eta(), p.k0l()};
}

}  // namespace coopdecay

#endif
