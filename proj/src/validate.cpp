#include <cmath>
#include <sstream>

#include "coopdecay/analysis.hpp"
#include "coopdecay/commands.hpp"
#include "coopdecay/output.hpp"

namespace coopdecay {

namespace {

std::string detail_rel(double err, double tol) {
    std::ostringstream o;
    o << "max rel err " << err << ", tol " << tol;
    return o.str();
}

ValidationResult check_vacuum_limit() {
    ValidationResult r{"vacuum-limit a(t)=exp(-t)", false, ""};
    SystemParams p;
    p.C = 0.0;
    IntegratorConfig ic;
    ic.t_end = 5.0;
    const TimeSeries s = run(p, ic);
    double err = 0.0;
    for (const auto& rec : s.records)
        err = std::max(err, std::abs(rec.state.a - std::exp(-rec.t)) / std::exp(-rec.t));
    r.pass = err < 1e-6;
    r.detail = detail_rel(err, 1e-6);
    return r;
}

ValidationResult check_vacuum_factorization() {
    ValidationResult r{"vacuum factorization n=(2a-1)^2", false, ""};
    SystemParams p;
    p.C = 0.0;
    IntegratorConfig ic;
    ic.t_end = 5.0;
    const TimeSeries s = run(p, ic);
    double err = 0.0;
    for (const auto& rec : s.records) {
        const double want = (2.0 * rec.state.a - 1.0) * (2.0 * rec.state.a - 1.0);
        err = std::max(err, std::abs(rec.state.n - want));
    }
    r.pass = err < 1e-8;
    r.detail = detail_rel(err, 1e-8);
    return r;
}

ValidationResult check_quadratic_gamma() {
    ValidationResult r{"quadratic Gamma closed form at a=0.5", false, ""};
    SystemParams p;
    p.C = 10.0;
    p.rho_size = 10.0;
    AtomicState st;
    st.a = 0.5;
    st.n = 0.0;
    st.x = 0.0;
    const double expected = -0.25 + std::sqrt(0.0625 + 50.0);
    const GammaSolveReport rep = solve_gamma(st, p);
    const double err = std::abs(rep.Gamma - expected) / expected;
    r.pass = err < 1e-8;
    r.detail = detail_rel(err, 1e-8);
    return r;
}

ValidationResult check_a2_normalization() {
    ValidationResult r{"A2 normalization identity", false, ""};
    double err = 0.0;
    for (Q0Mode mode : {Q0Mode::Taylor, Q0Mode::Exact}) {
        SystemParams p;
        p.C = 10.0;
        p.rho_size = 10.0;
        p.q0_mode = mode;
        AtomicState st;
        st.a = 0.8;
        st.n = 0.4;
        st.x = 0.05;
        RateSet guess;
        guess.Gamma = 5.0;
        const SourceEval src = eval_sources(st, guess, 0.0, p);
        const MediumResponse med = medium_response(src.Pret, p);
        const double closed = compute_A1(src.P1, med.R, p);
        const double quad = compute_A1_via_quadrature(src.P1, med.q0_over_k0, p);
        err = std::max(err, std::abs(quad - closed) / std::abs(closed));
    }
    r.pass = err < 1e-6;
    r.detail = detail_rel(err, 1e-6);
    return r;
}

ValidationResult check_kk_lorentzian() {
    ValidationResult r{"Kramers-Kronig Lorentzian", false, ""};
    const double w = 1.0;
    const int n = (1 << 22) + 1;
    const double W = 2000.0 * w;
    std::vector<double> grid(n), vals(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = -W + 2.0 * W * i / (n - 1);
        vals[i] = w * w / (w * w + grid[i] * grid[i]);
    }
    double err = 0.0;
    for (double omega : {0.5, 1.0, 2.0}) {
        const double got = kramers_kronig(grid, vals, omega);
        const double want = w * omega / (2.0 * (omega * omega + w * w));
        err = std::max(err, std::abs(got - want) / std::abs(want));
    }
    r.pass = err < 1e-4;
    r.detail = detail_rel(err, 1e-4);
    return r;
}

ValidationResult check_reduction_bit_identical() {
    ValidationResult r{"Omega=0 driven/non-driven bit-identical", false, ""};
    SystemParams p;
    p.C = 10.0;
    p.rho_size = 10.0;
    IntegratorConfig ic;
    ic.t_end = 10.0;
    const TimeSeries s1 = run(p, ic);
    const TimeSeries s2 = run_driven(p, ic);
    const bool bytes_equal = timeseries_csv(s1) == timeseries_csv(s2);

    // the reduced three-variable RHS must agree with the full system
    double rhs_err = 0.0;
    for (const auto& rec : s1.records) {
        const AtomicState d6 = rhs_driven(rec.state, rec.rates, p);
        const Deriv3 d3 = rhs_nondriven(rec.state, rec.rates, p);
        const double sc = std::abs(d6.n) + 1.0;
        rhs_err = std::max({rhs_err, std::abs(d6.a - d3.da),
                            std::abs(d6.n - d3.dn) / sc, std::abs(d6.x - d3.dx)});
    }
    r.pass = bytes_equal && rhs_err < 1e-12;
    std::ostringstream o;
    o << (bytes_equal ? "csv identical" : "csv differs") << ", rhs err " << rhs_err;
    r.detail = o.str();
    return r;
}

ValidationResult check_gamma_grid_scan() {
    ValidationResult r{"grid-scan vs solver Gamma at t=0", false, ""};
    SystemParams p;
    p.C = 10.0;
    p.rho_size = 10.0;
    const AtomicState st = AtomicState::inverted();
    const GammaSolveReport rep = solve_gamma(st, p);

    auto residual = [&](double G) -> double {
        try {
            return G - assemble_rates_no_a2(st, 0.0, p, G).Gamma_candidate;
        } catch (const OverflowGuard&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    const int npts = 1000000;
    const double lo = 1e-2, hi = 1e5;
    double root = std::nan("");
    double prevG = lo, prevf = residual(lo);
    for (int i = 1; i < npts; ++i) {
        const double G = lo * std::pow(hi / lo, static_cast<double>(i) / (npts - 1));
        const double f = residual(G);
        if (std::isfinite(prevf) && std::isfinite(f) && prevf <= 0.0 && f > 0.0) {
            root = prevG + (G - prevG) * (-prevf) / (f - prevf);
            break;
        }
        prevG = G;
        prevf = f;
    }
    const double err = std::abs(root - rep.Gamma) / rep.Gamma;
    r.pass = std::isfinite(err) && err < 1e-6;
    r.detail = detail_rel(err, 1e-6);
    return r;
}

ValidationResult check_rabi_limit() {
    ValidationResult r{"Rabi limit a(t)=cos^2(Omega t) at C=0", false, ""};
    SystemParams p;
    p.gamma = 1e-6;
    p.C = 0.0;
    p.Omega = 5.0;
    IntegratorConfig ic;
    ic.t_out_start = 1e-3;
    ic.t_end = 2.0;
    const TimeSeries s = run_driven(p, ic);
    double err = 0.0;
    for (const auto& rec : s.records) {
        const double c = std::cos(p.Omega * rec.t);
        err = std::max(err, std::abs(rec.state.a - c * c));
    }
    r.pass = err < 1e-4;
    r.detail = detail_rel(err, 1e-4);
    return r;
}

}  // namespace

std::vector<ValidationResult> run_validation_suite() {
    std::vector<ValidationResult> out;
    auto guard = [&](auto&& fn, const char* name) {
        try {
            out.push_back(fn());
        } catch (const std::exception& e) {
            out.push_back({name, false, std::string("exception: ") + e.what()});
        }
    };
    guard(check_vacuum_limit, "vacuum-limit a(t)=exp(-t)");
    guard(check_vacuum_factorization, "vacuum factorization n=(2a-1)^2");
    guard(check_quadratic_gamma, "quadratic Gamma closed form at a=0.5");
    guard(check_a2_normalization, "A2 normalization identity");
    guard(check_kk_lorentzian, "Kramers-Kronig Lorentzian");
    guard(check_reduction_bit_identical, "Omega=0 driven/non-driven bit-identical");
    guard(check_gamma_grid_scan, "grid-scan vs solver Gamma at t=0");
    guard(check_rabi_limit, "Rabi limit a(t)=cos^2(Omega t) at C=0");
    return out;
}

}  // namespace coopdecay
