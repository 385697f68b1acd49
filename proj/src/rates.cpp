#include "coopdecay/rates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace coopdecay {

namespace {

constexpr complex kI{0.0, 1.0};

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 15> kGlNodes = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                  0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr std::array<double, 15> kGlWeights = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

// Composite Gauss-Legendre with panel doubling until the relative change is
// below rel_tol. Throws QuadratureFailure if 1e-6 is unreachable.
template <typename F>
complex adaptive_quadrature(F&& f, double a, double b, double rel_tol, int initial_panels) {
    auto pass = [&](int panels) {
        complex sum{0.0, 0.0};
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (p + 0.5) * h;
            complex s{0.0, 0.0};
            for (std::size_t k = 0; k < kGlNodes.size(); ++k)
                s += kGlWeights[k] * f(mid + 0.5 * h * kGlNodes[k]);
            sum += 0.5 * h * s;
        }
        return sum;
    };
    int panels = std::max(1, initial_panels);
    complex prev = pass(panels);
    for (int iter = 0; iter < 14; ++iter) {
        panels *= 2;
        const complex cur = pass(panels);
        const double err = std::abs(cur - prev);
        const double scale = std::max(std::abs(cur), 1e-30);
        if (err <= rel_tol * scale) return cur;
        if (iter == 13 && err > 1e-6 * scale)
            throw QuadratureFailure("radial quadrature failed to reach 1e-6");
        prev = cur;
    }
    return prev;
}

}  // namespace

double compute_A1(double P1, double R, const SystemParams& params) {
    if (R > 700.0) throw OverflowGuard("compute_A1: R > 700");
    const double pre = params.gamma * params.gamma * params.C * params.rho_size;
    double f;
    if (std::abs(R) < 1e-6)
        f = 1.0 + R / 2.0 + R * R / 6.0;
    else
        f = std::expm1(R) / R;
    return pre * P1 * f;
}

double compute_B(double P2, double R, double rho_tilde, const SystemParams& params) {
    if (R > 1400.0) throw OverflowGuard("compute_B: R > 1400");
    const double rho = params.rho_size;
    const double pre2 = params.gamma * params.gamma * params.C * params.C;
    if (std::abs(R) + std::abs(rho_tilde) < 1e-4)
        return pre2 * rho * rho * rho * rho * P2 / 2.0;  // removable 0/0 limit
    const complex half = complex(R, -rho_tilde) / 2.0;
    const complex core = std::exp(half) * (1.0 - half) - 1.0;
    const double denom = rho_tilde * rho_tilde + R * R;
    return 32.0 * pre2 * rho * rho * rho * rho * P2 / (denom * denom) * std::norm(core);
}

double compute_A2(double P1, complex q0_over_k0, const SystemParams& params) {
    const double rho = params.rho_size;
    const double qp = std::real(q0_over_k0);   // q'/k0
    const double qpp = std::imag(q0_over_k0);  // q''/k0
    const double R = 2.0 * rho * qpp;          // q'' l
    if (R > 700.0) throw OverflowGuard("compute_A2: R > 700");
    const complex qs = std::conj(q0_over_k0);
    const double expR = std::exp(R);

    auto integrand = [&](double u) -> complex {
        // running integrals of the paired propagator along the radial line
        const complex t1 = (std::exp(complex(0.0, -2.0 * qp * u)) - 1.0) / complex(0.0, -2.0 * qp);
        double t2, t3;
        if (std::abs(qpp) > 1e-12) {
            const double e2 = std::exp(2.0 * qpp * u);
            t2 = (e2 - 1.0) / (2.0 * qpp);
            t3 = (expR - e2) / (2.0 * qpp);
        } else {
            t2 = u;
            t3 = rho - u;
        }
        const complex eiqs = std::exp(kI * qs * u);
        return u * (eiqs * (t1 - t2) + t3 * (1.0 / eiqs - eiqs));
    };

    // one initial panel per ~pi of phase keeps the oscillation resolved
    const int panels0 = std::max(4, static_cast<int>(rho / 3.0) + 1);
    const complex integral = adaptive_quadrature(integrand, 0.0, rho, 1e-8, panels0);
    const double symmetrized = std::real(kI / qs * integral);
    const double pre = params.gamma * params.gamma * params.C;
    return 1.5 * pre * P1 / (rho * rho * rho) * symmetrized;
}

double compute_A1_via_quadrature(double P1, complex q0_over_k0, const SystemParams& params) {
    const double rho = params.rho_size;
    const double qpp = std::imag(q0_over_k0);
    if (2.0 * rho * qpp > 700.0) throw OverflowGuard("A1 quadrature: R > 700");
    auto integrand = [&](double u) -> complex {
        // |e^{-i q0 u}/u|^2 * u^2
        return std::exp(2.0 * qpp * u);
    };
    const complex integral = adaptive_quadrature(integrand, 0.0, rho, 1e-8, 8);
    return params.gamma * params.gamma * params.C * P1 * std::real(integral);
}

RateCandidates assemble_rates(const AtomicState& state, double omega,
                              const SystemParams& params, double Gamma_guess,
                              double Delta) {
    RateCandidates out;
    if (params.C == 0.0) return out;
    RateSet guess;
    guess.Gamma = Gamma_guess;
    guess.Delta = Delta;
    const SourceEval src = eval_sources(state, guess, omega, params);
    out.medium = medium_response(src.Pret, params);
    out.A1 = compute_A1(src.P1, out.medium.R, params);
    out.B = compute_B(src.P2, out.medium.R, out.medium.rho_tilde, params);
    out.A2 = compute_A2(src.P1, out.medium.q0_over_k0, params);
    out.Gamma_candidate = out.A1 + out.B;
    out.Gamma_bar = out.A2 + (params.bprime_equals_b ? out.B : 0.0);
    return out;
}

RateCandidates assemble_rates_no_a2(const AtomicState& state, double omega,
                                    const SystemParams& params, double Gamma_guess,
                                    double Delta) {
    RateCandidates out;
    if (params.C == 0.0) return out;
    RateSet guess;
    guess.Gamma = Gamma_guess;
    guess.Delta = Delta;
    const SourceEval src = eval_sources(state, guess, omega, params);
    out.medium = medium_response(src.Pret, params);
    out.A1 = compute_A1(src.P1, out.medium.R, params);
    out.B = compute_B(src.P2, out.medium.R, out.medium.rho_tilde, params);
    out.Gamma_candidate = out.A1 + out.B;
    out.Gamma_bar = params.bprime_equals_b ? out.B : 0.0;
    return out;
}

namespace {

// A1 + B only; the inter-atom part is not needed inside the Gamma solve.
double gamma_candidate(const AtomicState& state, const SystemParams& params, double Gamma,
                       double Delta) {
    RateSet guess;
    guess.Gamma = Gamma;
    guess.Delta = Delta;
    const SourceEval src = eval_sources(state, guess, 0.0, params);
    const MediumResponse med = medium_response(src.Pret, params);
    return compute_A1(src.P1, med.R, params) +
           compute_B(src.P2, med.R, med.rho_tilde, params);
}

GammaSolveReport bisect_gamma(const AtomicState& state, const SystemParams& params,
                              double Delta, double rel_tol, int iters_so_far) {
    const double g = params.gamma;
    const double Gamma_max = 1e9 * g;
    auto residual = [&](double G) -> double {
        try {
            return G - gamma_candidate(state, params, G, Delta);
        } catch (const OverflowGuard&) {
            return -std::numeric_limits<double>::infinity();  // guessed far too small
        }
    };
    // Geometric scan over the whole admissible range. The residual need not be
    // monotonic (slightly unphysical stage states can flip the sign of B), so
    // take the topmost sign change: it connects continuously to f ~ +Gamma at
    // large Gamma and is the physical branch.
    double lo = 0.0, hi = 0.0;
    bool found = false;
    double prevG = g * 1e-6;
    double prevf = residual(prevG);
    if (prevf > 0.0) {
        lo = 0.0;
        hi = prevG;
        found = true;  // candidate already below the floor; root is at ~0
    }
    for (double G = 4.0 * prevG; prevG < Gamma_max; G *= 4.0) {
        const double f = residual(G);
        if (prevf <= 0.0 && f > 0.0) {
            lo = prevG;
            hi = G;
            found = true;
        }
        prevG = G;
        prevf = f;
    }
    if (!found) throw NoRoot("solve_gamma: no sign change up to 1e9*gamma");
    GammaSolveReport rep;
    rep.method = "bisection-fallback";
    rep.bracket_lo = lo;
    rep.bracket_hi = hi;
    int it = iters_so_far;
    while (hi - lo > 1e-13 * std::max(hi, g) && it < 400) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
        ++it;
    }
    rep.Gamma = 0.5 * (lo + hi);
    rep.iterations = it;
    rep.residual = std::abs(residual(rep.Gamma));
    if (rep.residual > rel_tol * std::max(rep.Gamma, g)) {
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "solve_gamma: bisection failed to meet residual tolerance "
                      "(Gamma=%.17g residual=%.17g f(lo)=%.17g f(hi)=%.17g "
                      "a=%.17g x=%.17g n=%.17g)",
                      rep.Gamma, rep.residual, residual(lo), residual(hi), state.a,
                      state.x, state.n);
        throw NoRoot(buf);
    }
    return rep;
}

}  // namespace

GammaSolveReport solve_gamma(const AtomicState& state, const SystemParams& params,
                             double warm_start, double Delta) {
    const double g = params.gamma;
    const double rel_tol = 1e-10;
    GammaSolveReport rep;
    if (params.C == 0.0) {
        rep.method = "fixed-point";
        return rep;
    }
    if (warm_start < 0.0) return bisect_gamma(state, params, Delta, rel_tol, 0);

    // damped fixed point, beta = 0.5
    double G = warm_start;
    double prev_step = std::numeric_limits<double>::infinity();
    int stalls = 0;
    for (int it = 1; it <= 60; ++it) {
        double cand;
        try {
            cand = gamma_candidate(state, params, G, Delta);
        } catch (const OverflowGuard&) {
            G = 4.0 * G + g;  // R overflow: Gamma guessed far too small
            continue;
        }
        const double Gn = std::max(0.5 * G + 0.5 * cand, 0.0);
        const double step = std::abs(Gn - G);
        G = Gn;
        if (std::abs(G - cand) <= rel_tol * std::max(G, g) || step == 0.0) {
            rep.Gamma = G;
            rep.iterations = it;
            rep.residual = std::abs(G - gamma_candidate(state, params, G, Delta));
            if (rep.residual <= rel_tol * std::max(G, g)) {
                rep.method = "fixed-point";
                return rep;
            }
            break;
        }
        if (step >= prev_step) {
            if (++stalls >= 8) break;  // oscillating or diverging
        } else {
            stalls = 0;
        }
        prev_step = step;
    }
    return bisect_gamma(state, params, Delta, rel_tol, 60);
}

double kramers_kronig(std::span<const double> omega, std::span<const double> values,
                      double omega_eval) {
    const std::size_t n = omega.size();
    if (n < 8 || values.size() != n)
        throw GridTooNarrow("kramers_kronig: bad grid");
    const double h = omega[1] - omega[0];
    const double a = omega.front(), b = omega.back();
    if (!(omega_eval > a && omega_eval < b))
        throw GridTooNarrow("kramers_kronig: omega_eval outside grid");
    double peak = 0.0;
    for (double v : values) peak = std::max(peak, std::abs(v));
    if (peak > 0.0 &&
        (std::abs(values.front()) > 1e-6 * peak || std::abs(values.back()) > 1e-6 * peak))
        throw GridTooNarrow("kramers_kronig: spectrum tails not decayed below 1e-6 of peak");

    // value at omega_eval by linear interpolation
    const double pos = (omega_eval - a) / h;
    const std::size_t i0 = std::min(static_cast<std::size_t>(pos), n - 2);
    const double frac = pos - static_cast<double>(i0);
    const double v_eval = values[i0] * (1.0 - frac) + values[i0 + 1] * frac;

    // singularity subtraction: integrate (G(w') - G(w))/(w' - w) by trapezoid,
    // then add the analytic principal value of the subtracted pole
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = omega[i] - omega_eval;
        double f;
        if (std::abs(d) < 0.5 * h) {
            // near the node use the local slope
            const std::size_t il = (i == 0) ? 0 : i - 1;
            const std::size_t ir = (i == n - 1) ? n - 1 : i + 1;
            f = (values[ir] - values[il]) / (omega[ir] - omega[il]);
        } else {
            f = (values[i] - v_eval) / d;
        }
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        sum += w * f;
    }
    double integral = sum * h;
    integral += v_eval * std::log((b - omega_eval) / (omega_eval - a));
    return -integral / (2.0 * M_PI);
}

double solve_light_shift(const AtomicState& state, const SystemParams& params,
                         double Gamma0, double half_width, int grid_points) {
    std::vector<double> grid(grid_points), vals(grid_points);
    for (int i = 0; i < grid_points; ++i)
        grid[i] = -half_width + 2.0 * half_width * i / (grid_points - 1);
    double Delta = 0.0;
    for (int it = 0; it < 50; ++it) {
        for (int i = 0; i < grid_points; ++i) {
            RateSet guess;
            guess.Gamma = Gamma0;
            guess.Delta = Delta;
            const SourceEval src = eval_sources(state, guess, grid[i], params);
            const MediumResponse med = medium_response(src.Pret, params);
            vals[i] = compute_A1(src.P1, med.R, params) +
                      compute_B(src.P2, med.R, med.rho_tilde, params);
        }
        const double target = 2.0 * Delta + params.delta_lamb;
        const double next = kramers_kronig(grid, vals, target);
        const double damped = 0.5 * Delta + 0.5 * next;
        if (std::abs(damped - Delta) < 1e-10 * std::max(std::abs(damped), params.gamma))
            return damped;
        Delta = damped;
    }
    return Delta;
}

}  // namespace coopdecay
