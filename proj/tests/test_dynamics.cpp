#include "doctest.h"

#include <cmath>
#include <random>

#include "coopdecay/dynamics.hpp"

using namespace coopdecay;

namespace {

SystemParams base_params(double C = 10.0, double rho = 10.0) {
    SystemParams p;
    p.C = C;
    p.rho_size = rho;
    return p;
}

}  // namespace

TEST_CASE("rhs_nondriven hand-checked point") {
    SystemParams p = base_params();
    AtomicState s = AtomicState::inverted();
    RateSet r;
    r.Gamma = 6.83;
    r.Gamma_bar = 1.0;
    const Deriv3 d = rhs_nondriven(s, r, p);
    CHECK(d.da == doctest::Approx(-7.83).epsilon(1e-12));
    CHECK(d.dn == doctest::Approx(-31.32).epsilon(1e-12));
    CHECK(d.dx == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rhs_nondriven vacuum limit") {
    SystemParams p = base_params();
    AtomicState s;
    s.a = 0.37;
    RateSet r;  // Gamma = Gamma_bar = 0
    const Deriv3 d = rhs_nondriven(s, r, p);
    CHECK(d.da == doctest::Approx(-0.37).epsilon(1e-14));
}

TEST_CASE("rhs_driven reduces to rhs_nondriven on the non-driven subspace") {
    SystemParams p = base_params();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        AtomicState s;
        s.a = u(rng);
        s.n = 2.0 * u(rng) - 1.0;
        s.x = 0.4 * (u(rng) - 0.5);
        RateSet r;
        r.Gamma = 10.0 * u(rng);
        r.Gamma_bar = 0.5 * r.Gamma;
        const AtomicState ds = rhs_driven(s, r, p);
        const Deriv3 d3 = rhs_nondriven(s, r, p);
        // identical algebra, but associated differently; allow rounding slack
        CHECK(ds.a == doctest::Approx(d3.da).epsilon(1e-13));
        CHECK(ds.n == doctest::Approx(d3.dn).epsilon(1e-13));
        CHECK(ds.x == doctest::Approx(d3.dx).epsilon(1e-13));
        CHECK(ds.rho_eg == complex(0.0, 0.0));
        CHECK(ds.m_eg == complex(0.0, 0.0));
        CHECK(ds.rho_egeg == complex(0.0, 0.0));
    }
}

TEST_CASE("output grid is log-spaced and strictly increasing") {
    IntegratorConfig c;
    const auto grid = output_grid(c);
    CHECK(grid.front() == doctest::Approx(1e-5));
    CHECK(grid.back() == doctest::Approx(1e2).epsilon(1e-9));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
    // 40 points per decade over 7 decades
    CHECK(grid.size() >= 280);
}

TEST_CASE("vacuum run matches exp(-t) and factorizes") {
    SystemParams p = base_params(0.0, 1.0);
    IntegratorConfig c;
    c.t_end = 5.0;
    const TimeSeries ts = run(p, c);
    REQUIRE(ts.size() > 10);
    CHECK(ts[0].t == 0.0);
    CHECK(ts[0].state.a == 1.0);
    for (const auto& r : ts.records) {
        const double ref = std::exp(-r.t);
        CHECK(std::abs(r.state.a - ref) <= 1e-6 * ref);
        // independent atoms: n = (2a-1)^2
        const double m = 2.0 * r.state.a - 1.0;
        CHECK(std::abs(r.state.n - m * m) <= 1e-8);
        CHECK(r.state.x == 0.0);  // Gamma_bar = 0 keeps x identically zero
        CHECK(r.rates.Gamma == 0.0);
    }
}

TEST_CASE("driven loop with Omega = 0 reproduces the non-driven run bit-for-bit") {
    SystemParams p = base_params();
    IntegratorConfig c;
    c.t_end = 1e-2;
    const TimeSeries a = run(p, c);
    const TimeSeries b = run_driven(p, c);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].state.a == b[i].state.a);
        CHECK(a[i].state.n == b[i].state.n);
        CHECK(a[i].state.x == b[i].state.x);
        CHECK(a[i].rates.Gamma == b[i].rates.Gamma);
    }
}

TEST_CASE("Rabi oscillations at C = 0") {
    SystemParams p;
    p.C = 0.0;
    p.rho_size = 1.0;
    p.gamma = 1e-6;
    p.Omega = 5.0;
    IntegratorConfig c;
    c.t_end = 2.0;
    c.t_out_start = 1e-3;
    const TimeSeries ts = run_driven(p, c);
    for (const auto& r : ts.records) {
        const double ref = std::cos(p.Omega * r.t) * std::cos(p.Omega * r.t);
        CHECK(std::abs(r.state.a - ref) < 1e-4);
    }
}

TEST_CASE("eta = 100 burst phenomenology and state bounds") {
    SystemParams p = base_params();  // eta = 100
    IntegratorConfig c;
    const TimeSeries ts = run(p, c);

    double min_a = 1.0, max_x = 0.0;
    for (const auto& r : ts.records) {
        CHECK_NOTHROW(r.state.check_bounds());
        CHECK(r.rates.Gamma >= 0.0);
        min_a = std::min(min_a, r.state.a);
        max_x = std::max(max_x, r.state.x);
    }
    // population drops through 0.55 before t = 10/eta
    bool dropped = false;
    for (const auto& r : ts.records)
        if (r.t < 0.1 && r.state.a <= 0.55) dropped = true;
    CHECK(dropped);
    // coherence rises and then decays by 10x
    CHECK(max_x > 0.0);
    CHECK(max_x > 10.0 * std::abs(ts.back().state.x));
    // total emitted fraction within [0, 1]
    CHECK(1.0 - ts.back().state.a >= 0.0);
    CHECK(1.0 - ts.back().state.a <= 1.0);
}

TEST_CASE("halving integrator tolerances leaves a(t) unchanged to 1e-6") {
    SystemParams p = base_params();
    IntegratorConfig c1;
    IntegratorConfig c2;
    c2.rel_tol /= 2.0;
    c2.abs_tol /= 2.0;
    const TimeSeries a = run(p, c1);
    const TimeSeries b = run(p, c2);
    REQUIRE(a.size() == b.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sup = std::max(sup, std::abs(a[i].state.a - b[i].state.a));
    CHECK(sup < 1e-6);
}

TEST_CASE("runs are deterministic") {
    SystemParams p = base_params();
    IntegratorConfig c;
    c.t_end = 1e-1;
    const TimeSeries a = run(p, c);
    const TimeSeries b = run(p, c);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].state.a == b[i].state.a);
        CHECK(a[i].rates.Gamma == b[i].rates.Gamma);
    }
}
