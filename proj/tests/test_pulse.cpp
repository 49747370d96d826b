#include "doctest.h"

#include <algorithm>

#include "geoquad/pulse.hpp"
#include "test_util.hpp"

using namespace geoquad;
using namespace geoquad::testutil;

namespace {

double sup_diff(const PulseSchedule& a, const PulseSchedule& b, int samples = 2001) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = a.t_f * k / (samples - 1);
        worst = std::max(worst, std::abs(a.eval(t) - b.eval(t)));
    }
    return worst;
}

DQDParams fig5_params() {
    DQDParams p;
    p.u_tilde = 100.0;
    p.omega = 1.0;
    p.de_z = 1.0;
    return p;
}

}  // namespace

TEST_CASE("path_length") {
    SUBCASE("constant metric on the great circle") {
        // sqrt(g) = 1/2, so L = |theta_f - theta_0| / 2
        const double L = path_length(circle_model(), 0.2, 2.7, 0);
        CHECK(L == doctest::Approx((2.7 - 0.2) / 2.0).epsilon(1e-8));
    }
    SUBCASE("coincident endpoints") {
        CHECK(path_length(circle_model(), 1.0, 1.0, 0) == 0.0);
    }
    SUBCASE("dqd3 sweep against a dense trapezoid oracle") {
        const auto model = dqd3_model(fig5_params());
        const double L = path_length(model, 200.0, 0.0, 0);
        const int n = 1000000;
        double acc = 0.0;
        double prev = std::sqrt(metric_scalar(model, 200.0, 0));
        for (int k = 1; k <= n; ++k) {
            const double eps = 200.0 - 200.0 * k / n;
            const double cur = std::sqrt(metric_scalar(model, eps, 0));
            acc += 0.5 * (prev + cur) * (200.0 / n);
            prev = cur;
        }
        CHECK(std::abs(L - acc) < 1e-6 * acc);
    }
}

TEST_CASE("adiabaticity") {
    const double d1 = adiabaticity(circle_model(), 0.0, M_PI, M_PI, 0);
    CHECK(d1 == doctest::Approx(0.5).epsilon(1e-8));
    // doubling t_f halves delta
    const double d2 = adiabaticity(circle_model(), 0.0, M_PI, 2.0 * M_PI, 0);
    CHECK(d2 == doctest::Approx(0.25).epsilon(1e-8));
    const double d3 = adiabaticity(dqd3_model(fig5_params()), 200.0, 0.0, 20.0, 0);
    CHECK(d3 > 0.0);
    CHECK(std::isfinite(d3));
}

TEST_CASE("solve_fast_quad on a constant metric is the linear ramp") {
    const auto sched = solve_fast_quad(circle_model(), 0.1, 2.9, 5.0);
    const auto lin = linear_pulse(0.1, 2.9, 5.0);
    CHECK(sup_diff(sched, lin) < 1e-9);
    CHECK(sched.delta == doctest::Approx((2.9 - 0.1) / 2.0 / 5.0).epsilon(1e-6));
}

TEST_CASE("solve_fast_quad reproduces the tangent geodesic on the avoided crossing") {
    const auto model = pauli_model(PauliMode::RhoOnly, {{"phi", 0.0}, {"z", 0.1}});
    const double t_f = 10.0;
    const auto numeric = solve_fast_quad(model, -10.0, 10.0, t_f);
    const auto exact = tangent_geodesic_pulse(0.1, -10.0, 10.0, t_f);
    CHECK(sup_diff(numeric, exact) < 1e-4 * 10.0);
    CHECK(numeric.eval(0.0) == doctest::Approx(-10.0));
    CHECK(numeric.eval(t_f) == doctest::Approx(10.0));
}

TEST_CASE("geometric dqd3 schedule slows down at the anti-crossing") {
    const auto sched = solve_fast_quad(dqd3_model(fig5_params()), 200.0, 0.0, 20.0);
    // locate the sample interval with the smallest |d eps/dt|
    double min_rate = 1e300, min_eps = 0.0;
    for (size_t k = 1; k < sched.times.size(); ++k) {
        const double rate = std::abs(sched.values[k] - sched.values[k - 1]) /
                            (sched.times[k] - sched.times[k - 1]);
        if (rate < min_rate) {
            min_rate = rate;
            min_eps = 0.5 * (sched.values[k] + sched.values[k - 1]);
        }
    }
    CHECK(std::abs(min_eps - 100.0) < 5.0);
}

TEST_CASE("linear_pulse") {
    const auto a = linear_pulse(0.0, 10.0, 10.0);
    CHECK(a.eval(5.0) == doctest::Approx(5.0));
    const auto b = linear_pulse(200.0, 0.0, 20.0);
    CHECK(b.eval(10.0) == doctest::Approx(100.0));
    const auto c = linear_pulse(3.0, 3.0, 1.0);
    CHECK(c.eval(0.4) == doctest::Approx(3.0));
}

TEST_CASE("analytic_two_level") {
    SUBCASE("theta is linear in t") {
        const auto sched = analytic_two_level(0.0, M_PI, 1.0);
        CHECK(sched.eval(0.5) == doctest::Approx(M_PI / 2.0));
        CHECK(sched.delta == doctest::Approx(M_PI / 2.0));
    }
    SUBCASE("matches the generic solver on the circle model") {
        const auto generic = solve_fast_quad(circle_model(), 0.3, 2.1, 4.0);
        const auto exact = analytic_two_level(0.3, 2.1, 4.0);
        CHECK(sup_diff(generic, exact) < 1e-9);
    }
    SUBCASE("reverse sweep is the time mirror") {
        const auto fwd = analytic_two_level(0.2, 2.8, 3.0);
        const auto rev = analytic_two_level(2.8, 0.2, 3.0);
        for (double t : {0.0, 0.7, 1.5, 2.4, 3.0})
            CHECK(rev.eval(t) == doctest::Approx(fwd.eval(3.0 - t)).epsilon(1e-12));
    }
}

TEST_CASE("sw_closed_form_pulse") {
    SUBCASE("J = 0 matches the generic solver on the Landau-Zener model") {
        const double omega = 10.0;
        const auto model = sw2_model(omega, 0.0);
        const auto generic = solve_fast_quad(model, -50.0, 50.0, 10.0);
        const auto closed = sw_closed_form_pulse(omega, 0.0, -50.0, 50.0, 10.0);
        CHECK(sup_diff(generic, closed) < 1e-3 * 50.0);
    }
    SUBCASE("deviation from the three-level pulse grows with de_z") {
        // sweep +-20 around the anti-crossing: inside the expansion's
        // validity window the pulse-shape deviation is monotone in the
        // coupling (for much wider sweeps the tails dominate and it is not)
        const double u = 100.0, omega = 10.0, t_f = 10.0;
        double prev_dev = -1.0;
        for (double de_z : {0.5, 1.0, 2.0}) {
            DQDParams p;
            p.u_tilde = u;
            p.omega = omega;
            p.de_z = de_z;
            const auto generic = solve_fast_quad(dqd3_model(p), u + 20.0, u - 20.0, t_f);
            const auto sw = sw_closed_form_pulse(omega, de_z, 20.0, -20.0, t_f);
            double dev = 0.0;
            for (int k = 0; k <= 400; ++k) {
                const double t = t_f * k / 400.0;
                dev = std::max(dev, std::abs((generic.eval(t) - u) - sw.eval(t)));
            }
            CHECK(dev > prev_dev);
            prev_dev = dev;
        }
    }
    SUBCASE("degenerate boundary is constant") {
        const auto sched = sw_closed_form_pulse(5.0, 0.5, 7.0, 7.0, 2.0);
        CHECK(sched.eval(1.3) == doctest::Approx(7.0));
    }
    SUBCASE("validity guard") {
        CHECK_THROWS_AS(sw_closed_form_pulse(1.0, 0.6, -5.0, 5.0, 1.0), ExpansionInvalid);
        const auto warned = sw_closed_form_pulse(1.0, 0.3, -5.0, 5.0, 1.0);
        CHECK(!warned.note.empty());
    }
}

TEST_CASE("Beltrami speed conservation for geometric schedules") {
    SUBCASE("tangent geodesic on the avoided crossing") {
        const auto model = pauli_model(PauliMode::RhoOnly, {{"phi", 0.0}, {"z", 0.1}});
        const auto sched = solve_fast_quad(model, -10.0, 10.0, 10.0);
        CHECK(beltrami_max_deviation(model, sched, 0) < 1e-3);
    }
    SUBCASE("dqd3 sweep") {
        const auto model = dqd3_model(fig5_params());
        const auto sched = solve_fast_quad(model, 200.0, 0.0, 20.0);
        CHECK(beltrami_max_deviation(model, sched, 0) < 1e-3);
    }
    SUBCASE("a linear ramp is not conserved on a non-constant metric") {
        const auto model = dqd3_model(fig5_params());
        const auto sched = linear_pulse(200.0, 0.0, 20.0);
        PulseSchedule with_delta = sched;
        with_delta.delta = adiabaticity(model, 200.0, 0.0, 20.0, 0);
        with_delta.finalize();
        CHECK(beltrami_max_deviation(model, with_delta, 0) > 1e-1);
    }
}

TEST_CASE("geometric schedule properties") {
    const auto model = dqd3_model(fig5_params());
    const auto sched = solve_fast_quad(model, 200.0, 0.0, 20.0);

    SUBCASE("strict monotonicity") {
        for (size_t k = 1; k < sched.values.size(); ++k)
            CHECK(sched.values[k] < sched.values[k - 1]);
    }
    SUBCASE("time reversal swaps the boundaries") {
        const auto rev = solve_fast_quad(model, 0.0, 200.0, 20.0);
        double worst = 0.0;
        for (int k = 0; k <= 500; ++k) {
            const double t = 20.0 * k / 500.0;
            worst = std::max(worst, std::abs(rev.eval(t) - sched.eval(20.0 - t)));
        }
        CHECK(worst < 1e-6 * 200.0);
    }
    SUBCASE("sample refinement has converged") {
        FastQuadOptions fine;
        fine.samples = 40001;
        const auto dense = solve_fast_quad(model, 200.0, 0.0, 20.0, fine);
        CHECK(sup_diff(sched, dense) < 1e-6 * 200.0);
    }
}

TEST_CASE("PulseSchedule::finalize validation") {
    PulseSchedule bad;
    bad.t_f = 1.0;
    bad.times = {0.0, 0.5};
    bad.values = {0.0};
    CHECK_THROWS_AS(bad.finalize(), ShapeMismatch);

    PulseSchedule nonmono;
    nonmono.t_f = 1.0;
    nonmono.times = {0.0, 0.6, 0.5, 1.0};
    nonmono.values = {0.0, 1.0, 2.0, 3.0};
    CHECK_THROWS_AS(nonmono.finalize(), std::invalid_argument);
}

TEST_CASE("interpolation hits the samples and stays monotone between them") {
    PulseSchedule s;
    s.t_f = 3.0;
    s.times = {0.0, 1.0, 2.0, 3.0};
    s.values = {0.0, 0.1, 5.0, 5.2};
    s.finalize();
    CHECK(s.eval(1.0) == doctest::Approx(0.1));
    CHECK(s.eval(2.0) == doctest::Approx(5.0));
    double prev = s.eval(0.0);
    for (int k = 1; k <= 300; ++k) {
        const double cur = s.eval(3.0 * k / 300.0);
        CHECK(cur >= prev - 1e-12);  // Fritsch-Carlson: no overshoot
        prev = cur;
    }
}
