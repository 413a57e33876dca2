#include <doctest.h>

#include <cmath>
#include <random>

#include "relayfric/lyapunov.hpp"

using namespace relayfric;

TEST_CASE("twisting_bounds: frozen coefficients for gamma = 2, c_f = 1") {
    const TwistingBounds b = twisting_bounds(2.0, 1.0);
    CHECK(b.u_upper == doctest::Approx(3.0));
    CHECK(b.u_lower == doctest::Approx(1.0));
    CHECK(b.r == doctest::Approx(0.57735026918962573).epsilon(1e-14));
    CHECK(b.alpha[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(b.alpha[1] == doctest::Approx(1.8213672050459180).epsilon(1e-13));
    CHECK(b.alpha[2] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(b.alpha[3] == doctest::Approx(3.1547005383792515).epsilon(1e-13));
}

TEST_CASE("twisting_bounds: near-marginal gains and domain errors") {
    const TwistingBounds b = twisting_bounds(1.119, 1.0);
    CHECK(b.r == doctest::Approx(0.23697798497121911).epsilon(1e-13));
    CHECK(b.alpha[3] == doctest::Approx(11.631750967922642).epsilon(1e-12));

    CHECK_THROWS_AS(twisting_bounds(1.0, 1.0), std::domain_error);   // u_lower = 0
    CHECK_THROWS_AS(twisting_bounds(0.5, 1.0), std::domain_error);   // u_lower < 0
    CHECK_THROWS_AS(twisting_bounds(2.0, 1.0, 1.5), std::domain_error);  // perturbed past margin
}

TEST_CASE("v_twisting: frozen value and basic shape") {
    const TwistingBounds b = twisting_bounds(2.0, 1.0);
    // on the x2 = 0 axis only the opposite-sign branch contributes:
    // alpha4 * sqrt(2 * u_lower * |x1|)
    CHECK(v_twisting(1.0, 0.0, b) == doctest::Approx(4.4614202866016424).epsilon(1e-13));
    CHECK(v_twisting(0.0, 0.0, b) == 0.0);
    CHECK(v_twisting(-1.0, 0.0, b) == doctest::Approx(v_twisting(1.0, 0.0, b)).epsilon(1e-14));
}

TEST_CASE("v_twisting: positive definite and continuous across branch lines") {
    const TwistingBounds b = twisting_bounds(1.5, 1.0);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int i = 0; i < 5000; ++i) {
        const double x1 = dist(rng);
        const double x2 = dist(rng);
        if (x1 == 0.0 && x2 == 0.0) continue;
        CHECK(v_twisting(x1, x2, b) > 0.0);
    }
    // branch seam x1 = 0: both expressions reduce to a multiple of |x2|
    for (int i = 0; i < 200; ++i) {
        const double x2 = dist(rng);
        const double from_pos = v_twisting(1e-300, x2, b);
        const double from_neg = v_twisting(-1e-300, x2, b);
        CHECK(from_pos == doctest::Approx(from_neg).epsilon(1e-12));
    }
}

TEST_CASE("settle_time_closed_form: frozen values and identity with r^2 * V") {
    CHECK(settle_time_closed_form(1.01, 1.0, 1.0) ==
          doctest::Approx(0.076074832882771032).epsilon(1e-13));
    CHECK(settle_time_closed_form(1.119, 1.0, 1.0) ==
          doctest::Approx(0.3186761624776685).epsilon(1e-13));
    CHECK(settle_time_closed_form(1.5, 1.0, 1.0) ==
          doctest::Approx(0.86832815729997459).epsilon(1e-13));
    CHECK(settle_time_closed_form(2.0, 1.0, 1.0) ==
          doctest::Approx(1.4871400955338807).epsilon(1e-13));

    std::mt19937 rng(47);
    std::uniform_real_distribution<double> ratio(1.05, 5.0);
    std::uniform_real_distribution<double> cf(0.25, 4.0);
    std::uniform_real_distribution<double> pos(0.05, 20.0);
    for (int i = 0; i < 2000; ++i) {
        const double c_f = cf(rng);
        const double gamma = ratio(rng) * c_f;
        const double x1 = pos(rng);
        const TwistingBounds b = twisting_bounds(gamma, c_f);
        const double lhs = settle_time_closed_form(gamma, c_f, x1);
        const double rhs = b.r * b.r * v_twisting(x1, 0.0, b);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }

    CHECK_THROWS_AS(settle_time_closed_form(1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(settle_time_closed_form(2.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("settle_time_closed_form: square-root scaling in |x1|") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> pos(0.01, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double x1 = pos(rng);
        const double t1 = settle_time_closed_form(1.5, 1.0, x1);
        const double t4 = settle_time_closed_form(1.5, 1.0, 4.0 * x1);
        CHECK(t4 == doctest::Approx(2.0 * t1).epsilon(1e-12));
    }
}

TEST_CASE("vdot_bound: frozen rates") {
    const TwistingBounds b = twisting_bounds(2.0, 1.0);
    CHECK(vdot_bound(b, Quadrant::SameSign) == doctest::Approx(-1.0));
    // -(gamma - c_f - f)/(gamma + c_f + f) = -1/3
    CHECK(vdot_bound(b, Quadrant::OppositeSign) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));

    const TwistingBounds bp = twisting_bounds(2.0, 1.0, 0.5);
    CHECK(vdot_bound(bp, Quadrant::OppositeSign) ==
          doctest::Approx(-0.5 / 3.5).epsilon(1e-14));
}

TEST_CASE("convergence_time_bound equals the Lyapunov value") {
    const TwistingBounds b = twisting_bounds(2.0, 1.0);
    CHECK(convergence_time_bound(0.0, 0.0, b) == 0.0);
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const double x1 = dist(rng);
        const double x2 = dist(rng);
        CHECK(convergence_time_bound(x1, x2, b) == v_twisting(x1, x2, b));
    }
}

TEST_CASE("v_quadratic: frozen values") {
    CHECK(v_quadratic(0.0, 2.0, 5600.0) == doctest::Approx(2.0));
    CHECK(v_quadratic(0.002, 0.0, 5600.0) == doctest::Approx(0.0112).epsilon(1e-14));
    CHECK(v_quadratic_rate(2.0, 150.0, 1.148) == doctest::Approx(-602.296).epsilon(1e-14));
    CHECK(v_quadratic_rate(0.0, 150.0, 1.148) == 0.0);
}

TEST_CASE("v_reduced: values and rates") {
    CHECK(v_reduced(1.0, 0.0, 1.5) == doctest::Approx(1.5));
    CHECK(v_reduced(0.5, 2.0, 1.5) == doctest::Approx(2.75));
    CHECK(v_reduced_rate_discontinuous(-2.0, 1.148) == doctest::Approx(-2.296));
    // presliding rate can be positive when the force opposes the memory level
    CHECK(v_reduced_rate_presliding(1.0, -0.5, 1.0) == doctest::Approx(0.5));
    CHECK(v_reduced_rate_presliding(1.0, 0.5, 1.0) == doctest::Approx(-0.5));
}

namespace {

Trajectory baseline_run(double gamma) {
    Scenario sc;
    sc.plant.friction.c_f = 1.0;
    sc.plant.gamma = gamma;
    sc.x0.x1 = 1.0;
    sc.t_end = 10.0;
    sc.dt_max = 1e-3;
    return integrate(sc);
}

}  // namespace

TEST_CASE("verify_decrease: no violations along a twisting run") {
    const Trajectory traj = baseline_run(1.5);
    const TwistingBounds b = twisting_bounds(1.5, 1.0);
    const DecreaseReport rep = verify_decrease(traj, b);
    CHECK(rep.violations.empty());
    CHECK(rep.pairs_same_sign >= 3);
    CHECK(rep.pairs_opposite_sign >= 3);
    CHECK(rep.max_rate_same_sign <= rep.bound_same_sign + 1e-6);
    CHECK(rep.max_rate_opposite_sign <= rep.bound_opposite_sign + 1e-6);
}

TEST_CASE("verify_decrease: self-test hook flags an impossible bound") {
    const Trajectory traj = baseline_run(1.5);
    const TwistingBounds b = twisting_bounds(1.5, 1.0);
    // doubling the required decrease rate must produce violations; this guards
    // against the checker silently passing everything
    const DecreaseReport rep = verify_decrease(traj, b, 0.0, 2.0);
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("verify_decrease: rejects runs outside its assumptions") {
    Scenario sc;
    sc.plant.k = 5600.0;
    sc.plant.c = 150.0;
    sc.plant.friction.c_f = 1.148;
    sc.plant.gamma = 1.214;
    sc.x0.x1 = -0.002;
    sc.t_end = 0.5;
    sc.dt_max = 1e-4;
    const Trajectory traj = integrate(sc);
    CHECK_THROWS_AS(verify_decrease(traj, twisting_bounds(1.214, 1.148)), std::domain_error);
}
