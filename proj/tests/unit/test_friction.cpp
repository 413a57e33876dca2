#include <doctest.h>

#include <cmath>
#include <random>

#include "relayfric/friction.hpp"

using namespace relayfric;

TEST_CASE("coulomb_force: sign law away from zero velocity") {
    FrictionParams p;
    p.c_f = 50.0;
    CHECK(coulomb_force(2.0, p).value() == doctest::Approx(-50.0));
    CHECK(coulomb_force(-0.3, p).value() == doctest::Approx(50.0));

    p.c_f = 1.148;
    CHECK(coulomb_force(-0.1, p).value() == doctest::Approx(1.148));
}

TEST_CASE("coulomb_force: set-valued at x2 = 0") {
    FrictionParams p;
    p.c_f = 1.0;
    const ForceValue f = coulomb_force(0.0, p);
    CHECK(f.is_interval());
    CHECK(f.lo == doctest::Approx(-1.0));
    CHECK(f.hi == doctest::Approx(1.0));
    CHECK(f.contains(0.0));
    CHECK(f.contains(-1.0));
    CHECK_FALSE(f.contains(1.0 + 1e-12));
}

TEST_CASE("coulomb_force: odd in x2") {
    FrictionParams p;
    p.c_f = 3.7;
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> vel(-10.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const double x2 = vel(rng);
        if (x2 == 0.0) continue;
        CHECK(coulomb_force(x2, p).value() == -coulomb_force(-x2, p).value());
    }
}

TEST_CASE("presliding_branch: frozen values") {
    CHECK(presliding_branch(0.0) == 0.0);
    CHECK(presliding_branch(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(presliding_branch(-1.0) == doctest::Approx(-1.0).epsilon(1e-14));
    // z*(1 - ln z) at z = 1/e gives 2/e
    CHECK(presliding_branch(std::exp(-1.0)) ==
          doctest::Approx(0.73575888234288467).epsilon(1e-14));
    CHECK(presliding_branch(-std::exp(-1.0)) ==
          doctest::Approx(-0.73575888234288467).epsilon(1e-14));
}

TEST_CASE("presliding_branch: odd, continuous at 0, monotone on [0, 1]") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double z = dist(rng);
        CHECK(presliding_branch(-z) == -presliding_branch(z));
    }
    // limit at 0: z*(1 - ln z) -> 0
    CHECK(std::abs(presliding_branch(1e-12)) < 1e-9);
    CHECK(std::abs(presliding_branch(-1e-12)) < 1e-9);
    // strict increase on a dense grid
    double prev = 0.0;
    for (int i = 1; i <= 10000; ++i) {
        const double z = static_cast<double>(i) / 10000.0;
        const double v = presliding_branch(z);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("presliding_branch: rejects |z| > 1") {
    CHECK_THROWS_AS(presliding_branch(1.0 + 1e-9), std::domain_error);
    CHECK_THROWS_AS(presliding_branch(-1.5), std::domain_error);
}

TEST_CASE("presliding_force: frozen values") {
    FrictionParams p;
    p.c_f = 1.0;
    p.s = 500.0;
    p.model = FrictionModel::Presliding;

    PreslidingState ps;
    ps.z = 0.0;
    ps.f_r = 0.3;
    // at z = 0 the force equals the reversal memory
    CHECK(presliding_force(ps, 1.0, p).value() == doctest::Approx(0.3).epsilon(1e-14));

    ps.z = 0.5;
    ps.f_r = -1.0;
    // |1 - (-1)| * branch(0.5) - 1 = 2*0.5*(1 - ln 0.5) - 1 = ln 2
    CHECK(presliding_force(ps, 1.0, p).value() ==
          doctest::Approx(0.69314718055994529).epsilon(1e-13));

    ps.z = 1.0;
    // saturated branch reaches the full sliding level regardless of memory
    CHECK(presliding_force(ps, 1.0, p).value() == doctest::Approx(1.0).epsilon(1e-14));

    p.c_f = 50.0;
    CHECK(presliding_force(ps, 1.0, p).value() == doctest::Approx(50.0).epsilon(1e-14));
}

TEST_CASE("presliding_force: requires a definite direction") {
    FrictionParams p;
    p.model = FrictionModel::Presliding;
    PreslidingState ps;
    CHECK_THROWS_AS(presliding_force(ps, 0.0, p), std::invalid_argument);
    CHECK_THROWS_AS(presliding_force(ps, 0.5, p), std::invalid_argument);
}

TEST_CASE("presliding_force: continuous match to sliding branch at |z| = 1") {
    FrictionParams p;
    p.c_f = 2.5;
    p.s = 500.0;
    p.model = FrictionModel::Presliding;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mem(-1.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        PreslidingState ps;
        ps.f_r = mem(rng);
        ps.z = 1.0;
        CHECK(presliding_force(ps, 1.0, p).value() == doctest::Approx(2.5).epsilon(1e-12));
        ps.z = -1.0;
        CHECK(presliding_force(ps, -1.0, p).value() == doctest::Approx(-2.5).epsilon(1e-12));
    }
}

TEST_CASE("presliding_force: bounded by c_f along admissible branches") {
    FrictionParams p;
    p.c_f = 1.0;
    p.s = 500.0;
    p.model = FrictionModel::Presliding;
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> mem(-1.0, 1.0);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double dir = (i % 2 == 0) ? 1.0 : -1.0;
        PreslidingState ps;
        ps.f_r = mem(rng);
        ps.z = dir * dist(rng);  // motion accumulates z in the travel direction
        const double f = presliding_force(ps, dir, p).value();
        CHECK(std::abs(f) <= 1.0 + 1e-12);
    }
}

TEST_CASE("reversal_update resets distance and stores the memory level") {
    PreslidingState ps;
    ps.z = 0.8;
    ps.f_r = -0.2;
    ps.regime = PreslidingRegime::Sliding;
    const PreslidingState next = reversal_update(ps, 0.65);
    CHECK(next.z == 0.0);
    CHECK(next.f_r == doctest::Approx(0.65));
    CHECK(next.regime == PreslidingRegime::Presliding);
}

TEST_CASE("advance_presliding_distance accumulates and saturates") {
    FrictionParams p;
    p.s = 500.0;
    p.model = FrictionModel::Presliding;

    PreslidingState ps;
    PreslidingState next = advance_presliding_distance(ps, 0.002, 0.4, p);
    CHECK(next.z == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(next.regime == PreslidingRegime::Presliding);

    next.z = 0.95;
    next = advance_presliding_distance(next, 0.002, 0.1, p);
    CHECK(next.z == doctest::Approx(1.0));
    CHECK(next.regime == PreslidingRegime::Sliding);

    // zero velocity leaves the state untouched
    const PreslidingState frozen = advance_presliding_distance(ps, 0.0, 1.0, p);
    CHECK(frozen.z == ps.z);
}

namespace {

/// Trapezoid loop area of a closed symmetric presliding cycle swinging between
/// normalized friction levels -f_star and +f_star. Returns the signed integral
/// of friction over displacement, traversed in the physical direction.
double symmetric_loop_area(double f_star, const FrictionParams& p, int n_pts) {
    // rising branch from memory -f_star: f(z) = (1 + f_star)*branch(z) - f_star
    // reaches +f_star at branch(z*) = 2 f_star / (1 + f_star)
    const double target = 2.0 * f_star / (1.0 + f_star);
    double z_star = 1.0;
    {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            (presliding_branch(mid) < target ? lo : hi) = mid;
        }
        z_star = 0.5 * (lo + hi);
    }
    PreslidingState up;
    up.f_r = -f_star;
    PreslidingState dn;
    dn.f_r = f_star;
    double area = 0.0;
    double f_prev_up = presliding_force(up, 1.0, p).value();
    double f_prev_dn = presliding_force(dn, -1.0, p).value();
    for (int i = 1; i <= n_pts; ++i) {
        const double z = z_star * static_cast<double>(i) / n_pts;
        up.z = z;
        dn.z = -z;
        const double f_up = presliding_force(up, 1.0, p).value();
        const double f_dn = presliding_force(dn, -1.0, p).value();
        const double dx = z_star / n_pts / p.s;
        area += 0.5 * (f_up + f_prev_up) * dx;   // forward leg
        area += 0.5 * (f_dn + f_prev_dn) * -dx;  // return leg
        f_prev_up = f_up;
        f_prev_dn = f_dn;
    }
    return area;
}

}  // namespace

TEST_CASE("presliding hysteresis loops enclose positive (clockwise) area") {
    FrictionParams p;
    p.c_f = 1.0;
    p.s = 500.0;
    p.model = FrictionModel::Presliding;
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> level(0.05, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double f_star = level(rng);
        CHECK(symmetric_loop_area(f_star, p, 64) > 0.0);
    }
}
