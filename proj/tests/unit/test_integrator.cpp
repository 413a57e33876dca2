#include <doctest.h>

#include <cmath>

#include "relayfric/integrator.hpp"
#include "relayfric/lyapunov.hpp"

using namespace relayfric;

namespace {

Scenario twisting_scenario() {
    Scenario sc;
    sc.plant.friction.c_f = 1.0;
    sc.plant.gamma = 1.5;
    sc.x0.x1 = 1.0;
    sc.t_end = 10.0;
    sc.dt_max = 1e-3;
    sc.event_tol = 1e-10;
    sc.convergence_radius = 1e-6;
    return sc;
}

Scenario lab_scenario(double gamma, double x1_0) {
    Scenario sc;
    sc.plant.k = 5600.0;
    sc.plant.c = 150.0;
    sc.plant.friction.c_f = 1.148;
    sc.plant.gamma = gamma;
    sc.x0.x1 = x1_0;
    sc.t_end = 2.0;
    sc.dt_max = 1e-4;
    return sc;
}

}  // namespace

TEST_CASE("locate_event: bisection on a known crossing") {
    auto guard = [](double t) { return t - 1.5; };
    const double t = locate_event(guard, 0.0, 2.0, 1e-12);
    CHECK(t == doctest::Approx(1.5).epsilon(1e-11));
    CHECK(guard(t) >= 0.0);  // lands at or past the crossing

    auto shifted = [](double t) { return std::cos(t); };
    CHECK(locate_event(shifted, 1.0, 2.0, 1e-12) ==
          doctest::Approx(1.5707963267948966).epsilon(1e-11));

    CHECK_THROWS_AS(locate_event(guard, 2.0, 3.0, 1e-12), std::invalid_argument);
}

TEST_CASE("twisting baseline converges to the origin in finite time") {
    const Trajectory traj = integrate(twisting_scenario());
    CHECK(traj.termination == Termination::Converged);
    REQUIRE_FALSE(traj.samples.empty());
    const TrajectorySample last = traj.samples.back();
    // independently derived convergence time for gamma/c_f = 1.5 from x1 = 1
    CHECK(last.t == doctest::Approx(4.33853).epsilon(1e-3));
    CHECK(std::hypot(last.x1, last.x2) <= 1e-6);
    // within the Lyapunov time bound
    const TwistingBounds b = twisting_bounds(1.5, 1.0);
    CHECK(last.t <= convergence_time_bound(1.0, 0.0, b));
}

TEST_CASE("twisting baseline: events line up with sample sign changes") {
    const Trajectory traj = integrate(twisting_scenario());
    std::size_t reversals = 0;
    std::size_t switches = 0;
    for (const HybridEvent& ev : traj.events) {
        if (ev.kind == EventKind::VelocityReversal) ++reversals;
        if (ev.kind == EventKind::RelaySwitch) ++switches;
    }
    CHECK(reversals >= 6);
    CHECK(switches >= 6);

    // every sampled x2 sign change has a localized reversal nearby
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const auto& a = traj.samples[i - 1];
        const auto& bb = traj.samples[i];
        if (a.x2 > 0.0 && bb.x2 < 0.0) {
            bool found = false;
            for (const HybridEvent& ev : traj.events)
                if (ev.kind == EventKind::VelocityReversal && ev.t >= a.t - 1e-9 &&
                    ev.t <= bb.t + 1e-9)
                    found = true;
            CHECK(found);
        }
    }

    // relay switches snap onto the switching line
    for (const HybridEvent& ev : traj.events)
        if (ev.kind == EventKind::RelaySwitch) CHECK(ev.state_after.x1 == 0.0);
}

TEST_CASE("reversal amplitudes contract geometrically") {
    const Trajectory traj = integrate(twisting_scenario());
    // |x1| at successive reversals contracts by (gamma - c_f)/(gamma + c_f) = 0.2
    std::vector<double> amps;
    for (const HybridEvent& ev : traj.events)
        if (ev.kind == EventKind::VelocityReversal && std::abs(ev.state_after.x1) > 1e-5)
            amps.push_back(std::abs(ev.state_after.x1));
    REQUIRE(amps.size() >= 4);
    for (std::size_t i = 1; i < amps.size(); ++i)
        CHECK(amps[i] / amps[i - 1] == doctest::Approx(0.2).epsilon(1e-2));
}

TEST_CASE("under-compensated double integrator sticks immediately") {
    Scenario sc = twisting_scenario();
    sc.plant.gamma = 0.5;  // gamma < c_f: relay cannot break stiction at rest
    const Trajectory traj = integrate(sc);
    CHECK(traj.termination == Termination::StuckOffOrigin);
    REQUIRE_FALSE(traj.events.empty());
    CHECK(traj.events.front().kind == EventKind::StickEntry);
    CHECK(traj.samples.back().t == doctest::Approx(0.0));
    CHECK(traj.samples.back().x1 == doctest::Approx(1.0));
}

TEST_CASE("uncompensated lab plant parks inside the stiction band") {
    const Trajectory traj = integrate(lab_scenario(0.0, -0.002));
    CHECK(traj.termination == Termination::StuckOffOrigin);
    const double band = 1.148 / 5600.0;
    CHECK(std::abs(traj.samples.back().x1) <= band + 1e-6);
    CHECK(traj.samples.back().x2 == 0.0);
    CHECK(traj.samples.back().motion == MotionMode::Stuck);
}

TEST_CASE("compensated lab plant converges") {
    const Trajectory traj = integrate(lab_scenario(1.214, -0.002));
    CHECK(traj.termination == Termination::Converged);
    CHECK(std::abs(traj.samples.back().x1) <= 1e-6);
}

TEST_CASE("pad_to_t_end keeps emitting frozen samples") {
    Scenario sc = lab_scenario(0.0, -0.002);
    sc.pad_to_t_end = true;
    const Trajectory traj = integrate(sc);
    CHECK(traj.samples.back().t == doctest::Approx(2.0).epsilon(1e-6));
    // frozen tail: position constant after the stick event
    const double parked = traj.samples.back().x1;
    std::size_t tail = 0;
    for (auto it = traj.samples.rbegin(); it != traj.samples.rend() && it->x1 == parked; ++it)
        ++tail;
    CHECK(tail > 100);
}

TEST_CASE("presliding run produces regime-change and reversal events") {
    Scenario sc;
    sc.plant.friction.c_f = 50.0;
    sc.plant.friction.s = 500.0;
    sc.plant.friction.model = FrictionModel::Presliding;
    sc.plant.gamma = 60.0;
    sc.x0.x1 = 1.0;
    sc.t_end = 0.6;
    sc.dt_max = 5e-6;
    sc.event_tol = 1e-12;
    const Trajectory traj = integrate(sc);
    std::size_t to_sliding = 0;
    std::size_t reversals = 0;
    for (const HybridEvent& ev : traj.events) {
        if (ev.kind == EventKind::PreslidingToSliding) ++to_sliding;
        if (ev.kind == EventKind::VelocityReversal) {
            ++reversals;
            // reversal resets the presliding distance
            CHECK(ev.state_after.presliding.z == 0.0);
        }
    }
    CHECK(reversals >= 1);
    CHECK(to_sliding >= 1);
    // z stays normalized throughout
    for (const TrajectorySample& s : traj.samples) CHECK(std::abs(s.z) <= 1.0);
}

TEST_CASE("energy quadratures track the input work") {
    const Trajectory traj = integrate(twisting_scenario());
    // cross-check the integrated e_in against a trapezoid over the samples
    double acc = 0.0;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const auto& a = traj.samples[i - 1];
        const auto& b = traj.samples[i];
        acc += 0.5 * (a.u * a.x2 + b.u * b.x2) * (b.t - a.t);
    }
    CHECK(traj.samples.back().e_in == doctest::Approx(acc).epsilon(1e-2));
    // friction only ever dissipates in the discontinuous model
    CHECK(traj.samples.back().e_fric < 0.0);
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].e_fric <= traj.samples[i - 1].e_fric + 1e-12);
}

TEST_CASE("halving the step leaves the terminal state unchanged within tolerance") {
    Scenario coarse = twisting_scenario();
    Scenario fine = twisting_scenario();
    fine.dt_max = 5e-4;
    const Trajectory a = integrate(coarse);
    const Trajectory b = integrate(fine);
    CHECK(a.termination == b.termination);
    const double dx = std::hypot(a.samples.back().x1 - b.samples.back().x1,
                                 a.samples.back().x2 - b.samples.back().x2);
    CHECK(dx <= 10.0 * coarse.convergence_radius);
    CHECK(std::abs(a.samples.back().t - b.samples.back().t) < 1e-2);
}

TEST_CASE("scenario validation") {
    Scenario sc = twisting_scenario();
    sc.dt_max = 0.0;
    CHECK_THROWS_AS(validate(sc), std::invalid_argument);
    sc = twisting_scenario();
    sc.event_tol = 1e-2;  // larger than dt_max
    CHECK_THROWS_AS(validate(sc), std::invalid_argument);
    sc = twisting_scenario();
    sc.t_end = 1e-4;  // below dt_max
    CHECK_THROWS_AS(validate(sc), std::invalid_argument);
    sc = twisting_scenario();
    sc.sample_stride = 0;
    CHECK_THROWS_AS(validate(sc), std::invalid_argument);
}

TEST_CASE("to_string coverage for enums") {
    CHECK(to_string(EventKind::RelaySwitch) == "RelaySwitch");
    CHECK(to_string(Termination::Converged) == "Converged");
    CHECK(to_string(MotionMode::Stuck) == "Stuck");
    CHECK(to_string(PreslidingRegime::Presliding) == "Presliding");
}
