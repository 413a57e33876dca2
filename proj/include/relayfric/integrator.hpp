#pragma once

#include <functional>
#include <string>
#include <vector>

#include "relayfric/plant.hpp"

namespace relayfric {

/// One hybrid simulation setup.
struct Scenario {
    PlantParams plant{};
    SystemState x0{};
    double t_end = 1.0;
    double dt_max = 1e-3;
    double event_tol = 1e-10;          ///< time localization tolerance, s
    double convergence_radius = 1e-6;  ///< norm ball declaring arrival at the origin
    double rest_velocity_tol = 1e-9;   ///< |x2| below which a sticking state is captured
    bool weighted_norm = false;        ///< use ||(sqrt(k)*x1, x2)|| for convergence
    bool pad_to_t_end = false;         ///< keep emitting frozen samples after a terminal event
    unsigned sample_stride = 1;        ///< record every n-th regular step (events always recorded)
};

void validate(const Scenario& sc);

enum class EventKind {
    RelaySwitch,
    VelocityReversal,
    StickEntry,
    StickExit,
    PreslidingToSliding,
    SlidingToPresliding,
};

struct HybridEvent {
    double t = 0.0;
    EventKind kind = EventKind::VelocityReversal;
    SystemState state_before{};
    SystemState state_after{};
};

enum class Termination { TimeUp, Converged, StuckOffOrigin };

struct TrajectorySample {
    double t = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double u = 0.0;        ///< control force reaching the plant
    double f = 0.0;        ///< friction force reaching the plant
    double z = 0.0;        ///< normalized presliding distance (0 for discontinuous model)
    PreslidingRegime regime = PreslidingRegime::Sliding;
    MotionMode motion = MotionMode::Moving;
    double e_in = 0.0;     ///< running integral of u*x2 (control input energy)
    double e_fric = 0.0;   ///< running integral of f*x2 (friction work, negative = dissipated)
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<HybridEvent> events;
    Termination termination = Termination::TimeUp;
    Scenario scenario{};
};

/// Integrate the closed-loop hybrid system with event localization for relay
/// switches, velocity reversals, stick capture, and presliding regime changes.
Trajectory integrate(const Scenario& scenario);

/// Bisection localization of a guard's zero crossing. The guard is evaluated
/// at absolute times in [bracket_lo, bracket_hi]; its values at the bracket
/// ends must have opposite signs. Returns a time within tol of the crossing.
double locate_event(const std::function<double(double)>& guard, double bracket_lo,
                    double bracket_hi, double tol);

std::string to_string(EventKind k);
std::string to_string(Termination t);
std::string to_string(MotionMode m);
std::string to_string(PreslidingRegime r);

}  // namespace relayfric
