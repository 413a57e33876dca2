#pragma once

#include <optional>

#include "relayfric/friction.hpp"

namespace relayfric {

/// Unit-mass closed-loop plant: x1' = x2, x2' = -k*x1 - c*x2 + friction + u
/// with relay control u = -gamma*sign(x1). An optional first-order actuator
/// lag (time constant T) low-pass filters the combined relay forces.
struct PlantParams {
    double k = 0.0;      ///< position feedback gain, 1/s^2
    double c = 0.0;      ///< velocity feedback gain, 1/s
    FrictionParams friction{};
    double gamma = 0.0;  ///< relay gain, m/s^2
    double f_bound = 0.0;  ///< perturbation magnitude bound, m/s^2
    std::optional<double> actuator_lag{};  ///< filter time constant T, s

    bool operator==(const PlantParams&) const = default;
};

enum class MotionMode { Moving, Stuck };

struct SystemState {
    double x1 = 0.0;
    double x2 = 0.0;
    PreslidingState presliding{};
    MotionMode motion = MotionMode::Moving;
    std::optional<double> actuator_state{};  ///< lag filter value, m/s^2

    bool operator==(const SystemState&) const = default;
};

struct VectorFieldValue {
    double dx1 = 0.0;
    ForceValue dx2{};
};

void validate(const PlantParams& p);

/// Relay control -gamma*sign(x1); set-valued [-gamma, gamma] on the switching line.
ForceValue relay_control(double x1, double gamma);

/// Full closed-loop right-hand side. dx2 is interval-valued wherever a
/// discontinuous term is evaluated on its switching set.
VectorFieldValue closed_loop_field(const SystemState& state, const PlantParams& p);

/// Unforced Filippov limit fields on the x2 = 0 manifold:
/// g+ = (0, -k*x1 - c_f) and g- = (0, -k*x1 + c_f).
std::pair<VectorFieldValue, VectorFieldValue> filippov_limits(double x1, const PlantParams& p);

/// True when, at rest at x1, the non-friction force is within friction
/// capacity: |-k*x1 - gamma*sign(x1)| <= c_f (always true at x1 = 0).
bool stick_condition(double x1, const PlantParams& p);

/// Stick condition with an explicit applied force u instead of the relay.
bool stick_condition_with_control(double x1, double u, const PlantParams& p);

/// Positions where a resting state stays at rest forever.
/// gamma = 0: [-c_f/k, c_f/k]; gamma > c_f: {0}; 0 < gamma <= c_f:
/// [-(c_f-gamma)/k, (c_f-gamma)/k]. Throws when the set is the whole axis (k = 0).
ForceValue invariant_set(const PlantParams& p);

}  // namespace relayfric
