#include "relayfric/plant.hpp"

#include <cmath>
#include <stdexcept>

namespace relayfric {

namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

void validate(const PlantParams& p) {
    if (p.k < 0.0 || p.c < 0.0 || p.gamma < 0.0 || p.f_bound < 0.0)
        throw std::invalid_argument("plant: k, c, gamma, f_bound must be >= 0");
    if (p.actuator_lag && !(*p.actuator_lag > 0.0))
        throw std::invalid_argument("plant: actuator lag time constant must be > 0");
    if (!(p.friction.c_f > 0.0)) throw std::invalid_argument("plant: c_f must be > 0");
    if (p.friction.model == FrictionModel::Presliding && !(p.friction.s > 0.0))
        throw std::invalid_argument("plant: s must be > 0 for the presliding model");
}

ForceValue relay_control(double x1, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("relay_control: gamma must be >= 0");
    if (x1 > 0.0) return ForceValue::single(-gamma);
    if (x1 < 0.0) return ForceValue::single(gamma);
    return ForceValue::interval(-gamma, gamma);
}

VectorFieldValue closed_loop_field(const SystemState& state, const PlantParams& p) {
    validate(p);
    if (!std::isfinite(state.x1) || !std::isfinite(state.x2))
        throw std::invalid_argument("closed_loop_field: non-finite state");

    const double base = -p.k * state.x1 - p.c * state.x2;

    ForceValue fric;
    if (p.friction.model == FrictionModel::Presliding &&
        state.presliding.regime == PreslidingRegime::Presliding) {
        double dir = sign(state.x2);
        if (dir == 0.0) dir = state.presliding.z != 0.0 ? sign(state.presliding.z) : 1.0;
        fric = ForceValue::single(-presliding_force(state.presliding, dir, p.friction).value());
    } else {
        fric = coulomb_force(state.x2, p.friction);
    }

    ForceValue u;
    if (p.actuator_lag && state.actuator_state) {
        u = ForceValue::single(*state.actuator_state);
        // friction enters the plant through the same lag filter in this case
        fric = ForceValue::single(0.0);
    } else {
        u = relay_control(state.x1, p.gamma);
    }

    return {state.x2, ForceValue::interval(base + fric.lo + u.lo, base + fric.hi + u.hi)};
}

std::pair<VectorFieldValue, VectorFieldValue> filippov_limits(double x1, const PlantParams& p) {
    validate(p);
    const double cf = p.friction.c_f;
    VectorFieldValue gp{0.0, ForceValue::single(-p.k * x1 - cf)};
    VectorFieldValue gm{0.0, ForceValue::single(-p.k * x1 + cf)};
    return {gp, gm};
}

bool stick_condition(double x1, const PlantParams& p) {
    validate(p);
    if (x1 == 0.0) return true;
    return std::abs(-p.k * x1 - p.gamma * sign(x1)) <= p.friction.c_f;
}

bool stick_condition_with_control(double x1, double u, const PlantParams& p) {
    validate(p);
    return std::abs(-p.k * x1 + u) <= p.friction.c_f;
}

ForceValue invariant_set(const PlantParams& p) {
    validate(p);
    const double cf = p.friction.c_f;
    if (p.gamma > cf) return ForceValue::single(0.0);
    if (p.k == 0.0)
        throw std::domain_error("invariant_set: unbounded (every position sticks with k = 0)");
    const double half = (cf - p.gamma) / p.k;
    return ForceValue::interval(-half, half);
}

}  // namespace relayfric
