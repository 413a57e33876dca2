#include "relayfric/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "relayfric/errors.hpp"

namespace relayfric {

TwistingBounds twisting_bounds(double gamma, double c_f, double f) {
    if (!(c_f > 0.0) || gamma < 0.0 || f < 0.0)
        throw std::invalid_argument("twisting_bounds: need c_f > 0, gamma >= 0, f >= 0");
    TwistingBounds b;
    b.gamma = gamma;
    b.c_f = c_f;
    b.f = f;
    b.u_upper = gamma + c_f - f;
    b.u_lower = gamma - c_f + f;
    if (!(b.u_lower > 0.0) || !(b.u_upper > b.u_lower))
        throw std::domain_error("twisting_bounds: stability violated, need gamma > c_f - f and U > U*");
    b.r = std::sqrt(b.u_lower / b.u_upper);
    const double a1 = 1.0 / b.u_upper;
    const double a2 = (1.0 / b.r + b.r) / (b.u_upper * (1.0 - b.r));
    const double a3 = -1.0 / b.u_lower;
    b.alpha = {a1, a2, a3, a1 + a2 - a3};
    return b;
}

double v_quadratic(double x1, double x2, double k) {
    if (k < 0.0) throw std::invalid_argument("v_quadratic: k must be >= 0");
    return 0.5 * k * x1 * x1 + 0.5 * x2 * x2;
}

double v_quadratic_rate(double x2, double c, double c_f) {
    return -c * x2 * x2 - c_f * std::abs(x2);
}

double v_twisting(double x1, double x2, const TwistingBounds& b) {
    if (x1 * x2 > 0.0)
        return b.alpha[0] * std::abs(x2) + b.alpha[1] * std::sqrt(x2 * x2 + 2.0 * b.u_upper * std::abs(x1));
    return b.alpha[2] * std::abs(x2) + b.alpha[3] * std::sqrt(x2 * x2 + 2.0 * b.u_lower * std::abs(x1));
}

double vdot_bound(const TwistingBounds& b, Quadrant q) {
    if (q == Quadrant::SameSign) return -1.0;
    return -(b.gamma - b.c_f - b.f) / (b.gamma + b.c_f + b.f);
}

double convergence_time_bound(double x1_0, double x2_0, const TwistingBounds& b) {
    return v_twisting(x1_0, x2_0, b);
}

double settle_time_closed_form(double gamma, double c_f, double x1_0) {
    if (!(c_f > 0.0) || !(gamma > c_f))
        throw std::domain_error("settle_time_closed_form: need gamma > c_f > 0");
    return gamma * (1.0 + std::sqrt((gamma - c_f) / (gamma + c_f))) / (gamma * c_f + c_f * c_f) *
           std::sqrt(2.0 * (gamma - c_f) * std::abs(x1_0));
}

double v_reduced(double x1, double x2, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("v_reduced: gamma must be > 0");
    return 0.5 * x2 * x2 + gamma * std::abs(x1);
}

double v_reduced_rate_discontinuous(double x2, double c_f) { return -c_f * std::abs(x2); }

double v_reduced_rate_presliding(double x2, double f_p, double c_f) { return -c_f * x2 * f_p; }

DecreaseReport verify_decrease(const Trajectory& traj, const TwistingBounds& b,
                               double exclusion_band, double bound_scale) {
    const PlantParams& p = traj.scenario.plant;
    if (p.k != 0.0 || p.c != 0.0 || p.friction.model != FrictionModel::Discontinuous ||
        p.actuator_lag)
        throw std::domain_error(
            "verify_decrease: requires a k = c = 0 discontinuous-friction trajectory");

    const double accel_max = p.gamma + p.friction.c_f;
    double x2_max = 0.0;
    for (const auto& s : traj.samples) x2_max = std::max(x2_max, std::abs(s.x2));
    const double dt = traj.scenario.dt_max;
    const double eps_x2 = exclusion_band > 0.0 ? exclusion_band : 2.0 * dt * accel_max;
    const double eps_x1 = exclusion_band > 0.0 ? exclusion_band : 2.0 * dt * std::max(x2_max, 1e-30);
    const double tol = 10.0 * dt * accel_max;

    DecreaseReport rep;
    rep.bound_same_sign = bound_scale * vdot_bound(b, Quadrant::SameSign);
    rep.bound_opposite_sign = bound_scale * vdot_bound(b, Quadrant::OppositeSign);
    rep.max_rate_same_sign = -std::numeric_limits<double>::infinity();
    rep.max_rate_opposite_sign = -std::numeric_limits<double>::infinity();

    auto near_switching = [&](const TrajectorySample& s) {
        return std::abs(s.x1) < eps_x1 || std::abs(s.x2) < eps_x2;
    };

    for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
        const auto& a = traj.samples[i];
        const auto& c2 = traj.samples[i + 1];
        if (a.motion != MotionMode::Moving || c2.motion != MotionMode::Moving) continue;
        if (near_switching(a) || near_switching(c2)) continue;
        const double qa = a.x1 * a.x2;
        const double qb = c2.x1 * c2.x2;
        if ((qa > 0.0) != (qb > 0.0)) continue;  // straddles a switching line
        const double dtau = c2.t - a.t;
        if (!(dtau > 0.0)) continue;
        const double rate = (v_twisting(c2.x1, c2.x2, b) - v_twisting(a.x1, a.x2, b)) / dtau;
        const Quadrant q = qa > 0.0 ? Quadrant::SameSign : Quadrant::OppositeSign;
        const double bound = bound_scale * vdot_bound(b, q);
        if (q == Quadrant::SameSign) {
            rep.max_rate_same_sign = std::max(rep.max_rate_same_sign, rate);
            ++rep.pairs_same_sign;
        } else {
            rep.max_rate_opposite_sign = std::max(rep.max_rate_opposite_sign, rate);
            ++rep.pairs_opposite_sign;
        }
        if (rate > bound + tol) rep.violations.push_back({a.t, rate, bound});
    }

    if (rep.pairs_same_sign < 3 || rep.pairs_opposite_sign < 3)
        throw InsufficientDataError("verify_decrease: fewer than 3 usable sample pairs per quadrant");
    return rep;
}

}  // namespace relayfric
