#pragma once

#include <array>
#include <vector>

#include "relayfric/integrator.hpp"

namespace relayfric {

/// Coefficients of the continuous twisting Lyapunov function.
/// u_upper = gamma + c_f - f, u_lower = gamma - c_f + f, r = sqrt(u_lower/u_upper),
/// alpha1 = 1/U, alpha2 = (1/r + r)/(U(1-r)), alpha3 = -1/U*, alpha4 = a1+a2-a3.
struct TwistingBounds {
    double gamma = 0.0;
    double c_f = 0.0;
    double f = 0.0;
    double u_upper = 0.0;
    double u_lower = 0.0;
    double r = 0.0;
    std::array<double, 4> alpha{};
};

TwistingBounds twisting_bounds(double gamma, double c_f, double f = 0.0);

/// 0.5*k*x1^2 + 0.5*x2^2.
double v_quadratic(double x1, double x2, double k);

/// Time derivative of v_quadratic along the unforced closed loop: -c*x2^2 - c_f*|x2|.
double v_quadratic_rate(double x2, double c, double c_f);

/// Piecewise Lyapunov function: a1|x2| + a2*sqrt(x2^2 + 2U|x1|) for x1*x2 > 0,
/// a3|x2| + a4*sqrt(x2^2 + 2U*|x1|) otherwise. Continuous, positive definite.
double v_twisting(double x1, double x2, const TwistingBounds& b);

enum class Quadrant { SameSign, OppositeSign };  ///< sign of x1*x2

/// Guaranteed decrease rate: -1 on x1*x2 > 0, -(gamma-c_f-f)/(gamma+c_f+f) on x1*x2 < 0.
double vdot_bound(const TwistingBounds& b, Quadrant q);

/// Upper bound on the time to reach the origin from x0. Equal to v_twisting(x0):
/// with f = 0 the decrease rate is exactly -1 along double-integrator trajectories,
/// so V(x0) is a tight bound.
double convergence_time_bound(double x1_0, double x2_0, const TwistingBounds& b);

/// Closed-form settle-time expression for x2(0) = 0 starts:
/// gamma*(1+sqrt((gamma-c_f)/(gamma+c_f)))/(gamma*c_f+c_f^2)*sqrt(2(gamma-c_f)|x1|).
/// Identical to r^2 * v_twisting((x1,0)); used by the gain sweep curve. Note this
/// expression is NOT an upper bound on the simulated convergence time (see README).
double settle_time_closed_form(double gamma, double c_f, double x1_0);

/// 0.5*x2^2 + gamma*|x1| (reduced coordinates, double integrator).
double v_reduced(double x1, double x2, double gamma);

/// Rate of v_reduced for the discontinuous model: -c_f*|x2|.
double v_reduced_rate_discontinuous(double x2, double c_f);

/// Rate of v_reduced in presliding: -c_f * x2 * f_p; may be positive.
double v_reduced_rate_presliding(double x2, double f_p, double c_f);

struct DecreaseViolation {
    double t = 0.0;
    double observed = 0.0;
    double bound = 0.0;
};

struct DecreaseReport {
    double max_rate_same_sign = 0.0;
    double max_rate_opposite_sign = 0.0;
    double bound_same_sign = 0.0;
    double bound_opposite_sign = 0.0;
    std::size_t pairs_same_sign = 0;
    std::size_t pairs_opposite_sign = 0;
    std::vector<DecreaseViolation> violations;
};

/// Finite-difference check of the decrease rates along a simulated trajectory.
/// Requires a k = c = 0 discontinuous run; samples within exclusion_band of a
/// switching line (in either coordinate, scaled by local speed) are skipped.
/// exclusion_band <= 0 picks a default proportional to dt_max. bound_scale
/// multiplies the theoretical rates (harness self-test hook; 1 = nominal).
DecreaseReport verify_decrease(const Trajectory& traj, const TwistingBounds& b,
                               double exclusion_band = 0.0, double bound_scale = 1.0);

}  // namespace relayfric
