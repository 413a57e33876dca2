#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "relayfric/integrator.hpp"

namespace relayfric {

struct GainSweepResult {
    std::vector<double> grid;          ///< gamma/c_f ratios, strictly increasing, all > 1
    std::vector<double> bound_values;  ///< closed-form settle-time curve
    std::vector<double> sim_times;     ///< measured convergence times (+inf = not converged)
    double argmin_bound = 0.0;
    double argmin_sim = 0.0;
    bool has_sim = false;
    bool monotonic_bound = false;
};

struct BoundMinimumReport {
    bool interior_minimum = false;
    double ratio = 0.0;          ///< stationary ratio when interior, else interval edge
    double objective = 0.0;      ///< settle-time value at `ratio`
    bool monotone_increasing = false;
    double boundary_limit = 0.0;  ///< objective limit toward the lower interval edge
    std::string finding;
};

/// Closed-form settle-time curve over a grid of gamma/c_f ratios.
GainSweepResult bound_curve(double c_f, double x1_0, std::span<const double> grid);

/// Locate the minimizer of the closed-form settle time over a ratio interval.
/// Distinguishes an interior stationary point from monotone behavior; never
/// silently reports an interval edge as an optimum.
BoundMinimumReport minimize_bound(double c_f, double x1_0, double ratio_lo, double ratio_hi);

/// Dense scan plus golden-section refinement of a scalar objective (harness
/// utility; also backs minimize_bound).
double minimize_scalar(const std::function<double(double)>& objective, double lo, double hi,
                       int scan_points = 400);

/// Run one simulation per ratio (gamma = ratio * c_f on the base scenario) and
/// record times to the convergence radius; non-convergent runs score +inf.
GainSweepResult empirical_gain_sweep(const Scenario& base, std::span<const double> grid);

}  // namespace relayfric
