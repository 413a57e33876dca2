#pragma once

#include <utility>
#include <vector>

#include "relayfric/integrator.hpp"

namespace relayfric {

struct ReversalRecord {
    double t = 0.0;
    double x1 = 0.0;
    double f_p = 0.0;  ///< normalized friction level at the reversal
};

struct LimitCycleReport {
    bool detected = false;
    double amplitude = 0.0;  ///< half peak-to-peak of x1 over the final full cycle, m
    double period = 0.0;     ///< s
    std::vector<double> reversal_amplitude_sequence;
    double contraction_ratio = 0.0;  ///< |a_{n+1} - a*| / |a_n - a*| estimate
};

struct SteadyStateError {
    double t_start = 0.0;
    double t_end = 0.0;
    double mean_abs_error = 0.0;
    double band_lo = 0.0;  ///< theoretical residual interval (rest set), for context
    double band_hi = 0.0;
};

/// One record per VelocityReversal event.
std::vector<ReversalRecord> detect_reversals(const Trajectory& traj);

/// Detects a steady oscillation from the reversal-amplitude sequence: the last
/// three inter-reversal amplitude changes must be below rel_tol (relative).
/// Requires at least 6 reversals. A run that terminated Converged never detects.
LimitCycleReport detect_limit_cycle(const Trajectory& traj, double rel_tol = 0.01);

/// Mean |x1| over the trailing window (positions are already reference-relative).
SteadyStateError steady_state_error(const Trajectory& traj, double window_fraction);

/// Signed friction force-displacement loop integral over [t1, t2]; positive =
/// dissipated energy. Endpoints must carry matching friction values (closed cycle).
double hysteresis_loop_energy(const Trajectory& traj, double t1, double t2,
                              double closure_tol = 0.05);

/// Control input energy over [t1, t2] (line integral of u along x1).
double input_energy(const Trajectory& traj, double t1, double t2);

/// Dominant oscillation of x1 over the trailing window: (frequency rad/s,
/// first-harmonic amplitude m). Periodogram peak with local refinement.
std::pair<double, double> oscillation_spectrum(const Trajectory& traj,
                                               double window_fraction = 0.5);

}  // namespace relayfric
