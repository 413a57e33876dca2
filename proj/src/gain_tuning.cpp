#include "relayfric/gain_tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "relayfric/errors.hpp"
#include "relayfric/lyapunov.hpp"

namespace relayfric {

namespace {

void check_grid(std::span<const double> grid, double min_ratio) {
    if (grid.empty()) throw std::invalid_argument("gain sweep: empty ratio grid");
    double prev = -std::numeric_limits<double>::infinity();
    for (double r : grid) {
        if (!(r > min_ratio)) throw std::invalid_argument("gain sweep: ratio out of range");
        if (!(r > prev)) throw std::invalid_argument("gain sweep: grid must be strictly increasing");
        prev = r;
    }
}

}  // namespace

GainSweepResult bound_curve(double c_f, double x1_0, std::span<const double> grid) {
    if (!(c_f > 0.0)) throw std::invalid_argument("bound_curve: c_f must be > 0");
    check_grid(grid, 1.0);
    GainSweepResult out;
    out.grid.assign(grid.begin(), grid.end());
    out.bound_values.reserve(grid.size());
    for (double r : grid) out.bound_values.push_back(settle_time_closed_form(r * c_f, c_f, x1_0));
    const auto it = std::min_element(out.bound_values.begin(), out.bound_values.end());
    out.argmin_bound = out.grid[static_cast<std::size_t>(it - out.bound_values.begin())];
    out.monotonic_bound = std::is_sorted(out.bound_values.begin(), out.bound_values.end()) ||
                          std::is_sorted(out.bound_values.rbegin(), out.bound_values.rend());
    return out;
}

double minimize_scalar(const std::function<double(double)>& objective, double lo, double hi,
                       int scan_points) {
    if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: empty interval");
    if (scan_points < 3) throw std::invalid_argument("minimize_scalar: too few scan points");
    double best_x = lo, best_f = objective(lo);
    const double step = (hi - lo) / (scan_points - 1);
    for (int i = 1; i < scan_points; ++i) {
        const double x = lo + i * step;
        const double f = objective(x);
        if (f < best_f) {
            best_f = f;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - step);
    double b = std::min(hi, best_x + step);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = objective(c), fd = objective(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = objective(d);
        }
    }
    return 0.5 * (a + b);
}

BoundMinimumReport minimize_bound(double c_f, double x1_0, double ratio_lo, double ratio_hi) {
    if (!(c_f > 0.0)) throw std::invalid_argument("minimize_bound: c_f must be > 0");
    if (!(ratio_lo > 1.0) || !(ratio_lo < ratio_hi))
        throw std::domain_error("minimize_bound: interval must lie strictly inside (1, inf)");

    auto obj = [&](double r) { return settle_time_closed_form(r * c_f, c_f, x1_0); };

    constexpr int kScan = 1000;
    const double step = (ratio_hi - ratio_lo) / (kScan - 1);
    std::vector<double> vals(kScan);
    for (int i = 0; i < kScan; ++i) vals[i] = obj(ratio_lo + i * step);

    BoundMinimumReport rep;
    rep.boundary_limit = vals.front();
    int interior = -1;
    for (int i = 1; i + 1 < kScan; ++i) {
        if (vals[i] < vals[i - 1] && vals[i] < vals[i + 1]) {
            interior = i;
            break;
        }
    }
    if (interior >= 0) {
        rep.interior_minimum = true;
        rep.ratio = minimize_scalar(obj, ratio_lo + (interior - 1) * step,
                                    ratio_lo + (interior + 1) * step, 64);
        rep.objective = obj(rep.ratio);
        rep.finding = "interior stationary point found by derivative sign change";
        return rep;
    }
    rep.interior_minimum = false;
    rep.monotone_increasing = std::is_sorted(vals.begin(), vals.end());
    rep.ratio = rep.monotone_increasing ? ratio_lo : ratio_hi;
    rep.objective = obj(rep.ratio);
    rep.finding = rep.monotone_increasing
                      ? "closed-form settle time is monotone increasing over the interval and "
                        "tends to 0 as the ratio approaches 1 from above, so no interior "
                        "stationary point exists (in particular none near ratio 1.12); use the "
                        "empirical sweep as the authoritative tuning source"
                      : "closed-form settle time is monotone decreasing over the interval";
    return rep;
}

GainSweepResult empirical_gain_sweep(const Scenario& base, std::span<const double> grid) {
    validate(base);
    if (base.plant.friction.model != FrictionModel::Discontinuous || base.plant.k != 0.0 ||
        base.plant.c != 0.0 || base.x0.x2 != 0.0 || base.plant.actuator_lag)
        throw std::invalid_argument(
            "empirical_gain_sweep: base scenario must be the rest-started double integrator "
            "with discontinuous friction");
    check_grid(grid, 0.0);

    const double c_f = base.plant.friction.c_f;
    GainSweepResult out;
    out.grid.assign(grid.begin(), grid.end());
    out.has_sim = true;
    const double inf = std::numeric_limits<double>::infinity();
    for (double r : grid) {
        out.bound_values.push_back(r > 1.0 ? settle_time_closed_form(r * c_f, c_f, base.x0.x1)
                                           : inf);
        Scenario sc = base;
        sc.plant.gamma = r * c_f;
        sc.pad_to_t_end = false;
        const Trajectory traj = integrate(sc);
        out.sim_times.push_back(traj.termination == Termination::Converged
                                    ? traj.samples.back().t
                                    : inf);
    }
    const auto bi = std::min_element(out.bound_values.begin(), out.bound_values.end());
    out.argmin_bound = out.grid[static_cast<std::size_t>(bi - out.bound_values.begin())];
    const auto si = std::min_element(out.sim_times.begin(), out.sim_times.end());
    if (!std::isfinite(*si))
        throw SimulationError("empirical_gain_sweep: no grid point converged");
    out.argmin_sim = out.grid[static_cast<std::size_t>(si - out.sim_times.begin())];
    out.monotonic_bound = std::is_sorted(out.bound_values.begin(), out.bound_values.end());
    return out;
}

}  // namespace relayfric
