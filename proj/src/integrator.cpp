#include "relayfric/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "relayfric/errors.hpp"

namespace relayfric {

void validate(const Scenario& sc) {
    validate(sc.plant);
    if (!(sc.event_tol > 0.0) || !(sc.event_tol < sc.dt_max) || !(sc.dt_max <= sc.t_end))
        throw std::invalid_argument("scenario: require 0 < event_tol < dt_max <= t_end");
    if (sc.convergence_radius < 0.0)
        throw std::invalid_argument("scenario: convergence_radius must be >= 0");
    if (sc.rest_velocity_tol < 0.0)
        throw std::invalid_argument("scenario: rest_velocity_tol must be >= 0");
    if (sc.sample_stride < 1) throw std::invalid_argument("scenario: sample_stride must be >= 1");
}

std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::RelaySwitch: return "RelaySwitch";
        case EventKind::VelocityReversal: return "VelocityReversal";
        case EventKind::StickEntry: return "StickEntry";
        case EventKind::StickExit: return "StickExit";
        case EventKind::PreslidingToSliding: return "PreslidingToSliding";
        case EventKind::SlidingToPresliding: return "SlidingToPresliding";
    }
    return "?";
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::TimeUp: return "TimeUp";
        case Termination::Converged: return "Converged";
        case Termination::StuckOffOrigin: return "StuckOffOrigin";
    }
    return "?";
}

std::string to_string(MotionMode m) { return m == MotionMode::Moving ? "Moving" : "Stuck"; }

std::string to_string(PreslidingRegime r) {
    return r == PreslidingRegime::Presliding ? "Presliding" : "Sliding";
}

double locate_event(const std::function<double(double)>& guard, double bracket_lo,
                    double bracket_hi, double tol) {
    if (!(bracket_lo < bracket_hi)) throw std::invalid_argument("locate_event: empty bracket");
    double g_lo = guard(bracket_lo);
    double g_hi = guard(bracket_hi);
    if (g_lo == 0.0) return bracket_lo;
    if (g_hi == 0.0) return bracket_hi;
    if ((g_lo > 0.0) == (g_hi > 0.0))
        throw std::invalid_argument("locate_event: guard has the same sign at both bracket ends");
    double lo = bracket_lo, hi = bracket_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = guard(mid);
        if (g_mid == 0.0) return mid;
        if ((g_mid > 0.0) == (g_lo > 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;  // just past the crossing
}

namespace {

constexpr int kX1 = 0, kX2 = 1, kZ = 2, kW = 3, kEin = 4, kEfr = 5;
using Vec = std::array<double, 6>;

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

class Engine {
public:
    explicit Engine(const Scenario& sc)
        : sc_(sc),
          p_(sc.plant),
          cf_(sc.plant.friction.c_f),
          presliding_(sc.plant.friction.model == FrictionModel::Presliding),
          lag_(sc.plant.actuator_lag.has_value()),
          lag_T_(sc.plant.actuator_lag.value_or(1.0)) {}

    Trajectory run();

private:
    const Scenario& sc_;
    const PlantParams& p_;
    double cf_;
    bool presliding_;
    bool lag_;
    double lag_T_;

    // phase (piecewise-constant between events)
    double s1_ = 1.0;  // relay sign: sign(x1) on the current segment
    double d_ = 1.0;   // velocity direction on the current segment
    double f_r_ = 0.0;
    PreslidingRegime regime_ = PreslidingRegime::Sliding;
    MotionMode motion_ = MotionMode::Moving;

    Vec y_{};
    double t_ = 0.0;
    Trajectory traj_{};
    bool done_ = false;
    std::size_t step_count_ = 0;

    [[nodiscard]] double friction_map() const {
        if (presliding_ && regime_ == PreslidingRegime::Presliding) {
            const double zc = std::clamp(y_[kZ], -1.0, 1.0);
            return -cf_ * (std::abs(d_ - f_r_) * presliding_branch(zc) + f_r_);
        }
        return -cf_ * d_;
    }

    [[nodiscard]] double friction_map_at(double z, double dir, double f_r) const {
        if (presliding_ && regime_ == PreslidingRegime::Presliding) {
            const double zc = std::clamp(z, -1.0, 1.0);
            return -cf_ * (std::abs(dir - f_r) * presliding_branch(zc) + f_r);
        }
        return -cf_ * dir;
    }

    [[nodiscard]] Vec deriv(const Vec& y) const {
        const double x1 = y[kX1], x2 = y[kX2], w = y[kW];
        const double u_relay = -p_.gamma * s1_;
        const double fmap = friction_map_at(y[kZ], d_, f_r_);
        double dx2, dw, u_eff;
        if (lag_) {
            dx2 = -p_.k * x1 - p_.c * x2 + w;
            dw = (u_relay + fmap - w) / lag_T_;
            u_eff = w;
        } else {
            dx2 = -p_.k * x1 - p_.c * x2 + fmap + u_relay;
            dw = 0.0;
            u_eff = u_relay;
        }
        const double dz =
            (presliding_ && regime_ == PreslidingRegime::Presliding) ? p_.friction.s * x2 : 0.0;
        return {x2, dx2, dz, dw, u_eff * x2, fmap * x2};
    }

    [[nodiscard]] Vec rk4(const Vec& y, double h) const {
        const Vec k1 = deriv(y);
        Vec tmp;
        for (int i = 0; i < 6; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        const Vec k2 = deriv(tmp);
        for (int i = 0; i < 6; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        const Vec k3 = deriv(tmp);
        for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * k3[i];
        const Vec k4 = deriv(tmp);
        Vec out;
        for (int i = 0; i < 6; ++i)
            out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        return out;
    }

    /// Cubic Hermite interpolation on [0, h], theta in [0, 1].
    static Vec hermite(const Vec& y0, const Vec& f0, const Vec& y1, const Vec& f1, double h,
                       double theta) {
        const double t2 = theta * theta, t3 = t2 * theta;
        const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        const double h10 = t3 - 2.0 * t2 + theta;
        const double h01 = -2.0 * t3 + 3.0 * t2;
        const double h11 = t3 - t2;
        Vec out;
        for (int i = 0; i < 6; ++i)
            out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
        return out;
    }

    [[nodiscard]] double norm(double x1, double x2) const {
        if (sc_.weighted_norm) return std::hypot(std::sqrt(p_.k) * x1, x2);
        return std::hypot(x1, x2);
    }

    [[nodiscard]] SystemState snapshot() const {
        SystemState st;
        st.x1 = y_[kX1];
        st.x2 = y_[kX2];
        st.presliding = PreslidingState{y_[kZ], f_r_, regime_};
        st.motion = motion_;
        if (lag_) st.actuator_state = y_[kW];
        return st;
    }

    void push_sample() {
        TrajectorySample s;
        s.t = t_;
        s.x1 = y_[kX1];
        s.x2 = y_[kX2];
        s.u = lag_ ? y_[kW] : -p_.gamma * s1_;
        s.f = friction_map();
        s.z = y_[kZ];
        s.regime = regime_;
        s.motion = motion_;
        s.e_in = y_[kEin];
        s.e_fric = y_[kEfr];
        if (!traj_.samples.empty() && !(s.t > traj_.samples.back().t)) {
            traj_.samples.back() = s;
        } else {
            traj_.samples.push_back(s);
        }
    }

    void emit(EventKind kind, const SystemState& before) {
        traj_.events.push_back(HybridEvent{t_, kind, before, snapshot()});
    }

    void finish(Termination term) {
        traj_.termination = term;
        done_ = true;
        push_sample();
        if (sc_.pad_to_t_end && term != Termination::TimeUp) {
            double t = t_;
            while (t + sc_.dt_max < sc_.t_end) {
                t += sc_.dt_max;
                t_ = t;
                push_sample();
            }
            t_ = sc_.t_end;
            push_sample();
        }
    }

    [[nodiscard]] bool converged() const {
        return norm(y_[kX1], y_[kX2]) <= sc_.convergence_radius;
    }

    /// Net non-friction acceleration available at rest.
    [[nodiscard]] double rest_drive() const {
        if (lag_) return -p_.k * y_[kX1] + y_[kW];
        return -p_.k * y_[kX1] - p_.gamma * s1_;
    }

    void enter_stuck(const SystemState& before) {
        y_[kX2] = 0.0;
        motion_ = MotionMode::Stuck;
        emit(EventKind::StickEntry, before);
        finish(converged() ? Termination::Converged : Termination::StuckOffOrigin);
    }

    void handle_velocity_zero();
    void handle_relay_switch();
    void handle_z_saturation();
    bool resolve_initial_motion();
    void step();
};

bool Engine::resolve_initial_motion() {
    // Returns false when the run terminates immediately.
    s1_ = sgn(y_[kX1]);
    if (s1_ == 0.0) s1_ = y_[kX2] != 0.0 ? sgn(y_[kX2]) : 1.0;

    if (converged()) {
        finish(Termination::Converged);
        return false;
    }
    if (y_[kX2] != 0.0) {
        d_ = sgn(y_[kX2]);
        return true;
    }
    // at rest
    if (!presliding_ && !lag_) {
        if (stick_condition_with_control(y_[kX1], -p_.gamma * s1_, p_)) {
            enter_stuck(snapshot());
            return false;
        }
        d_ = sgn(rest_drive());
        return true;
    }
    double a;
    if (lag_) {
        a = rest_drive();
        if (a == 0.0) a = -p_.gamma * s1_;  // filter will be driven by the relays
        if (a == 0.0) a = -s1_;
    } else {
        // presliding: friction starts at the stored memory level
        a = -p_.k * y_[kX1] - p_.gamma * s1_ - cf_ * f_r_;
        if (a == 0.0) {
            enter_stuck(snapshot());
            return false;
        }
    }
    d_ = sgn(a);
    if (d_ == 0.0) d_ = -s1_;
    return true;
}

void Engine::handle_velocity_zero() {
    const SystemState before = snapshot();
    y_[kX2] = 0.0;
    if (converged()) {
        emit(EventKind::VelocityReversal, before);
        finish(Termination::Converged);
        return;
    }
    if (!presliding_) {
        if (!lag_ && stick_condition_with_control(y_[kX1], -p_.gamma * s1_, p_)) {
            enter_stuck(before);
            return;
        }
        const double dn = sgn(rest_drive());
        if (dn == 0.0 && !lag_) {
            enter_stuck(before);
            return;
        }
        if (dn == d_ || dn == 0.0) return;  // grazing touch, no direction change
        f_r_ = d_;  // record the sliding friction level at the reversal for the event log
        d_ = dn;
        emit(EventKind::VelocityReversal, before);
        return;
    }
    // presliding: compute the friction level at the reversal instant, reset memory
    const double f_p_now = regime_ == PreslidingRegime::Sliding
                               ? d_
                               : std::abs(d_ - f_r_) * presliding_branch(std::clamp(y_[kZ], -1.0, 1.0)) +
                                     f_r_;
    const double u_eff = lag_ ? y_[kW] : -p_.gamma * s1_;
    const double a = -p_.k * y_[kX1] + u_eff - cf_ * f_p_now;
    if (a == 0.0) {
        enter_stuck(before);
        return;
    }
    const double dn = sgn(a);
    if (dn == d_) return;  // grazing, branch memory unchanged
    const bool from_sliding = regime_ == PreslidingRegime::Sliding;
    const PreslidingState reset = reversal_update(PreslidingState{y_[kZ], f_r_, regime_}, f_p_now);
    y_[kZ] = reset.z;
    f_r_ = reset.f_r;
    regime_ = reset.regime;
    d_ = dn;
    emit(EventKind::VelocityReversal, before);
    if (from_sliding) emit(EventKind::SlidingToPresliding, before);
}

void Engine::handle_relay_switch() {
    const SystemState before = snapshot();
    y_[kX1] = 0.0;
    s1_ = y_[kX2] != 0.0 ? sgn(y_[kX2]) : -s1_;
    emit(EventKind::RelaySwitch, before);
}

void Engine::handle_z_saturation() {
    const SystemState before = snapshot();
    y_[kZ] = y_[kZ] > 0.0 ? 1.0 : -1.0;
    regime_ = PreslidingRegime::Sliding;
    emit(EventKind::PreslidingToSliding, before);
}

void Engine::step() {
    const double h = std::min(sc_.dt_max, sc_.t_end - t_);
    const Vec y0 = y_;
    const Vec f0 = deriv(y0);
    const Vec y1 = rk4(y0, h);
    const Vec f1 = deriv(y1);
    for (double v : y1)
        if (!std::isfinite(v)) throw SimulationError("integration diverged (non-finite state)");

    struct Guard {
        int priority;  // smaller = handled first on ties
        std::function<double(const Vec&)> g;
    };
    std::vector<Guard> guards;
    guards.push_back({0, [this](const Vec& y) { return d_ * y[kX2]; }});
    if (presliding_ && regime_ == PreslidingRegime::Presliding)
        guards.push_back({1, [](const Vec& y) { return 1.0 - std::abs(y[kZ]); }});
    guards.push_back({2, [this](const Vec& y) { return s1_ * y[kX1]; }});

    // checkpoints across the step, interpolated states via dense output
    constexpr std::array<double, 4> thetas{0.25, 0.5, 0.75, 1.0};
    double best_t = std::numeric_limits<double>::infinity();
    int best_priority = 99;
    for (const auto& gd : guards) {
        double prev_theta = 0.0;
        double prev_val = gd.g(y0);
        for (double th : thetas) {
            const Vec yc = th == 1.0 ? y1 : hermite(y0, f0, y1, f1, h, th);
            const double val = gd.g(yc);
            if (prev_val >= 0.0 && val < 0.0) {
                double tc;
                if (prev_val == 0.0) {
                    tc = t_ + prev_theta * h;
                } else {
                    auto guard_of_t = [&](double tau) {
                        const double thh = (tau - t_) / h;
                        return gd.g(thh >= 1.0 ? y1 : hermite(y0, f0, y1, f1, h, thh));
                    };
                    const double lo = t_ + prev_theta * h;
                    const double hi = t_ + th * h;
                    const double g_lo = guard_of_t(lo);
                    const double g_hi = guard_of_t(hi);
                    if (g_lo * g_hi > 0.0) {
                        // re-evaluating through the interpolant can flip a value
                        // that sits within rounding of zero; snap to that end
                        tc = std::abs(g_lo) <= std::abs(g_hi) ? lo : hi;
                    } else {
                        tc = locate_event(guard_of_t, lo, hi, sc_.event_tol);
                    }
                }
                const bool earlier = tc < best_t - sc_.event_tol ||
                                     (tc < best_t + sc_.event_tol && gd.priority < best_priority);
                if (earlier) {
                    best_t = tc;
                    best_priority = gd.priority;
                }
                break;
            }
            prev_theta = th;
            prev_val = val;
        }
    }
    if (!std::isfinite(best_t)) {
        t_ += h;
        y_ = y1;
        if (++step_count_ % sc_.sample_stride == 0 || t_ >= sc_.t_end) push_sample();
        if (converged()) {
            finish(Termination::Converged);
            return;
        }
        // rest capture: an overdamped approach into the stiction band never fires
        // the reversal guard, so sticking is detected from a vanishing velocity.
        // The band-edge equilibrium is approached from just outside, so a
        // vanishing acceleration counts as well.
        if (!presliding_ && !lag_ && std::abs(y_[kX2]) <= sc_.rest_velocity_tol) {
            const double a_rest = -p_.k * y_[kX1] - p_.gamma * s1_ - cf_ * d_;
            const double a_tol = sc_.rest_velocity_tol * std::max(1.0, p_.k);
            if (stick_condition_with_control(y_[kX1], -p_.gamma * s1_, p_) ||
                std::abs(a_rest) <= a_tol) {
                enter_stuck(snapshot());
                return;
            }
        }
        if (t_ >= sc_.t_end) {
            traj_.termination = Termination::TimeUp;
            done_ = true;
        }
        return;
    }

    // re-integrate up to the event and dispatch
    double hs = best_t - t_;
    if (hs <= 0.0) hs = std::min(sc_.event_tol, h);
    y_ = rk4(y0, hs);
    t_ += hs;
    switch (best_priority) {
        case 0: handle_velocity_zero(); break;
        case 1: handle_z_saturation(); break;
        default: handle_relay_switch(); break;
    }
    if (done_) return;
    push_sample();
    if (converged()) {
        finish(Termination::Converged);
        return;
    }
}

Trajectory Engine::run() {
    traj_.scenario = sc_;
    y_ = {sc_.x0.x1, sc_.x0.x2, sc_.x0.presliding.z, sc_.x0.actuator_state.value_or(0.0), 0.0, 0.0};
    f_r_ = sc_.x0.presliding.f_r;
    regime_ = presliding_ ? sc_.x0.presliding.regime : PreslidingRegime::Sliding;
    t_ = 0.0;

    const bool moving = resolve_initial_motion();
    if (!done_ && moving) push_sample();
    std::size_t events_cap = 5'000'000;
    std::size_t steps_cap = static_cast<std::size_t>(sc_.t_end / sc_.dt_max) * 8 + 10'000'000;
    std::size_t n = 0;
    double last_event_t = -1.0;
    std::size_t stall = 0;
    while (!done_) {
        if (traj_.events.size() > events_cap)
            throw SimulationError("event cascade: too many hybrid events");
        if (++n > steps_cap) throw SimulationError("step-count overflow");
        const std::size_t ev_before = traj_.events.size();
        const double t_before = t_;
        step();
        if (traj_.events.size() > ev_before) {
            if (t_ - t_before < 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t_) &&
                std::abs(t_ - last_event_t) <
                    4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t_)) {
                if (++stall > 100)
                    throw SimulationError("step-size underflow near an event cascade");
            } else {
                stall = 0;
            }
            last_event_t = t_;
        }
    }
    return traj_;
}

}  // namespace

Trajectory integrate(const Scenario& scenario) {
    validate(scenario);
    Engine eng(scenario);
    return eng.run();
}

}  // namespace relayfric
