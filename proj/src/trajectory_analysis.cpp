#include "relayfric/trajectory_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "relayfric/errors.hpp"

namespace relayfric {

namespace {

std::size_t index_at_or_after(const std::vector<TrajectorySample>& s, double t) {
    auto it = std::lower_bound(s.begin(), s.end(), t,
                               [](const TrajectorySample& a, double tv) { return a.t < tv; });
    if (it == s.end()) --it;
    return static_cast<std::size_t>(it - s.begin());
}

std::size_t index_at_or_before(const std::vector<TrajectorySample>& s, double t) {
    auto it = std::upper_bound(s.begin(), s.end(), t,
                               [](double tv, const TrajectorySample& a) { return tv < a.t; });
    if (it != s.begin()) --it;
    return static_cast<std::size_t>(it - s.begin());
}

void fft(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace

std::vector<ReversalRecord> detect_reversals(const Trajectory& traj) {
    std::vector<ReversalRecord> out;
    for (const auto& ev : traj.events) {
        if (ev.kind != EventKind::VelocityReversal) continue;
        out.push_back({ev.t, ev.state_after.x1, ev.state_after.presliding.f_r});
    }
    return out;
}

LimitCycleReport detect_limit_cycle(const Trajectory& traj, double rel_tol) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("detect_limit_cycle: rel_tol must be > 0");
    const auto revs = detect_reversals(traj);
    if (revs.size() < 6)
        throw InsufficientDataError("detect_limit_cycle: fewer than 6 velocity reversals");

    LimitCycleReport rep;
    rep.reversal_amplitude_sequence.reserve(revs.size());
    for (const auto& r : revs) rep.reversal_amplitude_sequence.push_back(std::abs(r.x1));
    const auto& amps = rep.reversal_amplitude_sequence;
    const std::size_t n = amps.size();

    bool steady = true;
    for (std::size_t i = n - 3; i < n; ++i) {
        const double denom = std::max(amps[i], 1e-300);
        if (std::abs(amps[i] - amps[i - 1]) / denom >= rel_tol) steady = false;
    }
    rep.detected = steady && traj.termination != Termination::Converged;

    // final full cycle: between the reversal two-back and the last reversal
    const double t_lo = revs[n - 3].t;
    const double t_hi = revs[n - 1].t;
    rep.period = t_hi - t_lo;
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    for (std::size_t i = index_at_or_after(traj.samples, t_lo);
         i < traj.samples.size() && traj.samples[i].t <= t_hi; ++i) {
        x_min = std::min(x_min, traj.samples[i].x1);
        x_max = std::max(x_max, traj.samples[i].x1);
    }
    rep.amplitude = 0.5 * (x_max - x_min);

    // contraction of the amplitude deviations from the final amplitude
    const double a_star = amps.back();
    std::vector<double> ratios;
    for (std::size_t i = n > 12 ? n - 12 : 1; i + 2 < n; ++i) {
        const double d0 = std::abs(amps[i] - a_star);
        const double d1 = std::abs(amps[i + 1] - a_star);
        if (d0 > 1e-300) ratios.push_back(d1 / d0);
    }
    if (!ratios.empty()) {
        std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
        rep.contraction_ratio = ratios[ratios.size() / 2];
    }
    return rep;
}

SteadyStateError steady_state_error(const Trajectory& traj, double window_fraction) {
    if (!(window_fraction > 0.0) || !(window_fraction < 1.0))
        throw std::invalid_argument("steady_state_error: window_fraction must be in (0, 1)");
    if (traj.samples.size() < 2)
        throw InsufficientDataError("steady_state_error: trajectory too short");
    const double t0 = traj.samples.front().t;
    const double tn = traj.samples.back().t;
    SteadyStateError out;
    out.t_start = tn - window_fraction * (tn - t0);
    out.t_end = tn;

    double acc = 0.0, span = 0.0;
    const std::size_t i0 = index_at_or_after(traj.samples, out.t_start);
    for (std::size_t i = std::max<std::size_t>(i0, 1); i < traj.samples.size(); ++i) {
        const auto& a = traj.samples[i - 1];
        const auto& b = traj.samples[i];
        const double dt = b.t - a.t;
        acc += 0.5 * (std::abs(a.x1) + std::abs(b.x1)) * dt;
        span += dt;
    }
    out.mean_abs_error = span > 0.0 ? acc / span : std::abs(traj.samples.back().x1);

    try {
        const ForceValue band = invariant_set(traj.scenario.plant);
        out.band_lo = band.lo;
        out.band_hi = band.hi;
    } catch (const std::domain_error&) {
        out.band_lo = -std::numeric_limits<double>::infinity();
        out.band_hi = std::numeric_limits<double>::infinity();
    }
    return out;
}

double hysteresis_loop_energy(const Trajectory& traj, double t1, double t2, double closure_tol) {
    if (!(t1 < t2)) throw std::invalid_argument("hysteresis_loop_energy: need t1 < t2");
    if (traj.samples.empty()) throw InsufficientDataError("hysteresis_loop_energy: no samples");
    const std::size_t i1 = index_at_or_after(traj.samples, t1);
    const std::size_t i2 = index_at_or_before(traj.samples, t2);
    if (i2 <= i1) throw InsufficientDataError("hysteresis_loop_energy: empty interval");
    const auto& a = traj.samples[i1];
    const auto& b = traj.samples[i2];
    const double scale =
        std::max({std::abs(a.f), std::abs(b.f), 0.01 * traj.scenario.plant.friction.c_f});
    if (std::abs(a.f - b.f) > closure_tol * scale)
        throw std::domain_error("hysteresis_loop_energy: cycle not closed (friction mismatch)");
    // friction work integral; dissipation enters with positive sign
    return -(b.e_fric - a.e_fric);
}

double input_energy(const Trajectory& traj, double t1, double t2) {
    if (!(t1 < t2)) throw std::invalid_argument("input_energy: need t1 < t2");
    if (traj.samples.empty()) throw InsufficientDataError("input_energy: no samples");
    const std::size_t i1 = index_at_or_after(traj.samples, t1);
    const std::size_t i2 = index_at_or_before(traj.samples, t2);
    if (i2 <= i1) throw InsufficientDataError("input_energy: empty interval");
    return traj.samples[i2].e_in - traj.samples[i1].e_in;
}

std::pair<double, double> oscillation_spectrum(const Trajectory& traj, double window_fraction) {
    if (!(window_fraction > 0.0) || !(window_fraction < 1.0))
        throw std::invalid_argument("oscillation_spectrum: window_fraction must be in (0, 1)");
    if (traj.termination == Termination::Converged)
        throw InconclusiveError("oscillation_spectrum: trajectory converged, no steady oscillation");
    if (traj.samples.size() < 32)
        throw InsufficientDataError("oscillation_spectrum: trajectory too short");

    const double t0 = traj.samples.front().t;
    const double tn = traj.samples.back().t;
    const double ta = tn - window_fraction * (tn - t0);
    const std::size_t ia = index_at_or_after(traj.samples, ta);
    if (traj.samples.size() - ia < 32)
        throw InsufficientDataError("oscillation_spectrum: window too short");

    constexpr std::size_t kN = 1 << 14;
    const double wa = traj.samples[ia].t;
    const double wb = tn;
    const double dt = (wb - wa) / static_cast<double>(kN - 1);
    std::vector<std::complex<double>> buf(kN);
    std::size_t j = ia;
    double mean = 0.0;
    std::vector<double> xu(kN);
    for (std::size_t i = 0; i < kN; ++i) {
        const double t = wa + static_cast<double>(i) * dt;
        while (j + 1 < traj.samples.size() && traj.samples[j + 1].t <= t) ++j;
        const auto& s0 = traj.samples[j];
        double x = s0.x1;
        if (j + 1 < traj.samples.size()) {
            const auto& s1 = traj.samples[j + 1];
            const double span = s1.t - s0.t;
            if (span > 0.0) x = s0.x1 + (s1.x1 - s0.x1) * (t - s0.t) / span;
        }
        xu[i] = x;
        mean += x;
    }
    mean /= static_cast<double>(kN);
    for (std::size_t i = 0; i < kN; ++i) buf[i] = xu[i] - mean;
    fft(buf);

    double total = 0.0;
    std::size_t kpk = 1;
    double pk = 0.0;
    std::vector<double> power(kN / 2, 0.0);
    for (std::size_t k = 1; k < kN / 2; ++k) {
        power[k] = std::norm(buf[k]);
        total += power[k];
        if (power[k] > pk) {
            pk = power[k];
            kpk = k;
        }
    }
    if (!(total > 0.0)) throw InconclusiveError("oscillation_spectrum: flat signal");
    double local = 0.0;
    for (std::size_t k = kpk >= 2 ? kpk - 2 : 1; k <= kpk + 2 && k < kN / 2; ++k) local += power[k];
    if (local < 0.25 * total)
        throw InconclusiveError("oscillation_spectrum: no dominant spectral peak");

    // parabolic refinement of the peak location
    double delta = 0.0;
    if (kpk >= 2 && kpk + 1 < kN / 2) {
        const double pm = power[kpk - 1], pc = power[kpk], pp = power[kpk + 1];
        const double den = pm - 2.0 * pc + pp;
        if (den != 0.0) delta = 0.5 * (pm - pp) / den;
    }
    double omega =
        2.0 * std::numbers::pi * (static_cast<double>(kpk) + delta) / (dt * static_cast<double>(kN));

    // first-harmonic amplitude by correlation over an integer number of periods
    const auto amplitude_at = [&](double w) -> double {
        const double period = 2.0 * std::numbers::pi / w;
        const auto n_per = static_cast<std::size_t>(std::floor((wb - wa) / period));
        if (n_per < 2) return -1.0;
        const double t_int = static_cast<double>(n_per) * period;
        const auto n_int = std::min(kN - 1, static_cast<std::size_t>(std::floor(t_int / dt)));
        std::complex<double> corr = 0.0;
        for (std::size_t i = 0; i <= n_int; ++i) {
            const double wgt = (i == 0 || i == n_int) ? 0.5 : 1.0;
            const double t = static_cast<double>(i) * dt;
            corr += wgt * (xu[i] - mean) * std::exp(std::complex<double>(0.0, -w * t));
        }
        return 2.0 * std::abs(corr) / static_cast<double>(n_int);
    };

    // sharpen the bin estimate: the correlation magnitude peaks at the true
    // frequency, so golden-section maximize it over a +-1-bin neighborhood
    const double binw = 2.0 * std::numbers::pi / (dt * static_cast<double>(kN));
    {
        const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = std::max(0.5 * binw, omega - binw);
        double hi = omega + binw;
        double m1 = hi - invphi * (hi - lo);
        double m2 = lo + invphi * (hi - lo);
        double f1 = amplitude_at(m1);
        double f2 = amplitude_at(m2);
        for (int it = 0; it < 60 && hi - lo > 1e-12 * omega; ++it) {
            if (f1 < f2) {
                lo = m1;
                m1 = m2;
                f1 = f2;
                m2 = lo + invphi * (hi - lo);
                f2 = amplitude_at(m2);
            } else {
                hi = m2;
                m2 = m1;
                f2 = f1;
                m1 = hi - invphi * (hi - lo);
                f1 = amplitude_at(m1);
            }
        }
        omega = 0.5 * (lo + hi);
    }
    const double a1 = amplitude_at(omega);
    if (a1 < 0.0)
        throw InconclusiveError("oscillation_spectrum: fewer than two periods in window");
    return {omega, a1};
}

}  // namespace relayfric
