#include "relayfric/harmonic_balance.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "relayfric/errors.hpp"
#include "relayfric/trajectory_analysis.hpp"

namespace relayfric {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
}

std::complex<double> eval_poly(const std::vector<double>& coeffs, std::complex<double> s) {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double poly_magnitude_scale(const std::vector<double>& coeffs, double omega) {
    double acc = 0.0, p = 1.0;
    for (double c : coeffs) {
        acc += std::abs(c) * p;
        p *= omega;
    }
    return acc;
}

}  // namespace

LinearPlant LinearPlant::second_order(double k, double c) {
    if (k < 0.0 || c < 0.0) throw std::invalid_argument("LinearPlant: k, c must be >= 0");
    return LinearPlant{{1.0}, {k, c, 1.0}};
}

LinearPlant LinearPlant::with_lag(double T) const {
    if (!(T > 0.0)) throw std::invalid_argument("LinearPlant: lag time constant must be > 0");
    // den * (T*s + 1)
    std::vector<double> d(den.size() + 1, 0.0);
    for (std::size_t i = 0; i < den.size(); ++i) {
        d[i] += den[i];
        d[i + 1] += T * den[i];
    }
    return LinearPlant{num, d};
}

int LinearPlant::relative_degree() const {
    auto degree = [](const std::vector<double>& c) {
        for (std::size_t i = c.size(); i-- > 0;)
            if (c[i] != 0.0) return static_cast<int>(i);
        return -1;
    };
    return degree(den) - degree(num);
}

std::complex<double> describing_function(double a1, double gamma, double c_f) {
    if (!(a1 > 0.0)) throw std::domain_error("describing_function: amplitude must be > 0");
    if (gamma < 0.0 || c_f < 0.0)
        throw std::invalid_argument("describing_function: gains must be >= 0");
    return (4.0 / (kPi * a1)) * std::complex<double>(gamma, c_f);
}

std::complex<double> plant_response(const LinearPlant& g, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("plant_response: omega must be > 0");
    const std::complex<double> s(0.0, omega);
    const std::complex<double> den = eval_poly(g.den, s);
    const double scale = poly_magnitude_scale(g.den, omega);
    if (std::abs(den) < 1e-9 * scale)
        throw std::domain_error("plant_response: pole on the imaginary axis at this frequency");
    return eval_poly(g.num, s) / den;
}

HarmonicBalanceSolution solve_harmonic_balance(const LinearPlant& g, double gamma, double c_f) {
    if (!(gamma > 0.0) || c_f < 0.0)
        throw std::invalid_argument("solve_harmonic_balance: need gamma > 0, c_f >= 0");
    if (g.relative_degree() < 2)
        throw std::invalid_argument("solve_harmonic_balance: plant relative degree must be >= 2");

    const double theta = kPi - std::atan2(c_f, gamma);
    auto residual = [&](double omega) { return wrap_pi(std::arg(plant_response(g, omega)) - theta); };

    constexpr double kLo = 1e-3, kHi = 1e6;
    constexpr int kPerDecade = 300;
    const int n = static_cast<int>(std::log10(kHi / kLo) * kPerDecade) + 1;
    const double step = std::log(kHi / kLo) / (n - 1);

    HarmonicBalanceSolution sol;
    sol.phase_margin_evidence = std::numeric_limits<double>::infinity();

    double prev_w = kLo;
    double prev_r;
    try {
        prev_r = residual(prev_w);
    } catch (const std::domain_error&) {
        prev_r = std::numeric_limits<double>::quiet_NaN();
    }
    if (std::isfinite(prev_r)) sol.phase_margin_evidence = std::abs(prev_r);

    double root = -1.0;
    for (int i = 1; i < n; ++i) {
        const double w = kLo * std::exp(step * i);
        double r;
        try {
            r = residual(w);
        } catch (const std::domain_error&) {
            prev_w = w;
            prev_r = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        sol.phase_margin_evidence = std::min(sol.phase_margin_evidence, std::abs(r));
        // skip wrap jumps of the principal-value residual
        if (std::isfinite(prev_r) && prev_r * r < 0.0 && std::abs(r - prev_r) < kPi) {
            double lo = prev_w, hi = w, rlo = prev_r;
            while (hi - lo > 1e-13 * lo) {
                const double mid = std::sqrt(lo * hi);
                const double rm = residual(mid);
                if (rm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((rm > 0.0) == (rlo > 0.0)) {
                    lo = mid;
                    rlo = rm;
                } else {
                    hi = mid;
                }
            }
            root = 0.5 * (lo + hi);
            break;
        }
        prev_w = w;
        prev_r = r;
    }

    if (root > 0.0) {
        sol.exists = true;
        sol.omega_bar = root;
        const std::complex<double> resp = plant_response(g, root);
        sol.a1 = (4.0 / kPi) * std::abs(resp) * std::hypot(gamma, c_f);
        sol.balance_residual = std::abs(describing_function(sol.a1, gamma, c_f) * resp + 1.0);
        sol.phase_margin_evidence = 0.0;
    } else {
        sol.note =
            "no phase-condition root on [1e-3, 1e6] rad/s; a plant of relative degree 2 "
            "cannot reach the -1/DF ray (its phase stays above pi - arctan(c_f/gamma)), "
            "so no first-harmonic oscillation is predicted";
    }
    return sol;
}

ChatterValidation predict_chatter_and_validate(const Scenario& scenario) {
    validate(scenario);
    if (scenario.plant.friction.model != FrictionModel::Discontinuous)
        throw std::invalid_argument("predict_chatter_and_validate: discontinuous friction required");

    LinearPlant g = LinearPlant::second_order(scenario.plant.k, scenario.plant.c);
    if (scenario.plant.actuator_lag) g = g.with_lag(*scenario.plant.actuator_lag);

    ChatterValidation out;
    out.prediction = solve_harmonic_balance(g, scenario.plant.gamma, scenario.plant.friction.c_f);

    const Trajectory traj = integrate(scenario);
    if (traj.termination == Termination::Converged) {
        out.sim_oscillates = false;
        out.conclusive = !out.prediction.exists;
        out.note = out.conclusive ? "simulation converged; no oscillation predicted or observed"
                                  : "prediction expects oscillation but the simulation converged";
        return out;
    }
    try {
        const auto [w, a] = oscillation_spectrum(traj);
        out.sim_oscillates = true;
        out.sim_omega = w;
        out.sim_a1 = a;
        if (out.prediction.exists) {
            out.freq_rel_dev = std::abs(w - out.prediction.omega_bar) / out.prediction.omega_bar;
            out.amp_rel_dev = std::abs(a - out.prediction.a1) / out.prediction.a1;
            out.conclusive = true;
        } else {
            out.conclusive = false;
            out.note = "steady oscillation observed but none predicted";
        }
    } catch (const InconclusiveError& e) {
        out.conclusive = false;
        out.note = e.what();
    }
    return out;
}

}  // namespace relayfric
