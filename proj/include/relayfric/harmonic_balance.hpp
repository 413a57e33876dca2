#pragma once

#include <complex>
#include <string>
#include <vector>

#include "relayfric/integrator.hpp"

namespace relayfric {

/// Rational transfer function G(s) = num(s)/den(s), coefficients in ascending
/// powers of s. Relative degree (deg den - deg num) must be >= 2.
struct LinearPlant {
    std::vector<double> num{1.0};
    std::vector<double> den{1.0};

    /// G(s) = 1 / (s^2 + c*s + k).
    static LinearPlant second_order(double k, double c);

    /// Multiply the denominator by (T*s + 1).
    [[nodiscard]] LinearPlant with_lag(double T) const;

    [[nodiscard]] int relative_degree() const;
};

/// Combined describing function of the two relays: (4/(pi*a1)) * (gamma + j*c_f).
std::complex<double> describing_function(double a1, double gamma, double c_f);

/// G(j*omega) by polynomial evaluation. Throws on an imaginary-axis pole.
std::complex<double> plant_response(const LinearPlant& g, double omega);

struct HarmonicBalanceSolution {
    bool exists = false;
    double omega_bar = 0.0;  ///< rad/s, when exists
    double a1 = 0.0;         ///< first-harmonic amplitude of x1, m, when exists
    double phase_margin_evidence = 0.0;  ///< min |phase residual| over the search grid, rad
    double balance_residual = 0.0;       ///< |DF(a1)*G(j omega_bar) + 1| at the solution
    std::string note;
};

/// Solve -1/DF(a1) = G(j*omega): the phase condition
/// arg G(j*omega) = pi - arctan(c_f/gamma) is amplitude-free; the amplitude
/// follows as a1 = (4/pi) |G(j omega_bar)| sqrt(gamma^2 + c_f^2).
/// No solution is a valid outcome (exists = false with residual evidence).
HarmonicBalanceSolution solve_harmonic_balance(const LinearPlant& g, double gamma, double c_f);

struct ChatterValidation {
    HarmonicBalanceSolution prediction;
    bool conclusive = false;
    bool sim_oscillates = false;
    double sim_omega = 0.0;
    double sim_a1 = 0.0;
    double freq_rel_dev = 0.0;
    double amp_rel_dev = 0.0;
    std::string note;
};

/// Run the describing-function prediction on the scenario's linear part (with
/// its actuator lag) and compare against a time-domain simulation.
ChatterValidation predict_chatter_and_validate(const Scenario& scenario);

}  // namespace relayfric
