#pragma once

#include <stdexcept>

namespace relayfric {

enum class FrictionModel { Discontinuous, Presliding };

/// Coulomb friction description. c_f is in acceleration units (force per unit
/// mass); s scales displacement since the last reversal into the normalized
/// presliding distance.
struct FrictionParams {
    double c_f = 1.0;
    double s = 0.0;
    FrictionModel model = FrictionModel::Discontinuous;

    bool operator==(const FrictionParams&) const = default;
};

enum class PreslidingRegime { Presliding, Sliding };

/// Hysteresis memory carried between velocity reversals.
struct PreslidingState {
    double z = 0.0;    ///< normalized presliding distance, in [-1, 1]
    double f_r = 0.0;  ///< normalized friction at the last reversal, in [-1, 1]
    PreslidingRegime regime = PreslidingRegime::Presliding;

    bool operator==(const PreslidingState&) const = default;
};

/// A force that is either a single value or a closed interval (set-valued
/// evaluation of sign() at zero velocity).
struct ForceValue {
    double lo = 0.0;
    double hi = 0.0;

    static ForceValue single(double v) { return {v, v}; }
    static ForceValue interval(double lo, double hi) {
        if (lo > hi) throw std::invalid_argument("ForceValue: lo > hi");
        return {lo, hi};
    }

    [[nodiscard]] bool is_interval() const { return lo != hi; }
    [[nodiscard]] double value() const {
        if (is_interval()) throw std::logic_error("ForceValue: interval has no single value");
        return lo;
    }
    [[nodiscard]] bool contains(double v) const { return lo <= v && v <= hi; }
};

/// -c_f * sign(x2); set-valued [-c_f, c_f] at x2 = 0.
ForceValue coulomb_force(double x2, const FrictionParams& p);

/// Branch curve z*(1 - ln|z|) on [-1, 1], with the continuous limit 0 at z = 0.
double presliding_branch(double z);

/// Presliding friction force c_f * (|x2_sign - f_r| * branch(z) + f_r).
/// x2_sign must be a definite direction, +1 or -1.
ForceValue presliding_force(const PreslidingState& ps, double x2_sign, const FrictionParams& p);

/// Reset at a velocity reversal: z = 0, memory set to the friction level at
/// the reversal instant (normalized).
PreslidingState reversal_update(const PreslidingState& ps, double f_p_at_reversal);

/// Accumulate z by s*x2*dt; clamps at ±1 and flips regime to Sliding.
PreslidingState advance_presliding_distance(const PreslidingState& ps, double x2, double dt,
                                            const FrictionParams& p);

}  // namespace relayfric
