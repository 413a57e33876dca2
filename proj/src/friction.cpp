#include "relayfric/friction.hpp"

#include <cmath>

namespace relayfric {

namespace {

void check_params(const FrictionParams& p) {
    if (!(p.c_f > 0.0)) throw std::invalid_argument("friction: c_f must be > 0");
    if (p.model == FrictionModel::Presliding && !(p.s > 0.0))
        throw std::invalid_argument("friction: s must be > 0 for the presliding model");
}

}  // namespace

ForceValue coulomb_force(double x2, const FrictionParams& p) {
    if (!(p.c_f > 0.0)) throw std::invalid_argument("friction: c_f must be > 0");
    if (!std::isfinite(x2)) throw std::invalid_argument("coulomb_force: non-finite velocity");
    if (x2 > 0.0) return ForceValue::single(-p.c_f);
    if (x2 < 0.0) return ForceValue::single(p.c_f);
    return ForceValue::interval(-p.c_f, p.c_f);
}

double presliding_branch(double z) {
    if (!std::isfinite(z) || std::abs(z) > 1.0)
        throw std::domain_error("presliding_branch: |z| must be <= 1");
    if (z == 0.0) return 0.0;
    return z * (1.0 - std::log(std::abs(z)));
}

ForceValue presliding_force(const PreslidingState& ps, double x2_sign, const FrictionParams& p) {
    check_params(p);
    if (std::abs(ps.f_r) > 1.0)
        throw std::domain_error("presliding_force: |f_r| must be <= 1");
    if (ps.regime != PreslidingRegime::Presliding)
        throw std::domain_error("presliding_force: state is not in the presliding regime");
    if (x2_sign != 1.0 && x2_sign != -1.0)
        throw std::invalid_argument("presliding_force: x2_sign must be +1 or -1");
    const double f_p = std::abs(x2_sign - ps.f_r) * presliding_branch(ps.z) + ps.f_r;
    return ForceValue::single(p.c_f * f_p);
}

PreslidingState reversal_update(const PreslidingState&, double f_p_at_reversal) {
    if (std::abs(f_p_at_reversal) > 1.0)
        throw std::domain_error("reversal_update: |f_p| must be <= 1");
    return PreslidingState{0.0, f_p_at_reversal, PreslidingRegime::Presliding};
}

PreslidingState advance_presliding_distance(const PreslidingState& ps, double x2, double dt,
                                            const FrictionParams& p) {
    check_params(p);
    if (dt < 0.0) throw std::invalid_argument("advance_presliding_distance: dt must be >= 0");
    if (ps.regime == PreslidingRegime::Sliding) return ps;
    PreslidingState out = ps;
    out.z += p.s * x2 * dt;
    if (std::abs(out.z) >= 1.0) {
        out.z = out.z > 0.0 ? 1.0 : -1.0;
        out.regime = PreslidingRegime::Sliding;
    }
    return out;
}

}  // namespace relayfric
