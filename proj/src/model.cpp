#include "knr/model.hpp"

#include <cmath>

namespace knr {

void KnrParams::validate() const {
    if (!(gamma > 0.0)) throw InvalidParams("gamma must be positive");
    if (!(omega_drive >= 0.0)) throw InvalidParams("omega_drive must be non-negative");
    if (!(n_bath >= 0.0)) throw InvalidParams("n_bath must be non-negative");
    if (!std::isfinite(chi) || !std::isfinite(delta) || !std::isfinite(omega_drive)) {
        throw InvalidParams("parameters must be finite");
    }
}

void KnrParams::validate_analytic() const {
    validate();
    if (!(chi > 0.0)) throw InvalidParams("chi must be positive on the analytic path");
    if (n_bath != 0.0) throw InvalidParams("analytic formulas require n_bath = 0");
}

DerivedParams derive(const KnrParams& params, LambdaConvention conv, double gamma_scale) {
    params.validate();
    if (!(params.chi > 0.0)) throw InvalidParams("derive: chi must be positive");
    DerivedParams d;
    d.epsilon = Complex(params.omega_drive / params.chi, 0.0);
    const Complex num(gamma_scale * params.gamma, params.delta);  // gamma_eff + i*Delta
    d.lambda = (conv == LambdaConvention::IConvention) ? num / Complex(0.0, params.chi)
                                                       : num / params.chi;
    d.lambda_conv = conv;
    return d;
}

double ladder_energy(int n, const KnrParams& params, double omega0) {
    return omega0 * n + params.chi * n * (n - 1.0);
}

double resonance_detuning(int n, const KnrParams& params) {
    return -params.chi * (n - 1.0);
}

double stark_shift(int n, const KnrParams& params, double omega) {
    const double omega_sq = params.omega_drive * params.omega_drive;
    if (omega_sq == 0.0) return 0.0;
    const double d_lower = omega + params.chi * (2.0 * n - 1.0);
    const double d_upper = omega + params.chi * (2.0 * n + 1.0);
    const double tol = 1e-12 * std::max(1.0, std::abs(omega) + std::abs(params.chi) * (2.0 * n + 1.0));
    if (std::abs(d_lower) < tol || std::abs(d_upper) < tol) {
        throw SingularDenominator("stark_shift: transition denominator vanishes");
    }
    return omega_sq * (n / d_lower - (n + 1.0) / d_upper);
}

}  // namespace knr
