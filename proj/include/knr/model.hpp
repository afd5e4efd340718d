#pragma once

#include "knr/errors.hpp"
#include "knr/specfun.hpp"

namespace knr {

// Physical parameters of the driven dissipative Kerr resonator. All rates
// share one frequency unit; with the default gamma = 1 they read as ratios
// to the Lindblad decay rate. Figure presets use gamma = 2 because the
// reproduced plots quote frequencies in units of the amplitude decay gamma/2.
struct KnrParams {
    double chi = 1.0;          // Kerr nonlinearity chi
    double delta = 0.0;        // detuning Delta = omega_0 - omega_drive
    double omega_drive = 0.0;  // drive amplitude Omega, real >= 0
    double gamma = 1.0;        // Lindblad decay rate (L1 = sqrt((N+1) gamma) a)
    double n_bath = 0.0;       // bath occupation N

    void validate() const;               // gamma > 0, omega_drive >= 0, n_bath >= 0
    void validate_analytic() const;      // additionally chi > 0, n_bath == 0
};

// The paper's two printed definitions of the pole parameter lambda differ
// by a factor i; both are carried and resolved against the oracle.
enum class LambdaConvention {
    IConvention,      // lambda = (gamma_eff + i*Delta) / (i*chi)
    PlainConvention,  // lambda = (gamma_eff + i*Delta) / chi
};

struct DerivedParams {
    Complex epsilon;  // Omega / chi
    Complex lambda;
    LambdaConvention lambda_conv = LambdaConvention::IConvention;
};

// derive() uses the bare gamma in the numerator of lambda. The analytic
// module applies its own calibrated gamma scaling on top (see analytic.hpp).
DerivedParams derive(const KnrParams& params, LambdaConvention conv,
                     double gamma_scale = 1.0);

// Anharmonic ladder energy relative to E0: omega0*n + chi*n*(n-1), units of gamma.
double ladder_energy(int n, const KnrParams& params, double omega0);

// Detuning of the n-photon resonance: Delta_n = -chi*(n-1).
double resonance_detuning(int n, const KnrParams& params);

// Second-order Stark shift of level n under drive amplitude Omega at
// frequency omega: Omega^2 * (n/(omega+chi(2n-1)) - (n+1)/(omega+chi(2n+1))).
double stark_shift(int n, const KnrParams& params, double omega);

}  // namespace knr
