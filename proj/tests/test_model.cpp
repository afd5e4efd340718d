#include <cmath>

#include <doctest.h>

#include "knr/model.hpp"

using knr::Complex;
using knr::KnrParams;
using knr::LambdaConvention;

TEST_CASE("parameter validation") {
    KnrParams p{20.0, 0.0, 5.0, 1.0, 0.0};
    CHECK_NOTHROW(p.validate());
    CHECK_NOTHROW(p.validate_analytic());

    KnrParams bad = p;
    bad.gamma = 0.0;
    CHECK_THROWS_AS(bad.validate(), knr::InvalidParams);
    bad = p;
    bad.omega_drive = -1.0;
    CHECK_THROWS_AS(bad.validate(), knr::InvalidParams);
    bad = p;
    bad.n_bath = -0.5;
    CHECK_THROWS_AS(bad.validate(), knr::InvalidParams);
    bad = p;
    bad.chi = 0.0;
    CHECK_NOTHROW(bad.validate());  // linear cavity is fine for the oracle
    CHECK_THROWS_AS(bad.validate_analytic(), knr::InvalidParams);
    bad = p;
    bad.n_bath = 0.5;
    CHECK_THROWS_AS(bad.validate_analytic(), knr::InvalidParams);
}

TEST_CASE("derived parameters in both conventions") {
    const KnrParams p{20.0, 0.0, 5.0, 1.0, 0.0};

    const auto d_i = knr::derive(p, LambdaConvention::IConvention, 0.5);
    CHECK(d_i.epsilon.real() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d_i.epsilon.imag() == 0.0);
    // (1/2 + 0i) / (20 i) = -i/40
    CHECK(d_i.lambda.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(d_i.lambda.imag() == doctest::Approx(-0.025).epsilon(1e-12));

    const auto d_p = knr::derive(p, LambdaConvention::PlainConvention, 0.5);
    CHECK(d_p.lambda.real() == doctest::Approx(0.025).epsilon(1e-12));
    CHECK(d_p.lambda.imag() == doctest::Approx(0.0).epsilon(1e-15));

    const KnrParams q{2.0, -40.0, 20.0, 1.0, 0.0};
    const auto d_q = knr::derive(q, LambdaConvention::IConvention, 0.5);
    // (1/2 - 40 i) / (2 i) = -20 - i/4
    CHECK(d_q.lambda.real() == doctest::Approx(-20.0).epsilon(1e-14));
    CHECK(d_q.lambda.imag() == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(d_q.epsilon.real() == doctest::Approx(10.0).epsilon(1e-15));

    // gamma enters the lambda numerator linearly
    KnrParams r = q;
    r.gamma = 2.0;
    const auto d_r = knr::derive(r, LambdaConvention::IConvention, 0.5);
    CHECK(d_r.lambda.imag() == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(d_r.lambda.real() == d_q.lambda.real());
}

TEST_CASE("ladder energies and detunings") {
    const KnrParams p{20.0, 0.0, 5.0, 1.0, 0.0};
    const double w0 = 100.0;
    CHECK(knr::ladder_energy(0, p, w0) == 0.0);
    CHECK(knr::ladder_energy(1, p, w0) == doctest::Approx(100.0));
    CHECK(knr::ladder_energy(2, p, w0) == doctest::Approx(240.0));   // 200 + 2*20
    CHECK(knr::ladder_energy(3, p, w0) == doctest::Approx(420.0));   // 300 + 6*20

    // level spacing E_{n+1} - E_n = w0 + 2 chi n
    for (int n = 0; n < 6; ++n) {
        const double gap =
            knr::ladder_energy(n + 1, p, w0) - knr::ladder_energy(n, p, w0);
        CHECK(gap == doctest::Approx(w0 + 2.0 * p.chi * n).epsilon(1e-14));
    }

    CHECK(knr::resonance_detuning(1, p) == doctest::Approx(0.0));
    CHECK(knr::resonance_detuning(2, p) == doctest::Approx(-20.0));
    CHECK(knr::resonance_detuning(3, p) == doctest::Approx(-40.0));
    CHECK(knr::resonance_detuning(4, p) == doctest::Approx(-60.0));
}

TEST_CASE("stark shifts") {
    const KnrParams p{20.0, 0.0, 5.0, 1.0, 0.0};
    const double w = 100.0;
    // Omega^2 (n/(w + chi(2n-1)) - (n+1)/(w + chi(2n+1)))
    CHECK(knr::stark_shift(0, p, w) == doctest::Approx(25.0 * (-1.0 / 120.0)).epsilon(1e-14));
    CHECK(knr::stark_shift(1, p, w) ==
          doctest::Approx(25.0 * (1.0 / 120.0 - 2.0 / 160.0)).epsilon(1e-14));

    // vanishing drive shifts nothing
    KnrParams q = p;
    q.omega_drive = 0.0;
    CHECK(knr::stark_shift(0, q, w) == 0.0);
    CHECK(knr::stark_shift(3, q, w) == 0.0);

    // resonant denominator is rejected
    CHECK_THROWS_AS(knr::stark_shift(0, p, -20.0), knr::SingularDenominator);
}
