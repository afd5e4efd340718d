#pragma once

#include <complex>

#include "knr/errors.hpp"

namespace knr {

using Complex = std::complex<double>;

// Truncation control for the hypergeometric series. The stop rule requires
// two consecutive terms below rel_tol * |partial sum| before terminating.
struct SeriesConfig {
    double rel_tol = 1e-14;
    double abs_tol = 1e-300;
    int max_terms = 10000;
};

struct SeriesResult {
    Complex value;
    int terms_used = 0;
};

// Series value v * exp(log_scale); the split keeps sums representable when
// the regularized series carries 1/|Gamma(a)|^2 factors far outside double
// range (|a| up to ~100 on the swept parameter domain).
struct ScaledSeriesResult {
    Complex value;
    double log_scale = 0.0;
    int terms_used = 0;

    Complex unscaled() const { return value * std::exp(log_scale); }
    double log_abs() const { return std::log(std::abs(value)) + log_scale; }
};

// Gamma(z), Lanczos approximation with reflection for Re(z) < 0.5.
// Relative error <= ~1e-14 for |z| <= 100.
Complex complex_gamma(Complex z);

// log Gamma(z); exp(complex_log_gamma(z)) == complex_gamma(z) up to a
// 2*pi*i multiple. Continuous branch along Re(z) > 0.
Complex complex_log_gamma(Complex z);

// 0F1(; b; z) = sum_k z^k Gamma(b) / (k! Gamma(k+b))
SeriesResult hyp0f1(Complex b, Complex z, const SeriesConfig& cfg = {});

// 0F2(a; b; z) = sum_k z^k Gamma(a) Gamma(b) / (k! Gamma(k+a) Gamma(k+b)),
// symmetric in (a, b) by construction.
SeriesResult hyp0f2(Complex a, Complex b, Complex z, const SeriesConfig& cfg = {});

// sum_k z^k / (k! Gamma(k+b)) = 0F1(; b; z) / Gamma(b).
// Entire in b, no poles; the workhorse behind the Wigner series.
ScaledSeriesResult hyp0f1_regularized(Complex b, Complex z,
                                      const SeriesConfig& cfg = {});

// sum_k z^k / (k! Gamma(k+a) Gamma(k+b)) = 0F2(a; b; z) / (Gamma(a) Gamma(b)).
// Entire in both parameters; the photon-distribution sums are built on this.
ScaledSeriesResult hyp0f2_regularized(Complex a, Complex b, Complex z,
                                      const SeriesConfig& cfg = {});

}  // namespace knr
