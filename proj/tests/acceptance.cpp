// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and states its tolerance inline.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "knr/analytic.hpp"
#include "knr/oracle.hpp"
#include "knr/specfun.hpp"
#include "knr/sweep.hpp"

using knr::AnalyticConvention;
using knr::Complex;
using knr::KnrParams;
using knr::LambdaConvention;
using knr::OracleConfig;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

double max_abs_dp(const KnrParams& p, const AnalyticConvention& conv,
                  const Eigen::VectorXd& oracle_probs) {
    double worst = 0.0;
    try {
        const auto dist = knr::photon_distribution(p, {}, conv);
        const int n_cmp = static_cast<int>(oracle_probs.size());
        for (int n = 0; n < n_cmp; ++n) {
            worst = std::max(worst, std::abs(dist.p(n) - oracle_probs(n)));
        }
    } catch (const std::exception&) {
        worst = std::numeric_limits<double>::infinity();
    }
    return worst;
}

// ---- criterion 1: convention calibration against the Lindblad oracle ----
void criterion_1() {
    const double chis[3] = {2.0, 10.0, 20.0};
    const double deltas[4] = {-40.0, -20.0, 0.0, 20.0};
    const AnalyticConvention candidates[4] = {
        {LambdaConvention::IConvention, 0.5},
        {LambdaConvention::IConvention, 1.0},
        {LambdaConvention::PlainConvention, 0.5},
        {LambdaConvention::PlainConvention, 1.0},
    };
    OracleConfig ocfg;
    ocfg.edge_tol = 1e-13;  // fully converged truncation for the comparison

    double worst[4] = {0.0, 0.0, 0.0, 0.0};
    int point = 0;
    for (int ic = 0; ic < 3; ++ic) {
        for (int id = 0; id < 4; ++id) {
            const double omega = (point++ % 2 == 0) ? 5.0 : 20.0;
            const KnrParams p{chis[ic], deltas[id], omega, 1.0, 0.0};
            const auto obs = knr::oracle_observables(knr::steady_state(p, ocfg));
            for (int c = 0; c < 4; ++c) {
                worst[c] = std::max(worst[c], max_abs_dp(p, candidates[c], obs.probs));
            }
        }
    }
    const bool default_wins = worst[0] < 1e-6;
    bool unique = true;
    for (int c = 1; c < 4; ++c) unique = unique && worst[c] >= 1e-6;
    report(1, default_wins && unique,
           fmt("calibrated convention max|dP|=%.3e over 12 points (<1e-6); "
               "runner-up candidate %.3e (>=1e-6, unique winner)",
               worst[0], std::min({worst[1], worst[2], worst[3]})));
}

// ---- criterion 2: linear-cavity limit ----
void criterion_2() {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> delta(-10.0, 10.0), omega(0.5, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const KnrParams p{0.0, delta(rng), omega(rng), 1.0, 0.0};
        const auto obs = knr::oracle_observables(knr::steady_state(p));
        const double expected =
            p.omega_drive * p.omega_drive / (p.delta * p.delta + 0.25);
        worst = std::max(worst, std::abs(obs.mean_n - expected) / expected);
    }
    report(2, worst < 1e-10,
           fmt("chi=0 oracle mean vs Omega^2/(Delta^2+1/4): max rel err %.3e "
               "(<1e-10) at 5 random points",
               worst));
}

struct Extremum {
    double position = 0.0;
    double height = -1.0;
};

Extremum best_peak_near(const std::vector<knr::Peak>& peaks, double center,
                        double radius) {
    Extremum best;
    for (const auto& pk : peaks) {
        if (std::abs(pk.position - center) <= radius && pk.height > best.height) {
            best = {pk.position, pk.height};
        }
    }
    return best;
}

const std::vector<knr::Peak>& peaks_for(const knr::SweepResult& result,
                                        const std::string& column) {
    static const std::vector<knr::Peak> empty;
    for (const auto& pc : result.peaks) {
        if (pc.column == column) return pc.peaks;
    }
    return empty;
}

// ---- criterion 3: multiphoton resonance structure at Omega = 5 ----
void criterion_3() {
    const auto result = knr::run_sweep(knr::figure_preset("fig3a"));
    const auto& p1 = peaks_for(result, "p1");
    const auto& p2 = peaks_for(result, "p2");

    // global P1 maximum at the one-photon resonance Delta = 0
    Extremum main_p1;
    for (const auto& pk : p1) {
        if (pk.height > main_p1.height) main_p1 = {pk.position, pk.height};
    }
    // secondary P1 maximum at the two-photon resonance
    Extremum side_p1 = best_peak_near(p1, -20.0, 10.0);
    Extremum peak_p2 = best_peak_near(p2, -20.0, 10.0);

    bool ok = std::abs(main_p1.position - 0.0) <= 2.0 &&
              std::abs(main_p1.height - 0.50) <= 0.03 &&
              std::abs(side_p1.position - (-20.0)) <= 2.0 &&
              std::abs(side_p1.height - 0.38) <= 0.04 &&
              std::abs(peak_p2.position - (-20.0)) <= 2.0 &&
              std::abs(peak_p2.height - 0.20) <= 0.03;
    report(3, ok,
           fmt("P1 peak %.3f@%.2f (0.50+-0.03@0), P2 peak %.3f@",
               main_p1.height, main_p1.position, peak_p2.height) +
               fmt("%.2f (0.20+-0.03@-20), secondary P1 %.3f@", peak_p2.position,
                   side_p1.height) +
               fmt("%.2f (0.38+-0.04@-20)", side_p1.position));
}

// ---- criterion 4: P2 maxima walk with the drive ----
void criterion_4() {
    const auto result = knr::run_sweep(knr::figure_preset("fig3c"));
    const auto& p2 = peaks_for(result, "p2");
    const Extremum near40 = best_peak_near(p2, -40.0, 8.0);
    const Extremum near60 = best_peak_near(p2, -60.0, 8.0);
    const bool ok = near40.height > 0.0 && std::abs(near40.position + 40.0) <= 2.0 &&
                    near60.height > 0.0 && std::abs(near60.position + 60.0) <= 2.0;
    report(4, ok,
           fmt("Omega=20 P2 maxima at Delta=%.2f (-40+-2) and %.2f (-60+-2)",
               near40.position, near60.position));
}

// ---- criterion 5: population ceilings over the survey grids ----
void criterion_5() {
    double max_p1 = 0.0, max_p2 = 0.0, max_p3 = 0.0;
    for (const char* id : {"fig3a", "fig3c", "fig4a", "fig5a", "fig6a"}) {
        const auto result = knr::run_sweep(knr::figure_preset(id));
        for (const auto& row : result.rows) {
            if (!row.converged_analytic) continue;
            max_p1 = std::max(max_p1, row.p[1]);
            max_p2 = std::max(max_p2, row.p[2]);
            max_p3 = std::max(max_p3, row.p[3]);
        }
    }
    const bool ok = max_p1 <= 0.52 && max_p2 <= 0.38 && max_p3 <= 0.33;
    report(5, ok,
           fmt("population ceilings max P1=%.3f (<=0.52), P2=%.3f (<=0.38), "
               "P3=%.3f (<=0.33)",
               max_p1, max_p2, max_p3));
}

// ---- criterion 6: photon statistics ----
void criterion_6() {
    // strong Kerr: antibunched everywhere on the scanned window
    const auto strong = knr::run_sweep(knr::figure_preset("fig7c"));
    double worst_g2 = 0.0;
    for (const auto& row : strong.rows) {
        if (row.delta < -40.0 || row.delta > 40.0) continue;
        worst_g2 = std::max(worst_g2, row.g2);
    }

    // weak Kerr: bunching maximum near the multiphoton cluster
    const auto weak = knr::run_sweep(knr::figure_preset("fig7a"));
    const auto& g2_peaks = peaks_for(weak, "g2");
    const Extremum bunching = best_peak_near(g2_peaks, -35.0, 5.0);

    const bool ok = worst_g2 < 1.0 && bunching.height > 1.0;
    report(6, ok,
           fmt("chi=20 max g2=%.3f (<1 on |Delta|<=40); chi=2 bunching peak "
               "g2=%.2f at Delta=%.1f (-35+-5)",
               worst_g2, bunching.height, bunching.position));
}

// ---- criterion 7: distribution invariants on random parameters ----
void criterion_7() {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> chi(1.0, 40.0), delta(-80.0, 40.0),
        omega(0.1, 25.0);
    double worst_norm = 0.0, worst_mean = 0.0, worst_g2 = 0.0, worst_var = 0.0;
    for (int i = 0; i < 100; ++i) {
        const KnrParams p{chi(rng), delta(rng), omega(rng), 1.0, 0.0};
        const auto dist = knr::photon_distribution(p);
        worst_norm =
            std::max(worst_norm, std::abs(dist.probs.sum() + dist.tail_mass - 1.0));

        const auto obs = knr::observables(p);
        worst_mean = std::max(worst_mean,
                              std::abs(dist.mean() - obs.mean_n) / obs.mean_n);
        const double g2_dist =
            dist.second_factorial_moment() / (dist.mean() * dist.mean());
        worst_g2 = std::max(worst_g2, std::abs(g2_dist - obs.g2) / obs.g2);

        const double var_expected =
            obs.mean_n + obs.mean_n * obs.mean_n * (obs.g2 - 1.0);
        worst_var = std::max(worst_var, std::abs(obs.variance_n - var_expected) /
                                            std::max(1.0, std::abs(var_expected)));
    }
    const bool ok =
        worst_norm < 1e-9 && worst_mean < 1e-9 && worst_g2 < 1e-9 && worst_var < 1e-12;
    report(7, ok,
           fmt("100 random points: |sum P - 1| <= %.2e, mean rel err <= %.2e, "
               "g2 rel err <= %.2e (all <1e-9)",
               worst_norm, worst_mean, worst_g2));
}

// ---- criterion 8: Wigner functions ----
void criterion_8() {
    bool ok = true;
    std::string detail;

    // fixtures pin the normalization of the displaced-parity oracle
    knr::SteadyStateDensityMatrix vac, one;
    vac.dim = 6;
    vac.elements = Eigen::MatrixXcd::Zero(6, 6);
    vac.elements(0, 0) = 1.0;
    one.dim = 8;
    one.elements = Eigen::MatrixXcd::Zero(8, 8);
    one.elements(1, 1) = 1.0;
    const auto w_vac = knr::oracle_wigner(vac, -4.0, 4.0, -4.0, 4.0, 81, 81);
    const auto w_one = knr::oracle_wigner(one, -4.0, 4.0, -4.0, 4.0, 81, 81);
    const double vac_err = std::abs(w_vac.values(40, 40) - 2.0 / M_PI);
    const double one_err = std::abs(w_one.values(40, 40) + 2.0 / M_PI);
    ok = ok && vac_err < 1e-6 && one_err < 1e-6;

    for (const char* id : {"fig8a", "fig9a"}) {
        const auto spec = knr::figure_preset(id);
        const KnrParams p = spec.fixed;

        // closed form: non-negative and unit-normalized (check the window
        // integral of a wider evaluation restricted to [-4,4]^2)
        const auto wide = knr::wigner(p, -6.0, 6.0, -6.0, 6.0, 181, 181);
        double sub = 0.0;
        const double h = wide.x_axis(1) - wide.x_axis(0);
        for (int i = 0; i < 181; ++i) {
            for (int j = 0; j < 181; ++j) {
                if (std::abs(wide.x_axis(i)) > 4.0 || std::abs(wide.y_axis(j)) > 4.0)
                    continue;
                sub += wide.values(i, j) * h * h;
            }
        }
        const auto analytic = knr::wigner(p, -4.0, 4.0, -4.0, 4.0, 41, 41);
        const double min_w = analytic.values.minCoeff();

        // oracle cross-check on the same grid
        OracleConfig ocfg;
        ocfg.edge_tol = 1e-13;
        const auto rho = knr::steady_state(p, ocfg);
        const auto oracle = knr::oracle_wigner(rho, -4.0, 4.0, -4.0, 4.0, 41, 41);
        const double max_w = analytic.values.maxCoeff();
        const double max_dw = (analytic.values - oracle.values).cwiseAbs().maxCoeff();

        ok = ok && min_w >= -1e-6 && std::abs(sub - 1.0) < 0.02 &&
             max_dw < 0.01 * max_w;
        detail += std::string(" [") + id +
                  fmt(": minW=%.1e, window mass=%.4f, max|dW|/maxW=%.2e]", min_w, sub,
                      max_dw / max_w);
    }
    report(8, ok,
           fmt("vacuum peak err %.1e, |1> dip err %.1e (both <1e-6);", vac_err,
               one_err) +
               detail);
}

// ---- criterion 9: special-function identities ----
void criterion_9() {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> logr(std::log(0.1), std::log(50.0));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    double worst_rec = 0.0, worst_ref = 0.0;
    int tested = 0;
    while (tested < 200) {
        const Complex z = std::polar(std::exp(logr(rng)), phase(rng));
        if (std::abs(z.imag()) < 0.1 &&
            std::abs(z.real() - std::round(z.real())) < 0.1)
            continue;
        const Complex g = knr::complex_gamma(z);
        worst_rec = std::max(worst_rec, std::abs(knr::complex_gamma(z + 1.0) - z * g) /
                                            std::abs(z * g));
        if (std::abs(z.imag()) < 15.0 && std::abs(z.real()) < 20.0) {
            const Complex lhs = g * knr::complex_gamma(1.0 - z);
            const Complex rhs = M_PI / std::sin(M_PI * z);
            worst_ref = std::max(worst_ref, std::abs(lhs - rhs) / std::abs(rhs));
        }
        ++tested;
    }

    // conjugate-parameter series must come out real
    double worst_imag = 0.0;
    std::uniform_real_distribution<double> u(-30.0, 30.0), zr(0.0, 200.0);
    for (int i = 0; i < 100; ++i) {
        const Complex lam{u(rng), u(rng)};
        const auto s = knr::hyp0f2_regularized(lam, std::conj(lam), {zr(rng), 0.0});
        worst_imag = std::max(worst_imag, std::abs(s.value.imag()) / std::abs(s.value));
    }

    // stop-rule stability: ten extra terms move the sum by < 10 * rel_tol
    const Complex a{0.0, -20.0}, b{0.0, 20.0}, zz{800.0, 0.0};
    const auto stopped = knr::hyp0f2_regularized(a, b, zz);
    Complex term = 1.0 / (knr::complex_gamma(a) * knr::complex_gamma(b));
    Complex sum = term;
    for (int k = 0; k < stopped.terms_used + 9; ++k) {
        term *= zz / ((k + 1.0) * (a + static_cast<double>(k)) *
                      (b + static_cast<double>(k)));
        sum += term;
    }
    const double stability =
        std::abs(sum - stopped.unscaled()) / std::abs(stopped.unscaled());

    const bool ok = worst_rec < 1e-12 && worst_ref < 1e-12 && worst_imag < 1e-12 &&
                    stability < 10.0 * 1e-14;
    report(9, ok,
           fmt("gamma recurrence %.1e, reflection %.1e (both <1e-12); ", worst_rec,
               worst_ref) +
               fmt("conj-pair imag %.1e (<1e-12); stop-rule drift %.1e (<1e-13)",
                   worst_imag, stability));
}

// ---- criterion 10: deterministic, round-trippable exports ----
void criterion_10() {
    const auto spec = knr::figure_preset("fig3a");
    const auto result_a = knr::run_sweep(spec);
    const auto result_b = knr::run_sweep(spec);
    knr::export_result(result_a, knr::ExportFormat::Csv, "/tmp/knr_acc_a.csv");
    knr::export_result(result_b, knr::ExportFormat::Csv, "/tmp/knr_acc_b.csv");

    auto slurp = [](const char* path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp("/tmp/knr_acc_a.csv");
    const std::string b = slurp("/tmp/knr_acc_b.csv");
    const bool identical = !a.empty() && a == b;

    // every numeric field round-trips bit-identically through the text
    bool roundtrip = true;
    std::istringstream lines(a);
    std::string line;
    std::getline(lines, line);  // header
    size_t row_idx = 0;
    while (std::getline(lines, line) && row_idx < result_a.rows.size()) {
        std::vector<std::string> fields;
        std::istringstream fs(line);
        std::string f;
        while (std::getline(fs, f, ',')) fields.push_back(f);
        const auto& row = result_a.rows[row_idx++];
        const double vals[5] = {row.delta, row.p[0], row.p[1], row.mean_n, row.g2};
        const int cols[5] = {0, 3, 4, 13, 14};
        for (int k = 0; k < 5; ++k) {
            const double parsed = std::strtod(fields[cols[k]].c_str(), nullptr);
            if (!(parsed == vals[k] || (std::isnan(parsed) && std::isnan(vals[k])))) {
                roundtrip = false;
            }
        }
    }
    std::remove("/tmp/knr_acc_a.csv");
    std::remove("/tmp/knr_acc_b.csv");
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "CSV export: byte-identical across runs=%s, 17-digit round-trip "
                  "exact=%s (%zu rows)",
                  identical ? "yes" : "no", roundtrip ? "yes" : "no", row_idx);
    report(10, identical && roundtrip && row_idx == result_a.rows.size(), buf);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
    } else {
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
