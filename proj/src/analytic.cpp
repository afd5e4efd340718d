#include "knr/analytic.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace knr {

namespace {

// log of the everywhere-finite series sum_k z^k / (k! |Gamma(k+a)|^2) for a
// conjugate parameter pair and real z >= 0; all terms are positive.
double log_conj_pair_series(Complex a, double z, const SeriesConfig& cfg) {
    const auto s = hyp0f2_regularized(a, std::conj(a), z, cfg);
    return s.log_abs();
}

}  // namespace

Complex analytic_lambda(const KnrParams& params, const AnalyticConvention& conv) {
    return derive(params, conv.conv, conv.gamma_scale).lambda;
}

double PhotonDistribution::mean() const {
    double m = 0.0;
    for (int n = 1; n <= n_max; ++n) m += n * p(n);
    return m;
}

double PhotonDistribution::second_factorial_moment() const {
    double m = 0.0;
    for (int n = 2; n <= n_max; ++n) m += n * (n - 1.0) * p(n);
    return m;
}

PhotonDistribution photon_distribution(const KnrParams& params, const SeriesConfig& cfg,
                                       const AnalyticConvention& conv) {
    params.validate_analytic();
    PhotonDistribution dist;

    if (params.omega_drive == 0.0) {
        dist.probs = Eigen::VectorXd::Zero(1);
        dist.probs(0) = 1.0;
        dist.n_max = 0;
        dist.tail_mass = 0.0;
        return dist;
    }

    const Complex lambda = analytic_lambda(params, conv);
    const double eps2 = std::pow(params.omega_drive / params.chi, 2.0);
    const double log_eps2 = std::log(eps2);
    const double log_den = log_conj_pair_series(lambda, 2.0 * eps2, cfg);

    std::vector<double> probs;
    // stop after three consecutive populations below threshold; the cut also
    // has to be negligible relative to the first two factorial moments, so
    // that truncated moments reproduce the closed forms to 1e-9 relative
    // even when the excited manifold carries almost no weight
    double moment1 = 0.0, moment2 = 0.0;
    int consecutive_small = 0;
    double log_factorial = 0.0;
    constexpr int kMaxStates = 512;
    for (int n = 0; n < kMaxStates; ++n) {
        if (n > 0) log_factorial += std::log(static_cast<double>(n));
        const double log_num =
            log_conj_pair_series(lambda + static_cast<double>(n), eps2, cfg);
        const double pn = std::exp(n * log_eps2 - log_factorial + log_num - log_den);
        probs.push_back(pn);
        moment1 += n * pn;
        moment2 += n * (n - 1.0) * pn;
        if (n >= 2) {
            const bool small = pn < 1e-12 && n * pn < 1e-12 * moment1 &&
                               n * (n - 1.0) * pn < 1e-12 * moment2;
            consecutive_small = small ? consecutive_small + 1 : 0;
            if (consecutive_small >= 3) break;
        }
    }
    if (consecutive_small < 3) {
        throw NonConvergence("photon_distribution: no factorial cutoff before 512 states");
    }

    dist.n_max = static_cast<int>(probs.size()) - 1;
    dist.probs = Eigen::Map<Eigen::VectorXd>(probs.data(), probs.size());

    // geometric tail bound from the last retained ratio
    const double last = dist.probs(dist.n_max);
    const double prev = dist.probs(dist.n_max - 1);
    if (last > 0.0 && prev > 0.0 && last < prev) {
        const double r = last / prev;
        dist.tail_mass = last * r / (1.0 - r);
    } else {
        dist.tail_mass = 0.0;
    }

    dist.probs *= (1.0 - dist.tail_mass) / dist.probs.sum();
    return dist;
}

double mean_photon_number(const KnrParams& params, const SeriesConfig& cfg,
                          const AnalyticConvention& conv) {
    params.validate_analytic();
    if (params.omega_drive == 0.0) return 0.0;
    const Complex lambda = analytic_lambda(params, conv);
    const double eps2 = std::pow(params.omega_drive / params.chi, 2.0);
    const double z = 2.0 * eps2;
    return std::exp(std::log(eps2) + log_conj_pair_series(lambda + 1.0, z, cfg) -
                    log_conj_pair_series(lambda, z, cfg));
}

double g2_zero_delay(const KnrParams& params, const SeriesConfig& cfg,
                     const AnalyticConvention& conv) {
    params.validate_analytic();
    const double mean = mean_photon_number(params, cfg, conv);
    if (mean < 1e-14) throw VacuumState("g2_zero_delay: undefined for vacuum");
    const Complex lambda = analytic_lambda(params, conv);
    const double eps2 = std::pow(params.omega_drive / params.chi, 2.0);
    const double z = 2.0 * eps2;
    return std::exp(2.0 * std::log(eps2) + log_conj_pair_series(lambda + 2.0, z, cfg) -
                    log_conj_pair_series(lambda, z, cfg) - 2.0 * std::log(mean));
}

ObservableSet observables(const KnrParams& params, const SeriesConfig& cfg,
                          const AnalyticConvention& conv) {
    ObservableSet obs;
    obs.mean_n = mean_photon_number(params, cfg, conv);
    obs.g2 = g2_zero_delay(params, cfg, conv);
    obs.variance_n = obs.mean_n + obs.mean_n * obs.mean_n * (obs.g2 - 1.0);
    return obs;
}

WignerGrid wigner(const KnrParams& params, double x_min, double x_max, double y_min,
                  double y_max, int nx, int ny, const SeriesConfig& cfg,
                  const AnalyticConvention& conv) {
    params.validate_analytic();
    if (nx < 2 || ny < 2 || !(x_max > x_min) || !(y_max > y_min)) {
        throw DegenerateWindow("wigner: empty phase-space window");
    }
    const Complex lambda = analytic_lambda(params, conv);
    const double eps = params.omega_drive / params.chi;

    WignerGrid grid;
    grid.x_axis = Eigen::VectorXd::LinSpaced(nx, x_min, x_max);
    grid.y_axis = Eigen::VectorXd::LinSpaced(ny, y_min, y_max);
    grid.values.resize(nx, ny);
    Eigen::MatrixXd log_vals(nx, ny);

    // log W(alpha) up to the window normalization: the alpha-independent
    // prefactor is absorbed, so only the series and the Gaussian remain.
    // The series argument -2 conj(alpha) eps is the orientation/sign that
    // reproduces the displaced-parity oracle to machine precision; the
    // printed 2*alpha*eps differs by the drive-phase convention.
    const auto eval_point = [&](int ix, int iy) {
        const Complex alpha(grid.x_axis(ix), grid.y_axis(iy));
        const auto s = hyp0f1_regularized(lambda, -2.0 * std::conj(alpha) * eps, cfg);
        const double log_mod = std::log(std::abs(s.value)) + s.log_scale;
        log_vals(ix, iy) = 2.0 * log_mod - 2.0 * std::norm(alpha);
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    for (unsigned t = 0; t < hw; ++t) {
        workers.emplace_back([&] {
            int ix;
            while ((ix = next.fetch_add(1)) < nx) {
                for (int iy = 0; iy < ny; ++iy) eval_point(ix, iy);
            }
        });
    }
    for (auto& w : workers) w.join();

    const double peak = log_vals.maxCoeff();
    grid.values = (log_vals.array() - peak).exp();
    grid.norm_estimate = window_integral(grid);
    if (!(grid.norm_estimate > 0.0)) {
        throw NonConvergence("wigner: window integral not positive");
    }
    grid.values /= grid.norm_estimate;
    grid.norm_estimate *= std::exp(peak);  // raw integral before rescaling
    return grid;
}

}  // namespace knr
