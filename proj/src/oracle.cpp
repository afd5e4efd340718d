#include "knr/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace knr {

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

// Adds the superoperator of rho -> A rho B for tridiagonal-structured A, B
// (annihilation/creation/number operators), row-major vec index m*dim + n.
void add_sandwich(std::vector<Triplet>& trip, const Eigen::MatrixXcd& a,
                  const Eigen::MatrixXcd& b, Complex weight) {
    const int dim = static_cast<int>(a.rows());
    for (int m = 0; m < dim; ++m) {
        for (int p = 0; p < dim; ++p) {
            if (a(m, p) == Complex(0.0)) continue;
            for (int q = 0; q < dim; ++q) {
                for (int n = 0; n < dim; ++n) {
                    const Complex v = b(q, n);
                    if (v == Complex(0.0)) continue;
                    trip.emplace_back(m * dim + n, p * dim + q, weight * a(m, p) * v);
                }
            }
        }
    }
}

void add_left(std::vector<Triplet>& trip, const Eigen::MatrixXcd& a, Complex weight) {
    const int dim = static_cast<int>(a.rows());
    for (int m = 0; m < dim; ++m) {
        for (int p = 0; p < dim; ++p) {
            if (a(m, p) == Complex(0.0)) continue;
            for (int n = 0; n < dim; ++n) {
                trip.emplace_back(m * dim + n, p * dim + n, weight * a(m, p));
            }
        }
    }
}

void add_right(std::vector<Triplet>& trip, const Eigen::MatrixXcd& b, Complex weight) {
    const int dim = static_cast<int>(b.rows());
    for (int q = 0; q < dim; ++q) {
        for (int n = 0; n < dim; ++n) {
            if (b(q, n) == Complex(0.0)) continue;
            for (int m = 0; m < dim; ++m) {
                trip.emplace_back(m * dim + n, m * dim + q, weight * b(q, n));
            }
        }
    }
}

Eigen::MatrixXcd annihilation(int dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

SteadyStateDensityMatrix solve_at_dim(const KnrParams& params, int dim) {
    const SparseC liouv = build_liouvillian(params, dim);
    const int n2 = dim * dim;

    // replace the (0,0) equation by the trace constraint
    SparseC sys = liouv;
    sys.prune([dim](int row, int, const Complex&) { return row != 0; });
    std::vector<Triplet> trace_row;
    trace_row.reserve(dim);
    for (int n = 0; n < dim; ++n) trace_row.emplace_back(0, n * dim + n, Complex(1.0));
    SparseC tr(n2, n2);
    tr.setFromTriplets(trace_row.begin(), trace_row.end());
    sys += tr;
    sys.makeCompressed();

    Eigen::SparseLU<SparseC> lu(sys);
    if (lu.info() != Eigen::Success) {
        throw SingularSystem("steady_state: sparse LU factorization failed");
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n2);
    rhs(0) = 1.0;
    Eigen::VectorXcd sol = lu.solve(rhs);
    if (lu.info() != Eigen::Success) {
        throw SingularSystem("steady_state: linear solve failed");
    }

    SteadyStateDensityMatrix out;
    out.dim = dim;
    out.elements = Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                            Eigen::RowMajor>>(sol.data(), dim, dim);
    // hermitize and renormalize; the solve leaves only round-off asymmetry
    out.elements = 0.5 * (out.elements + out.elements.adjoint().eval());
    out.elements /= out.elements.trace().real();
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> row_major =
        out.elements;
    Eigen::Map<const Eigen::VectorXcd> vec(row_major.data(), n2);
    out.residual = (liouv * vec).lpNorm<Eigen::Infinity>();
    out.edge_occupancy = out.elements(dim - 1, dim - 1).real();
    return out;
}

}  // namespace

Eigen::SparseMatrix<Complex> build_liouvillian(const KnrParams& params, int dim) {
    params.validate();
    if (dim < 2) throw InvalidParams("build_liouvillian: dim must be >= 2");

    const Eigen::MatrixXcd a = annihilation(dim);
    const Eigen::MatrixXcd ad = a.adjoint();
    const Eigen::MatrixXcd num = ad * a;

    // H = Delta n + chi n(n-1) + Omega (a^† + a); gamma shares the same unit
    Eigen::MatrixXcd h = params.delta * num + params.chi * (num * num - num) +
                         params.omega_drive * (ad + a);

    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(dim) * dim * 16);
    const Complex mi(0.0, -1.0);
    add_left(trip, h, mi);
    add_right(trip, h, -mi);

    const double down = params.gamma * (params.n_bath + 1.0);  // L1 = sqrt((N+1) gamma) a
    add_sandwich(trip, a, ad, down);
    add_left(trip, num, -0.5 * down);
    add_right(trip, num, -0.5 * down);

    if (params.n_bath > 0.0) {  // L2 = sqrt(N gamma) a^†
        const double up = params.gamma * params.n_bath;
        const Eigen::MatrixXcd aad = a * ad;
        add_sandwich(trip, ad, a, up);
        add_left(trip, aad, -0.5 * up);
        add_right(trip, aad, -0.5 * up);
    }

    SparseC liouv(dim * dim, dim * dim);
    liouv.setFromTriplets(trip.begin(), trip.end());
    liouv.makeCompressed();
    return liouv;
}

SteadyStateDensityMatrix steady_state(const KnrParams& params, const OracleConfig& cfg) {
    params.validate();
    if (cfg.n_trunc_init < 4 || !(cfg.growth_factor > 1.0)) {
        throw InvalidParams("steady_state: bad oracle config");
    }
    int dim = cfg.n_trunc_init;
    while (true) {
        SteadyStateDensityMatrix rho = solve_at_dim(params, dim);
        if (rho.edge_occupancy < cfg.edge_tol) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.elements,
                                                               Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -1e-10) {
                throw SingularSystem("steady_state: solution not positive semidefinite");
            }
            return rho;
        }
        if (dim >= cfg.n_trunc_max) {
            throw TruncationNotConverged(
                "steady_state: edge occupancy above tolerance at n_trunc_max");
        }
        dim = std::min(cfg.n_trunc_max,
                       std::max(dim + 1, static_cast<int>(std::ceil(dim * cfg.growth_factor))));
    }
}

OracleObservables oracle_observables(const SteadyStateDensityMatrix& rho) {
    OracleObservables obs;
    obs.probs.resize(rho.dim);
    double mean = 0.0, pair = 0.0;
    for (int n = 0; n < rho.dim; ++n) {
        obs.probs(n) = std::max(rho.elements(n, n).real(), 0.0);
        mean += n * obs.probs(n);
        pair += n * (n - 1.0) * obs.probs(n);
    }
    obs.mean_n = mean;
    if (mean < 1e-14) throw VacuumState("oracle_observables: g2 undefined for vacuum");
    obs.g2 = pair / (mean * mean);
    return obs;
}

WignerGrid oracle_wigner(const SteadyStateDensityMatrix& rho, double x_min, double x_max,
                         double y_min, double y_max, int nx, int ny) {
    if (nx < 2 || ny < 2 || !(x_max > x_min) || !(y_max > y_min)) {
        throw DegenerateWindow("oracle_wigner: empty phase-space window");
    }
    const double amax2 = std::max(x_min * x_min, x_max * x_max) +
                         std::max(y_min * y_min, y_max * y_max);
    double mean = 0.0;
    for (int n = 0; n < rho.dim; ++n) mean += n * rho.elements(n, n).real();
    // margin past the displaced support before the truncated exponential is trusted
    const int needed = rho.dim + static_cast<int>(std::ceil(6.0 * std::sqrt(mean + 1.0) +
                                                            4.0 * amax2));
    const int big = std::max(rho.dim, needed);

    Eigen::MatrixXcd rho_big = Eigen::MatrixXcd::Zero(big, big);
    rho_big.topLeftCorner(rho.dim, rho.dim) = rho.elements;

    // D(alpha) = P(theta) exp(r (a^† - a)) P(theta)^†, alpha = r e^{i theta};
    // a^† - a = i K with K Hermitian, diagonalized once.
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(big, big);
    for (int n = 1; n < big; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXcd k_herm = Complex(0.0, -1.0) * (a.adjoint() - a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k_herm);
    const Eigen::MatrixXcd& evec = es.eigenvectors();
    const Eigen::VectorXd& eval = es.eigenvalues();

    WignerGrid grid;
    grid.x_axis = Eigen::VectorXd::LinSpaced(nx, x_min, x_max);
    grid.y_axis = Eigen::VectorXd::LinSpaced(ny, y_min, y_max);
    grid.values.resize(nx, ny);

    const auto eval_point = [&](int ix, int iy) {
        const double x = grid.x_axis(ix), y = grid.y_axis(iy);
        const double r = std::hypot(x, y);
        const double theta = std::atan2(y, x);
        Eigen::VectorXcd phase(big);
        for (int j = 0; j < big; ++j) phase(j) = std::exp(Complex(0.0, r * eval(j)));
        // D = P V diag(e^{i r lambda}) V^† P^†
        Eigen::MatrixXcd d = evec * phase.asDiagonal() * evec.adjoint();
        for (int m = 0; m < big; ++m) {
            for (int n = 0; n < big; ++n) {
                d(m, n) *= std::exp(Complex(0.0, theta * (m - n)));
            }
        }
        const Eigen::MatrixXcd t = rho_big * d;
        double w = 0.0;
        double sign = 1.0;
        for (int m = 0; m < big; ++m) {
            w += sign * (d.col(m).adjoint() * t.col(m)).value().real();
            sign = -sign;
        }
        grid.values(ix, iy) = (2.0 / std::numbers::pi) * w;
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

    grid.norm_estimate = window_integral(grid);
    if (!(grid.norm_estimate > 0.0)) {
        throw TruncationNotConverged("oracle_wigner: window integral not positive");
    }
    grid.values /= grid.norm_estimate;
    return grid;
}

}  // namespace knr
