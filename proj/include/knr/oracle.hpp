#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "knr/grid.hpp"
#include "knr/model.hpp"

namespace knr {

struct OracleConfig {
    int n_trunc_init = 20;
    int n_trunc_max = 160;
    double edge_tol = 1e-10;
    double growth_factor = 1.5;
};

// Steady state of the master equation in a truncated Fock basis
// |0> ... |dim-1>, with the convergence certificate attached.
struct SteadyStateDensityMatrix {
    int dim = 0;
    Eigen::MatrixXcd elements;
    double residual = 0.0;        // ||L rho||_inf of the returned solution
    double edge_occupancy = 0.0;  // rho_{dim-1, dim-1}
};

struct OracleObservables {
    Eigen::VectorXd probs;
    double mean_n = 0.0;
    double g2 = 0.0;
};

// Superoperator matrix of drho/dt = -i[H0, rho] + dissipators, acting on
// row-major vec(rho) with index m*dim + n for element (m, n).
Eigen::SparseMatrix<Complex> build_liouvillian(const KnrParams& params, int dim);

// Direct sparse solve of L rho = 0 with one row replaced by the trace
// constraint; the truncation dim grows geometrically until the edge
// population certificate holds.
SteadyStateDensityMatrix steady_state(const KnrParams& params, const OracleConfig& cfg = {});

OracleObservables oracle_observables(const SteadyStateDensityMatrix& rho);

// Displaced-parity Wigner function W(a) = (2/pi) Tr[Pi D(a)^† rho D(a)],
// D built from the matrix exponential of a*ad - conj(a)*a in a basis padded
// past the displaced support; normalized to unit window integral.
WignerGrid oracle_wigner(const SteadyStateDensityMatrix& rho, double x_min, double x_max,
                         double y_min, double y_max, int nx, int ny);

}  // namespace knr
