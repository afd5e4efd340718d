#pragma once

#include <Eigen/Dense>

namespace knr {

// Sampled Wigner function over a rectangular phase-space window.
struct WignerGrid {
    Eigen::VectorXd x_axis;
    Eigen::VectorXd y_axis;
    Eigen::MatrixXd values;      // values(ix, iy) = W(x_axis[ix] + i*y_axis[iy])
    double norm_estimate = 0.0;  // window integral before rescaling to 1
};

// Trapezoidal integral of a grid function over the window.
double window_integral(const WignerGrid& grid);

}  // namespace knr
