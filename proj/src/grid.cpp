#include "knr/grid.hpp"

namespace knr {

double window_integral(const WignerGrid& grid) {
    const int nx = static_cast<int>(grid.x_axis.size());
    const int ny = static_cast<int>(grid.y_axis.size());
    const double hx = (grid.x_axis(nx - 1) - grid.x_axis(0)) / (nx - 1);
    const double hy = (grid.y_axis(ny - 1) - grid.y_axis(0)) / (ny - 1);
    double sum = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        const double wx = (ix == 0 || ix == nx - 1) ? 0.5 : 1.0;
        for (int iy = 0; iy < ny; ++iy) {
            const double wy = (iy == 0 || iy == ny - 1) ? 0.5 : 1.0;
            sum += wx * wy * grid.values(ix, iy);
        }
    }
    return sum * hx * hy;
}

}  // namespace knr
