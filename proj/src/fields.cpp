#include "dugks/fields.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dugks {

Grid2D::Grid2D(int nx_, int ny_, double h_) : nx(nx_), ny(ny_), h(h_) {
    if (nx < 5 || ny < 5)
        throw std::invalid_argument("Grid2D: need at least 5 cells per direction, got " +
                                    std::to_string(nx) + "x" + std::to_string(ny));
    if (!(h > 0.0)) throw std::invalid_argument("Grid2D: cell size must be positive");
}

VectorField isotropic_gradient(const ScalarField& phi) {
    const Grid2D& g = phi.grid;
    VectorField grad(g);
    // 1/(cs^2 h) * w_a over the axis (1/9) and diagonal (1/36) links.
    const double ca = 1.0 / (3.0 * g.h);
    const double cd = 1.0 / (12.0 * g.h);
    for (int j = 0; j < g.ny; ++j) {
        const double* rn = phi.row(periodic_index(j + 1, g.ny));
        const double* rs = phi.row(periodic_index(j - 1, g.ny));
        const double* rc = phi.row(j);
        double* gx = grad.x.row(j);
        double* gy = grad.y.row(j);
        for (int i = 0; i < g.nx; ++i) {
            const int ie = periodic_index(i + 1, g.nx);
            const int iw = periodic_index(i - 1, g.nx);
            gx[i] = ca * (rc[ie] - rc[iw]) +
                    cd * (rn[ie] - rn[iw] + rs[ie] - rs[iw]);
            gy[i] = ca * (rn[i] - rs[i]) +
                    cd * (rn[ie] - rs[ie] + rn[iw] - rs[iw]);
        }
    }
    return grad;
}

VectorField central_gradient(const ScalarField& phi) {
    const Grid2D& g = phi.grid;
    VectorField grad(g);
    const double c = 1.0 / (2.0 * g.h);
    for (int j = 0; j < g.ny; ++j) {
        const double* rn = phi.row(periodic_index(j + 1, g.ny));
        const double* rs = phi.row(periodic_index(j - 1, g.ny));
        const double* rc = phi.row(j);
        double* gx = grad.x.row(j);
        double* gy = grad.y.row(j);
        for (int i = 0; i < g.nx; ++i) {
            const int ie = periodic_index(i + 1, g.nx);
            const int iw = periodic_index(i - 1, g.nx);
            gx[i] = c * (rc[ie] - rc[iw]);
            gy[i] = c * (rn[i] - rs[i]);
        }
    }
    return grad;
}

VectorField interface_normal(const VectorField& grad, double eps) {
    VectorField n(grad.grid);
    const std::size_t m = grad.grid.cells();
    const double* gx = grad.x.data();
    const double* gy = grad.y.data();
    double* nx = n.x.data();
    double* ny = n.y.data();
    for (std::size_t k = 0; k < m; ++k) {
        const double mag = std::sqrt(gx[k] * gx[k] + gy[k] * gy[k]) + eps;
        nx[k] = gx[k] / mag;
        ny[k] = gy[k] / mag;
    }
    return n;
}

bool all_finite(const ScalarField& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace dugks
