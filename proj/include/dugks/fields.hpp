#pragma once

#include <cstddef>
#include <vector>

#include "dugks/lattice.hpp"
#include "dugks/vec2.hpp"

namespace dugks {

// Non-negative modulus. n must be positive and i within a few periods of
// [0, n); the branchy form beats fmod-style arithmetic on the hot paths.
inline int periodic_index(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

// Uniform periodic Cartesian grid, square cells of size h. Cell (i, j)
// is centered at ((i + 1/2) h, (j + 1/2) h). The minimum extent of 5
// cells per direction covers the widest face-reconstruction stencil.
struct Grid2D {
    int nx = 0;
    int ny = 0;
    double h = 1.0;

    Grid2D() = default;
    Grid2D(int nx_, int ny_, double h_);

    std::size_t cells() const { return std::size_t(nx) * std::size_t(ny); }
    std::size_t idx(int i, int j) const { return std::size_t(j) * nx + i; }
    double x(int i) const { return (i + 0.5) * h; }
    double y(int j) const { return (j + 0.5) * h; }
    double lx() const { return nx * h; }
    double ly() const { return ny * h; }

    bool operator==(const Grid2D&) const = default;
};

struct ScalarField {
    Grid2D grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid2D& g, double fill = 0.0)
        : grid(g), values(g.cells(), fill) {}

    double& operator()(int i, int j) { return values[grid.idx(i, j)]; }
    double operator()(int i, int j) const { return values[grid.idx(i, j)]; }

    double wrapped(int i, int j) const {
        return values[grid.idx(periodic_index(i, grid.nx),
                               periodic_index(j, grid.ny))];
    }

    double* data() { return values.data(); }
    const double* data() const { return values.data(); }
    double* row(int j) { return values.data() + std::size_t(j) * grid.nx; }
    const double* row(int j) const { return values.data() + std::size_t(j) * grid.nx; }
};

// Two scalar planes, kept separate so stencil sweeps stream each component.
struct VectorField {
    Grid2D grid;
    ScalarField x;
    ScalarField y;

    VectorField() = default;
    explicit VectorField(const Grid2D& g) : grid(g), x(g), y(g) {}

    Vec2 at(int i, int j) const { return {x(i, j), y(i, j)}; }
    void set(int i, int j, Vec2 v) { x(i, j) = v.x; y(i, j) = v.y; }
};

// Nine cell-average planes, one per discrete velocity. Plane-contiguous
// storage keeps the per-population stencil sweeps unit-stride.
struct DistField {
    Grid2D grid;
    std::vector<double> values;  // plane a at offset a * nx * ny

    DistField() = default;
    explicit DistField(const Grid2D& g)
        : grid(g), values(g.cells() * LatticeD2Q9::q, 0.0) {}

    double* plane(int a) { return values.data() + std::size_t(a) * grid.cells(); }
    const double* plane(int a) const {
        return values.data() + std::size_t(a) * grid.cells();
    }

    double& operator()(int a, int i, int j) {
        return values[std::size_t(a) * grid.cells() + grid.idx(i, j)];
    }
    double operator()(int a, int i, int j) const {
        return values[std::size_t(a) * grid.cells() + grid.idx(i, j)];
    }

    // Per-cell load/store used by the moment and transform helpers.
    void gather(int i, int j, double* f9) const {
        for (int a = 0; a < LatticeD2Q9::q; ++a) f9[a] = (*this)(a, i, j);
    }
    void scatter(int i, int j, const double* f9) {
        for (int a = 0; a < LatticeD2Q9::q; ++a) (*this)(a, i, j) = f9[a];
    }
};

// Cell-centered gradient with the D2Q9-weighted isotropic stencil:
// grad phi(x) = 1/(cs^2 h) sum_{a != 0} w_a xi_a phi(x + xi_a h / c).
// Second-order accurate with an isotropic leading error term.
VectorField isotropic_gradient(const ScalarField& phi);

// Plain central differences, kept for sensitivity comparisons.
VectorField central_gradient(const ScalarField& phi);

// n = grad phi / (|grad phi| + eps); |n| <= 1 everywhere and the bulk
// (vanishing-gradient) cells degrade smoothly to zero instead of NaN.
VectorField interface_normal(const VectorField& grad, double eps = 1e-12);

bool all_finite(const ScalarField& f);

} // namespace dugks
