#include "dugks/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dugks {

Vec2 BenchmarkCase::center() const {
    if (kind == BenchmarkKind::Vortex) return {0.5 * l0, 0.75 * l0};
    return {0.5 * l0, 0.5 * l0};
}

FlowField BenchmarkCase::flow() const {
    switch (kind) {
        case BenchmarkKind::Translation:
            return FlowField::uniform({u0, u0});
        case BenchmarkKind::Zalesak:
            return FlowField::rotation(u0, l0);
        case BenchmarkKind::Vortex:
            return FlowField::vortex(u0, l0, period_time());
    }
    return {};
}

double BenchmarkCase::period_time() const {
    switch (kind) {
        case BenchmarkKind::Translation:
            return l0 / u0;
        case BenchmarkKind::Zalesak:
            return 2.0 * l0 / u0;
        case BenchmarkKind::Vortex:
            return n_vortex * l0 / u0;
    }
    return 0.0;
}

long BenchmarkCase::period_steps(double dt) const {
    return std::llround(period_time() / dt);
}

ScalarField BenchmarkCase::initial_condition(const Grid2D& grid,
                                             double width) const {
    if (kind == BenchmarkKind::Zalesak)
        return init_zalesak(grid, center(), radius, slot_width_frac * radius,
                            slot_length_frac * radius, width);
    return init_circle(grid, center(), radius, width);
}

BenchmarkCase translation_case(double l0, double u0) {
    return {BenchmarkKind::Translation, l0, u0, 0.25 * l0};
}

BenchmarkCase zalesak_case(double l0, double u0) {
    return {BenchmarkKind::Zalesak, l0, u0, 0.4 * l0};
}

BenchmarkCase vortex_case(double l0, double u0, int n) {
    BenchmarkCase c{BenchmarkKind::Vortex, l0, u0, 0.15 * l0};
    c.n_vortex = n;
    return c;
}

double sd_circle(Vec2 p, Vec2 center, double radius) {
    return radius - norm(p - center);
}

double sd_box(Vec2 p, Vec2 lo, Vec2 hi) {
    const Vec2 c{0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)};
    const Vec2 b{0.5 * (hi.x - lo.x), 0.5 * (hi.y - lo.y)};
    const double qx = std::abs(p.x - c.x) - b.x;
    const double qy = std::abs(p.y - c.y) - b.y;
    const double outside =
        std::hypot(std::max(qx, 0.0), std::max(qy, 0.0));
    const double inside = std::min(std::max(qx, qy), 0.0);
    return -(outside + inside);  // positive inside
}

double sd_slotted_disk(Vec2 p, Vec2 center, double radius, double slot_width,
                       double slot_length) {
    const double disk = sd_circle(p, center, radius);
    const Vec2 lo{center.x - 0.5 * slot_width, center.y - radius};
    const Vec2 hi{center.x + 0.5 * slot_width, center.y - radius + slot_length};
    const double slot = sd_box(p, lo, hi);
    return std::min(disk, -slot);
}

ScalarField init_circle(const Grid2D& grid, Vec2 center, double radius,
                        double width) {
    ScalarField phi(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double d = sd_circle({grid.x(i), grid.y(j)}, center, radius);
            phi(i, j) = std::tanh(2.0 * d / width);
        }
    return phi;
}

ScalarField init_zalesak(const Grid2D& grid, Vec2 center, double radius,
                         double slot_width, double slot_length, double width) {
    ScalarField phi(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double d = sd_slotted_disk({grid.x(i), grid.y(j)}, center,
                                             radius, slot_width, slot_length);
            phi(i, j) = std::tanh(2.0 * d / width);
        }
    return phi;
}

double l2_error(const ScalarField& phi_final, const ScalarField& phi_init) {
    if (phi_final.grid != phi_init.grid)
        throw std::invalid_argument("l2_error: mismatched grids");
    double num = 0.0, den = 0.0;
    const std::size_t n = phi_init.grid.cells();
    for (std::size_t k = 0; k < n; ++k) {
        const double d = phi_final.values[k] - phi_init.values[k];
        num += d * d;
        den += phi_init.values[k] * phi_init.values[k];
    }
    if (den == 0.0)
        throw std::invalid_argument("l2_error: reference field is identically zero");
    return std::sqrt(num / den);
}

double positive_mass(const ScalarField& phi) {
    double m = 0.0;
    for (double v : phi.values)
        if (v > 0.0) m += v;
    return m * phi.grid.h * phi.grid.h;
}

std::pair<double, double> phi_extrema(const ScalarField& phi) {
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (double v : phi.values) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    return {mn, mx};
}

double total_phi(const ScalarField& phi) {
    double s = 0.0;
    for (double v : phi.values) s += v;
    return s;
}

std::vector<ConvergenceRow> convergence_study(const SolverConfig& proto,
                                              const std::vector<int>& grids,
                                              double cn, double u0) {
    std::vector<ConvergenceRow> rows;
    double prev = 0.0;
    for (int n : grids) {
        SolverConfig cfg = proto;
        cfg.grid = Grid2D(n, n, 1.0);
        cfg.u0 = u0;
        cfg.width = cn * n;  // fixed Cahn number: W tracks the domain size
        BenchmarkCase bench = translation_case(double(n), u0);
        Solver solver(cfg, bench.flow());
        const ScalarField phi0 = bench.initial_condition(cfg.grid, cfg.width);
        solver.set_initial_condition(phi0);
        solver.advance(bench.period_steps(solver.dt()));
        const double err = l2_error(solver.state().phi, phi0);
        ConvergenceRow row{n, err, std::numeric_limits<double>::quiet_NaN()};
        if (!rows.empty()) row.order = std::log2(prev / err);
        rows.push_back(row);
        prev = err;
    }
    return rows;
}

} // namespace dugks
