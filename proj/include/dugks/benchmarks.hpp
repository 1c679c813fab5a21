#pragma once

#include <utility>
#include <vector>

#include "dugks/fields.hpp"
#include "dugks/solver.hpp"

namespace dugks {

enum class BenchmarkKind { Translation, Zalesak, Vortex };

// The three interface-advection test cases: a circle translated
// diagonally through the periodic box, a slotted disk in solid-body
// rotation, and a circle stretched by a reversing single vortex.
struct BenchmarkCase {
    BenchmarkKind kind = BenchmarkKind::Translation;
    double l0 = 100.0;     // domain edge length
    double u0 = 0.02;      // velocity scale
    double radius = 25.0;  // feature radius
    int n_vortex = 8;      // vortex reversal periods in units of L0/U0
    double slot_width_frac = 0.1875;  // slot width as a fraction of R
    double slot_length_frac = 1.75;   // slot length as a fraction of R

    Vec2 center() const;
    FlowField flow() const;
    // One diagnostic period: L0/U0 for translation, one revolution
    // 2 L0/U0 for the rotating disk, n L0/U0 for the vortex reversal.
    double period_time() const;
    long period_steps(double dt) const;
    ScalarField initial_condition(const Grid2D& grid, double width) const;
};

BenchmarkCase translation_case(double l0 = 100.0, double u0 = 0.02);
BenchmarkCase zalesak_case(double l0 = 200.0, double u0 = 0.02);
BenchmarkCase vortex_case(double l0 = 200.0, double u0 = 0.02, int n = 8);

// tanh profile of width W around a circle; positive inside.
ScalarField init_circle(const Grid2D& grid, Vec2 center, double radius,
                        double width);

// Slotted disk (disk minus an axis-aligned rectangular slot cut upward
// from the bottom rim), as a tanh profile of the combined signed
// distance; positive inside the remaining solid.
ScalarField init_zalesak(const Grid2D& grid, Vec2 center, double radius,
                         double slot_width, double slot_length, double width);

// Signed distances used by the initializers (positive inside).
double sd_circle(Vec2 p, Vec2 center, double radius);
double sd_box(Vec2 p, Vec2 lo, Vec2 hi);
double sd_slotted_disk(Vec2 p, Vec2 center, double radius, double slot_width,
                       double slot_length);

// Relative L2 norm of phi(T) - phi(0); throws on an all-zero reference.
double l2_error(const ScalarField& phi_final, const ScalarField& phi_init);

// h^2 * sum of phi over cells with phi > 0.
double positive_mass(const ScalarField& phi);

std::pair<double, double> phi_extrema(const ScalarField& phi);

// Sum of phi over all cells (conservation diagnostic), fixed order.
double total_phi(const ScalarField& phi);

struct ConvergenceRow {
    int cells;      // grid edge count (= L0 in lattice units)
    double l2;      // error at t = T
    double order;   // log2 ratio against the previous grid, NaN for the first
};

// Translation case at fixed Cahn number: the interface width scales with
// the domain, each grid runs one period, errors and successive orders
// are reported. The prototype config supplies everything but grid and W.
std::vector<ConvergenceRow> convergence_study(const SolverConfig& proto,
                                              const std::vector<int>& grids,
                                              double cn, double u0 = 0.02);

} // namespace dugks
