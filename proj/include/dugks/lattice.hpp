#pragma once

#include <array>
#include <cstddef>

#include "dugks/vec2.hpp"

namespace dugks {

// D2Q9 velocity set: rest, four axis directions, four diagonals.
// Lattice speed c = sqrt(3 RT) is fixed to 1 (RT = 1/3), so the sound
// speed satisfies cs^2 = 1/3. The weights are the standard D2Q9 set;
// the moment conditions they must satisfy are asserted in the tests.
struct LatticeD2Q9 {
    static constexpr int q = 9;

    static constexpr std::array<int, q> ex{0, 1, 0, -1, 0, 1, -1, -1, 1};
    static constexpr std::array<int, q> ey{0, 0, 1, 0, -1, 1, 1, -1, -1};

    static constexpr double rt = 1.0 / 3.0;  // gas constant times temperature
    static constexpr double c = 1.0;         // sqrt(3 RT)
    static constexpr double cs2 = rt;        // (c / sqrt(3))^2
    static constexpr double inv_cs2 = 3.0;

    static constexpr std::array<double, q> w{
        4.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0,
        1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0};

    static constexpr Vec2 xi(int a) { return {c * ex[a], c * ey[a]}; }
};

inline double moment0(const double* f) {
    double s = 0.0;
    for (int a = 0; a < LatticeD2Q9::q; ++a) s += f[a];
    return s;
}

inline Vec2 moment1(const double* f) {
    Vec2 s{};
    for (int a = 0; a < LatticeD2Q9::q; ++a) {
        s.x += LatticeD2Q9::c * LatticeD2Q9::ex[a] * f[a];
        s.y += LatticeD2Q9::c * LatticeD2Q9::ey[a] * f[a];
    }
    return s;
}

// Second moment sum_a xi_a xi_a f_a, returned as (xx, xy, yy).
inline std::array<double, 3> moment2(const double* f) {
    std::array<double, 3> s{0.0, 0.0, 0.0};
    for (int a = 0; a < LatticeD2Q9::q; ++a) {
        const double xx = LatticeD2Q9::c * LatticeD2Q9::ex[a];
        const double xy = LatticeD2Q9::c * LatticeD2Q9::ey[a];
        s[0] += xx * xx * f[a];
        s[1] += xx * xy * f[a];
        s[2] += xy * xy * f[a];
    }
    return s;
}

} // namespace dugks
