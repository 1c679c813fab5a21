#pragma once

#include <array>
#include <cmath>

#include "dugks/vec2.hpp"

namespace dugks {

enum class FaceSchemeKind { CDI2, CDI4, WenoZ3, WenoZ5 };

struct FaceScheme {
    FaceSchemeKind kind = FaceSchemeKind::WenoZ5;
    double weno_eps = 1e-6;
    int weno_p = 1;
};

namespace stencil {

inline double pow_int(double x, int p) {
    double r = x;
    for (int k = 1; k < p; ++k) r *= x;
    return r;
}

// Linear interpolations to the face at x_{i+1/2}; inputs are cell
// averages in increasing coordinate order.
inline double cdi2(double f0, double f1) { return 0.5 * (f0 + f1); }

inline double cdi4(double fm1, double f0, double f1, double f2) {
    return (7.0 * (f0 + f1) - fm1 - f2) * (1.0 / 12.0);
}

// WENO inputs are ordered from the upwind side: for positive wind at
// x_{i+1/2}, v = (f_{i-1}, f_i, f_{i+1}) resp. (f_{i-2}, ..., f_{i+2});
// for negative wind pass the mirrored window reversed.

struct WenoZ3Weights {
    double w_central;  // candidate (f_i + f_{i+1})/2, optimal 2/3
    double w_biased;   // candidate (3 f_i - f_{i-1})/2, optimal 1/3
};

inline WenoZ3Weights weno_z3_weights(double v0, double v1, double v2,
                                     double eps, int p) {
    const double z1 = (v2 - v1) * (v2 - v1);
    const double z2 = (v1 - v0) * (v1 - v0);
    const double tz = std::abs(z1 - z2);
    const double a1 = (2.0 / 3.0) * (1.0 + pow_int(tz / (eps + z1), p));
    const double a2 = (1.0 / 3.0) * (1.0 + pow_int(tz / (eps + z2), p));
    const double inv = 1.0 / (a1 + a2);
    return {a1 * inv, a2 * inv};
}

inline double weno_z3(double v0, double v1, double v2, double eps, int p) {
    const WenoZ3Weights w = weno_z3_weights(v0, v1, v2, eps, p);
    return w.w_central * 0.5 * (v1 + v2) + w.w_biased * 0.5 * (3.0 * v1 - v0);
}

struct WenoZ5Weights {
    double w1, w2, w3;  // optimal 0.1, 0.6, 0.3
};

inline WenoZ5Weights weno_z5_weights(double v0, double v1, double v2,
                                     double v3, double v4, double eps, int p) {
    const double d1 = v0 - 2.0 * v1 + v2;
    const double d2 = v1 - 2.0 * v2 + v3;
    const double d3 = v2 - 2.0 * v3 + v4;
    const double e1 = v0 - 4.0 * v1 + 3.0 * v2;
    const double e2 = v1 - v3;
    const double e3 = 3.0 * v2 - 4.0 * v3 + v4;
    const double z1 = (13.0 / 12.0) * d1 * d1 + 0.25 * e1 * e1;
    const double z2 = (13.0 / 12.0) * d2 * d2 + 0.25 * e2 * e2;
    const double z3 = (13.0 / 12.0) * d3 * d3 + 0.25 * e3 * e3;
    const double tz = std::abs(z1 - z3);
    const double a1 = 0.1 * (1.0 + pow_int(tz / (eps + z1), p));
    const double a2 = 0.6 * (1.0 + pow_int(tz / (eps + z2), p));
    const double a3 = 0.3 * (1.0 + pow_int(tz / (eps + z3), p));
    const double inv = 1.0 / (a1 + a2 + a3);
    return {a1 * inv, a2 * inv, a3 * inv};
}

inline double weno_z5(double v0, double v1, double v2, double v3, double v4,
                      double eps, int p) {
    const WenoZ5Weights w = weno_z5_weights(v0, v1, v2, v3, v4, eps, p);
    const double c1 = (2.0 * v0 - 7.0 * v1 + 11.0 * v2) * (1.0 / 6.0);
    const double c2 = (-v1 + 5.0 * v2 + 2.0 * v3) * (1.0 / 6.0);
    const double c3 = (2.0 * v2 + 5.0 * v3 - v4) * (1.0 / 6.0);
    return w.w1 * c1 + w.w2 * c2 + w.w3 * c3;
}

// Derivatives at the x-face (i+1/2, j). "c" arguments are cell averages
// along the row, "fv" arguments are already-interpolated face values at
// neighboring rows of the same face column.

inline double face_ddx(double cm1, double c0, double cp1, double cp2, double h) {
    return (cm1 - 15.0 * c0 + 15.0 * cp1 - cp2) / (12.0 * h);
}

inline double face_ddy(double fvm2, double fvm1, double fvp1, double fvp2, double h) {
    return (8.0 * (fvp1 - fvm1) - fvp2 + fvm2) / (12.0 * h);
}

inline double face_d2dx2(double cm1, double c0, double cp1, double cp2, double h) {
    return (cp2 - cp1 - c0 + cm1) / (2.0 * h * h);
}

inline double face_d2dy2(double fvm1, double fv0, double fvp1, double h) {
    return (fvp1 - 2.0 * fv0 + fvm1) / (h * h);
}

inline double face_d2dxdy(double c0_jm1, double c0_jp1, double cp1_jm1,
                          double cp1_jp1, double h) {
    return (cp1_jp1 - cp1_jm1 - c0_jp1 + c0_jm1) / (2.0 * h * h);
}

} // namespace stencil

// Face value at x_{i+1/2} from cell averages in increasing coordinate
// order. For wind >= 0 pass the window {i-2 .. i+2}; for wind < 0 pass
// {i-1 .. i+3} (the WENO formulas are mirrored about the face). CDI2
// uses entries 2,3 of the window, CDI4 entries 1..4; both ignore wind.
double face_value(const FaceScheme& s, const double cells[5], int wind);

// Stencil bundle around the x-face (i+1/2, j); everything the Eq.-style
// face-derivative formulas need.
struct FaceStencilX {
    std::array<double, 4> c;    // cells i-1, i, i+1, i+2 at row j
    std::array<double, 5> fv;   // face values at rows j-2 .. j+2
    std::array<double, 2> cjm;  // cells i, i+1 at row j-1
    std::array<double, 2> cjp;  // cells i, i+1 at row j+1
};

Vec2 face_first_derivatives(const FaceStencilX& s, double h);
// Returns (dxx, dyy, dxy).
std::array<double, 3> face_second_derivatives(const FaceStencilX& s, double h);

// Row kernels used by the solver sweeps.
//
// x-faces: out[i] = face value at (i+1/2, j) from one periodic row of
// cell averages. wind is the sign of the x velocity component; wind == 0
// means no upwind side exists (WENO then averages the two one-sided
// reconstructions, the linear schemes are symmetric anyway).
void face_values_row_x(const FaceScheme& s, const double* cells, int nx,
                       int wind, double* out);

// y-faces: out[i] = face value at (i, j+1/2) for every i of a row, from
// the six wrapped row pointers {j-2 .. j+3}.
void face_values_row_y(const FaceScheme& s, const double* const rows[6],
                       int nx, int wind, double* out);

} // namespace dugks
