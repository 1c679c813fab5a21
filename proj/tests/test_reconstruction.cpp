#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dugks/fields.hpp"
#include "dugks/reconstruction.hpp"

using namespace dugks;
using namespace dugks::stencil;

namespace {

const FaceScheme kSchemes[] = {
    {FaceSchemeKind::CDI2}, {FaceSchemeKind::CDI4},
    {FaceSchemeKind::WenoZ3}, {FaceSchemeKind::WenoZ5}};

// Exact machinery for manufactured polynomial fields: values, derivatives
// and cell/face averages of sums of x^p y^q, evaluated analytically.
// This is the independent oracle behind every stencil check below.
struct Poly2D {
    double c[5][5] = {};  // coefficient of x^p y^q

    double value(double x, double y) const {
        double s = 0.0;
        for (int p = 4; p >= 0; --p) {
            double row = 0.0;
            for (int q = 4; q >= 0; --q) row = row * y + c[p][q];
            s = s * x + row;
        }
        return s;
    }

    Poly2D dx() const {
        Poly2D d;
        for (int p = 1; p < 5; ++p)
            for (int q = 0; q < 5; ++q) d.c[p - 1][q] = p * c[p][q];
        return d;
    }

    Poly2D dy() const {
        Poly2D d;
        for (int p = 0; p < 5; ++p)
            for (int q = 1; q < 5; ++q) d.c[p][q - 1] = q * c[p][q];
        return d;
    }

    // average of t^p over [m - h/2, m + h/2]
    static double avg1(double m, double h, int p) {
        const double a = m - 0.5 * h, b = m + 0.5 * h;
        double pa = a, pb = b;  // a^(p+1), b^(p+1)
        for (int k = 0; k < p; ++k) {
            pa *= a;
            pb *= b;
        }
        return (pb - pa) / ((p + 1) * h);
    }

    static double pow_i(double x, int p) {
        double r = 1.0;
        for (int k = 0; k < p; ++k) r *= x;
        return r;
    }

    double cell_average(double xc, double yc, double h) const {
        double s = 0.0;
        for (int p = 0; p < 5; ++p)
            for (int q = 0; q < 5; ++q)
                if (c[p][q] != 0.0) s += c[p][q] * avg1(xc, h, p) * avg1(yc, h, q);
        return s;
    }

    // average over the x-face segment: x fixed, y spanning one cell
    double face_average_x(double xf, double yc, double h) const {
        double s = 0.0;
        for (int p = 0; p < 5; ++p)
            for (int q = 0; q < 5; ++q)
                if (c[p][q] != 0.0) s += c[p][q] * pow_i(xf, p) * avg1(yc, h, q);
        return s;
    }
};

Poly2D generic_poly() {
    // generic degree-4 polynomial with O(1) mixed derivatives
    Poly2D f;
    const double coef[5][5] = {
        {0.7, -1.1, 0.8, -0.3, 0.15},
        {1.3, 0.9, -0.6, 0.2, 0.0},
        {-0.8, 0.5, 0.7, 0.0, 0.0},
        {0.4, -0.35, 0.0, 0.0, 0.0},
        {0.25, 0.0, 0.0, 0.0, 0.0},
    };
    for (int p = 0; p < 5; ++p)
        for (int q = 0; q < 5; ++q) f.c[p][q] = coef[p][q];
    return f;
}

} // namespace

TEST_CASE("constant stencils reproduce the constant for every scheme and wind") {
    const double v = 0.8125;
    const double cells[5] = {v, v, v, v, v};
    for (const FaceScheme& s : kSchemes)
        for (int wind : {-1, 0, 1})
            CHECK(face_value(s, cells, wind) == doctest::Approx(v).epsilon(1e-15));
}

TEST_CASE("linear data is reconstructed exactly") {
    // f_i = i around the face at i + 1/2
    const double inc[5] = {-2, -1, 0, 1, 2};   // window i-2 .. i+2
    const double dec[5] = {-1, 0, 1, 2, 3};    // window i-1 .. i+3
    for (const FaceScheme& s : kSchemes) {
        CHECK(face_value(s, inc, 1) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(face_value(s, dec, -1) == doctest::Approx(0.5).epsilon(1e-14));
    }
    // all smoothness indicators agree on linear data, so the nonlinear
    // weights collapse to the optimal ones
    const auto w5 = weno_z5_weights(-2, -1, 0, 1, 2, 1e-6, 1);
    CHECK(w5.w1 == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(w5.w2 == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(w5.w3 == doctest::Approx(0.3).epsilon(1e-13));
    const auto w3 = weno_z3_weights(-1, 0, 1, 1e-6, 1);
    CHECK(w3.w_central == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(w3.w_biased == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("fourth-order interpolation, direct evaluation") {
    CHECK(cdi4(0, 1, 2, 3) == doctest::Approx(1.5).epsilon(1e-15));
    const double cells[5] = {9.0, 0.0, 1.0, 2.0, 3.0};
    CHECK(face_value({FaceSchemeKind::CDI4}, cells, 1) ==
          doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("WENO weights are positive and normalized on arbitrary data") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> d(-100.0, 100.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const double v0 = d(rng), v1 = d(rng), v2 = d(rng), v3 = d(rng),
                     v4 = d(rng);
        const auto w5 = weno_z5_weights(v0, v1, v2, v3, v4, 1e-6, 1);
        CHECK(w5.w1 >= 0.0);
        CHECK(w5.w2 >= 0.0);
        CHECK(w5.w3 >= 0.0);
        CHECK(w5.w1 + w5.w2 + w5.w3 == doctest::Approx(1.0).epsilon(1e-12));
        const auto w3 = weno_z3_weights(v0, v1, v2, 1e-6, 1);
        CHECK(w3.w_central >= 0.0);
        CHECK(w3.w_biased >= 0.0);
        CHECK(w3.w_central + w3.w_biased == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("WENO-Z5 degenerates to the optimal-weight value on smooth data") {
    // quadratic data: nonlinear and optimal-weight reconstructions agree
    auto quad = [](double x) { return 0.3 * x * x - 0.7 * x + 0.2; };
    const double h = 0.1;
    double v[5];
    for (int k = 0; k < 5; ++k) v[k] = quad((k - 2) * h);
    const double nonlinear = weno_z5(v[0], v[1], v[2], v[3], v[4], 1e-6, 1);
    const double c1 = (2 * v[0] - 7 * v[1] + 11 * v[2]) / 6.0;
    const double c2 = (-v[1] + 5 * v[2] + 2 * v[3]) / 6.0;
    const double c3 = (2 * v[2] + 5 * v[3] - v[4]) / 6.0;
    const double linear = 0.1 * c1 + 0.6 * c2 + 0.3 * c3;
    CHECK(nonlinear == doctest::Approx(linear).epsilon(1e-10));
}

TEST_CASE("step data: WENO face values stay inside the data range") {
    const double step_pos[5] = {0, 0, 0, 1, 1};
    const double step_neg[5] = {0, 0, 1, 1, 1};
    for (FaceSchemeKind kind : {FaceSchemeKind::WenoZ3, FaceSchemeKind::WenoZ5}) {
        const FaceScheme s{kind};
        for (int wind : {-1, 1})
            for (const double* data : {step_pos, step_neg}) {
                const double v = face_value(s, data, wind);
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
    }
    // the linear fourth-order formula is allowed to overshoot here
    CHECK(cdi4(0, 0, 1, 1) == doctest::Approx(0.5));
    CHECK(cdi4(0, 0, 0, 1) < 0.0);
}

namespace {

// RMS face-value error for cell-averaged sin data on n cells of [0, 1).
double scheme_error(const FaceScheme& s, int n, int wind) {
    const double h = 1.0 / n;
    const double w = 2.0 * M_PI;
    std::vector<double> avg(n);
    for (int i = 0; i < n; ++i) {
        const double xc = (i + 0.5) * h;
        avg[i] = (std::cos(w * (xc - 0.5 * h)) - std::cos(w * (xc + 0.5 * h))) / (w * h);
    }
    std::vector<double> fv(n);
    face_values_row_x(s, avg.data(), n, wind, fv.data());
    double err2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xf = (i + 1.0) * h;
        const double d = fv[i] - std::sin(w * xf);
        err2 += d * d;
    }
    return std::sqrt(err2 / n);
}

double fitted_order(const FaceScheme& s, int wind) {
    const int grids[4] = {25, 50, 100, 200};
    double sum = 0.0;
    for (int k = 0; k + 1 < 4; ++k)
        sum += std::log2(scheme_error(s, grids[k], wind) /
                         scheme_error(s, grids[k + 1], wind));
    return sum / 3.0;
}

} // namespace

TEST_CASE("measured convergence orders match the nominal ones") {
    CHECK(fitted_order({FaceSchemeKind::CDI2}, 1) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(fitted_order({FaceSchemeKind::CDI4}, 1) == doctest::Approx(4.0).epsilon(0.075));
    CHECK(fitted_order({FaceSchemeKind::WenoZ3}, 1) == doctest::Approx(3.0).epsilon(0.1));
    CHECK(fitted_order({FaceSchemeKind::WenoZ5}, 1) == doctest::Approx(5.0).epsilon(0.06));
    // mirrored wind reconstructs with the same accuracy
    CHECK(fitted_order({FaceSchemeKind::WenoZ5}, -1) == doctest::Approx(5.0).epsilon(0.06));
}

TEST_CASE("face derivative stencils on exact data") {
    // constants
    CHECK(face_ddx(3.3, 3.3, 3.3, 3.3, 1.0) == 0.0);
    CHECK(face_ddy(3.3, 3.3, 3.3, 3.3, 1.0) == 0.0);
    CHECK(face_d2dx2(3.3, 3.3, 3.3, 3.3, 1.0) == 0.0);
    CHECK(face_d2dy2(3.3, 3.3, 3.3, 1.0) == 0.0);
    CHECK(face_d2dxdy(3.3, 3.3, 3.3, 3.3, 1.0) == 0.0);

    // linear ramp through the face at x = 0, h = 1: cells at -1.5 .. 1.5
    CHECK(face_ddx(-1.5, -0.5, 0.5, 1.5, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

    // cubic: with cell averages the first-derivative stencil is exact
    auto cell_avg_x3 = [](double a, double h) { return a * a * a + 0.25 * a * h * h; };
    for (double h : {1.0, 0.5}) {
        for (double xf : {0.0, 0.7}) {
            const double d = face_ddx(cell_avg_x3(xf - 1.5 * h, h),
                                      cell_avg_x3(xf - 0.5 * h, h),
                                      cell_avg_x3(xf + 0.5 * h, h),
                                      cell_avg_x3(xf + 1.5 * h, h), h);
            CHECK(d == doctest::Approx(3.0 * xf * xf).epsilon(1e-12));
        }
    }
    // with point values the same stencil is only second order
    const double p2 =
        face_ddx(-3.375, -0.125, 0.125, 3.375, 1.0);  // x^3 points, face at 0
    CHECK(p2 == doctest::Approx(-0.25).epsilon(1e-13));

    // x^2: second-derivative stencil exact at the face between cells
    auto x2 = [](double a) { return a * a; };
    CHECK(face_d2dx2(x2(-1.5), x2(-0.5), x2(0.5), x2(1.5), 1.0) ==
          doctest::Approx(2.0).epsilon(1e-15));

    // xy: mixed stencil exact; cells (i, i+1)x(j-1, j+1) around face x=0
    const double h = 1.0;
    CHECK(face_d2dxdy((-0.5) * (-1.0), (-0.5) * (1.0), (0.5) * (-1.0),
                      (0.5) * (1.0), h) == doctest::Approx(1.0).epsilon(1e-15));

    // y-derivative from face values of sin: classic fourth-order central
    const double w = 0.9;
    auto f = [&](double y) { return std::sin(w * y); };
    for (double hh : {0.1, 0.05}) {
        const double d =
            face_ddy(f(-2 * hh), f(-hh), f(hh), f(2 * hh), hh);
        CHECK(d == doctest::Approx(w).epsilon(5.0 * hh * hh * hh * hh));
    }
}

TEST_CASE("first-derivative face stencil is fourth order on cell averages") {
    auto err = [](int n) {
        const double h = 1.0 / n;
        const double w = 2.0 * M_PI;
        std::vector<double> avg(n);
        for (int i = 0; i < n; ++i) {
            const double xc = (i + 0.5) * h;
            avg[i] =
                (std::cos(w * (xc - 0.5 * h)) - std::cos(w * (xc + 0.5 * h))) / (w * h);
        }
        double worst = 0.0;
        for (int i = 1; i + 2 < n; ++i) {
            const double xf = (i + 1.0) * h;
            const double d = face_ddx(avg[i - 1], avg[i], avg[i + 1], avg[i + 2], h);
            worst = std::max(worst, std::abs(d - w * std::cos(w * xf)));
        }
        return worst;
    };
    const double order = std::log2(err(32) / err(64));
    CHECK(order == doctest::Approx(4.0).epsilon(0.05));
}

// Truncation-term oracles: each published stencil expansion is checked
// against exact polynomial quadrature. Degree-4 fields make every
// neglected term either exactly zero or a clean O(h^4) remainder.

TEST_CASE("cell-average expansion is exact on degree-4 polynomials") {
    const Poly2D f = generic_poly();
    const Poly2D fxx = f.dx().dx(), fyy = f.dy().dy();
    const Poly2D fxxxx = fxx.dx().dx(), fyyyy = fyy.dy().dy();
    const Poly2D fxxyy = fxx.dy().dy();
    const double xc = 0.3, yc = 0.2;
    for (double h : {0.5, 0.25, 0.1}) {
        const double lhs = f.cell_average(xc, yc, h);
        const double lap = fxx.value(xc, yc) + fyy.value(xc, yc);
        const double bih = fxxxx.value(xc, yc) + fyyyy.value(xc, yc) +
                           2.0 * fxxyy.value(xc, yc);
        const double rhs = f.value(xc, yc) + h * h / 24.0 * lap +
                           h * h * h * h / 1920.0 *
                               (bih + (4.0 / 3.0) * fxxyy.value(xc, yc));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("face-average expansion holds through third order") {
    const Poly2D f = generic_poly();
    const Poly2D fx = f.dx(), fxx = fx.dx();
    const Poly2D fyy = f.dy().dy();
    const Poly2D fxxx = fxx.dx(), fxyy = fx.dy().dy();
    const double xc = 0.3, yc = 0.2;
    auto residual = [&](double h) {
        const double lhs = f.face_average_x(xc + 0.5 * h, yc, h);
        const double rhs = f.value(xc, yc) + 0.5 * h * fx.value(xc, yc) +
                           h * h / 12.0 * fxx.value(xc, yc) +
                           h * h / 24.0 * (fxx.value(xc, yc) + fyy.value(xc, yc)) +
                           h * h * h / 48.0 *
                               (fxxx.value(xc, yc) + fxyy.value(xc, yc));
        return lhs - rhs;
    };
    // remainder scales as h^4
    const double r1 = residual(0.1), r2 = residual(0.05);
    CHECK(std::abs(r2) < 1e-3);
    CHECK(r1 / r2 == doctest::Approx(16.0).epsilon(0.05));

    // same expansion applied to the derivative field
    auto residual_dx = [&](double h) {
        const Poly2D g = f.dx();
        const Poly2D gx = g.dx(), gxx = gx.dx(), gyy = g.dy().dy();
        const double lhs = g.face_average_x(xc + 0.5 * h, yc, h);
        const double rhs = g.value(xc, yc) + 0.5 * h * gx.value(xc, yc) +
                           h * h / 12.0 * gxx.value(xc, yc) +
                           h * h / 24.0 * (gxx.value(xc, yc) + gyy.value(xc, yc)) +
                           h * h * h / 48.0 *
                               (gxx.dx().value(xc, yc) + gx.dy().dy().value(xc, yc));
        return lhs - rhs;
    };
    const double d1 = residual_dx(0.1), d2 = residual_dx(0.05);
    if (std::abs(d2) > 1e-14)
        CHECK(d1 / d2 == doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("neighbour cell-average relation holds for the stencil offsets") {
    const Poly2D f = generic_poly();
    const Poly2D fx = f.dx(), fy = f.dy();
    const Poly2D fxx = fx.dx(), fxy = fx.dy(), fyy = fy.dy();
    const Poly2D fxxx = fxx.dx(), fxxy = fxx.dy(), fxyy = fxy.dy(), fyyy = fyy.dy();
    const double xc = 0.3, yc = 0.2;

    auto residual = [&](int m, int n, double h) {
        const double lhs = f.cell_average(xc + m * h, yc + n * h, h);
        const double rhs =
            f.value(xc, yc) + h * (m * fx.value(xc, yc) + n * fy.value(xc, yc)) +
            h * h *
                ((12.0 * m * m + 1.0) / 24.0 * fxx.value(xc, yc) +
                 m * n * fxy.value(xc, yc) +
                 (12.0 * n * n + 1.0) / 24.0 * fyy.value(xc, yc)) +
            h * h * h *
                (m * (4.0 * m * m + 1.0) / 24.0 * fxxx.value(xc, yc) +
                 n * (12.0 * m * m + 1.0) / 24.0 * fxxy.value(xc, yc) +
                 m * (12.0 * n * n + 1.0) / 24.0 * fxyy.value(xc, yc) +
                 n * (4.0 * n * n + 1.0) / 24.0 * fyyy.value(xc, yc));
        return lhs - rhs;
    };

    const int offsets[][2] = {{1, 0}, {0, 1},  {1, 1},  {-1, 1},
                              {2, 0}, {0, -2}, {2, 1},  {-2, -1}};
    for (const auto& mn : offsets) {
        const double r1 = residual(mn[0], mn[1], 0.08);
        const double r2 = residual(mn[0], mn[1], 0.04);
        if (std::abs(r2) > 1e-13)
            CHECK(r1 / r2 == doctest::Approx(16.0).epsilon(0.05));
        CHECK(std::abs(r2) < 1e-3);
    }
}

TEST_CASE("second-order face stencils reproduce their leading truncation terms") {
    const Poly2D f = generic_poly();
    const Poly2D fx = f.dx(), fy = f.dy();
    const Poly2D fxx = fx.dx(), fxxx = fxx.dx();
    const double xc = 0.3, yc = 0.2;
    const double h = 1e-2;
    const double xf = xc + 0.5 * h;

    auto cellavg = [&](int m, int n) {
        return f.cell_average(xc + m * h, yc + n * h, h);
    };

    // face value: (avg_i + avg_{i+1})/2 = face average + h^2/6 fxx + h^3/12 fxxx
    {
        const double c2 = 0.5 * (cellavg(0, 0) + cellavg(1, 0));
        const double r = c2 - f.face_average_x(xf, yc, h);
        const double lead = h * h / 6.0 * fxx.value(xc, yc);
        CHECK(r - h * h * h / 12.0 * fxxx.value(xc, yc) ==
              doctest::Approx(lead).epsilon(0.01));
    }

    // face x-derivative: (avg_{i+1} - avg_i)/h, leading term h^2/12 fxxx
    {
        const double c2 = (cellavg(1, 0) - cellavg(0, 0)) / h;
        const double r = c2 - fx.face_average_x(xf, yc, h);
        const double lead = h * h / 12.0 * fxxx.value(xc, yc);
        CHECK(r == doctest::Approx(lead).epsilon(0.01));
    }

    // face y-derivative from neighbouring-row C2 values, leading term
    // h^2/6 (laplacian of fy)
    {
        auto c2row = [&](int n) { return 0.5 * (cellavg(0, n) + cellavg(1, n)); };
        const double c2 = (c2row(1) - c2row(-1)) / (2.0 * h);
        const double r = c2 - fy.face_average_x(xf, yc, h);
        const double lead =
            h * h / 6.0 *
            (fy.dx().dx().value(xc, yc) + fy.dy().dy().value(xc, yc));
        CHECK(r == doctest::Approx(lead).epsilon(0.01));
    }
}

TEST_CASE("isotropic face corrections trade directional for rotationally symmetric errors") {
    const Poly2D f = generic_poly();
    const Poly2D fx = f.dx();
    const double xc = 0.3, yc = 0.2;
    const double h = 1e-2;
    const double xf = xc + 0.5 * h;

    auto cellavg = [&](int m, int n) {
        return f.cell_average(xc + m * h, yc + n * h, h);
    };
    auto c2face = [&](int n) { return 0.5 * (cellavg(0, n) + cellavg(1, n)); };
    auto c2dx = [&](int n) { return (cellavg(1, n) - cellavg(0, n)) / h; };

    // smoothed face value: leading error (h^2/6) laplacian(f)
    {
        const double iso = (c2face(1) + 4.0 * c2face(0) + c2face(-1)) / 6.0;
        const double r = iso - f.face_average_x(xf, yc, h);
        const double lead =
            h * h / 6.0 *
            (f.dx().dx().value(xc, yc) + f.dy().dy().value(xc, yc));
        CHECK(r == doctest::Approx(lead).epsilon(0.01));
    }

    // smoothed face derivative: leading error (h^2/12) laplacian(fx)
    {
        const double iso = (c2dx(1) + 10.0 * c2dx(0) + c2dx(-1)) / 12.0;
        const double r = iso - fx.face_average_x(xf, yc, h);
        const double lead =
            h * h / 12.0 *
            (fx.dx().dx().value(xc, yc) + fx.dy().dy().value(xc, yc));
        CHECK(r == doctest::Approx(lead).epsilon(0.01));
    }
}

TEST_CASE("row kernels match the scalar contract function") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    const int n = 23;
    std::vector<double> cells(n);
    for (double& v : cells) v = d(rng);

    for (const FaceScheme& s : kSchemes)
        for (int wind : {-1, 0, 1}) {
            std::vector<double> out(n);
            face_values_row_x(s, cells.data(), n, wind, out.data());
            for (int i = 0; i < n; ++i) {
                double win_pos[5], win_neg[5];
                for (int k = 0; k < 5; ++k) {
                    win_pos[k] = cells[periodic_index(i - 2 + k, n)];
                    win_neg[k] = cells[periodic_index(i - 1 + k, n)];
                }
                double expect;
                if (wind > 0)
                    expect = face_value(s, win_pos, 1);
                else if (wind < 0)
                    expect = face_value(s, win_neg, -1);
                else if (s.kind == FaceSchemeKind::CDI2 || s.kind == FaceSchemeKind::CDI4)
                    expect = face_value(s, win_pos, 1);
                else
                    expect = 0.5 * (face_value(s, win_pos, 1) +
                                    face_value(s, win_neg, -1));
                CHECK(out[i] == doctest::Approx(expect).epsilon(1e-14));
            }
        }
}

TEST_CASE("column kernel agrees with the row kernel on transposed data") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    const int n = 16;
    std::vector<double> data(n);
    for (double& v : data) v = d(rng);

    // six wrapped "rows" that all alias the same 1-D data give the same
    // reconstruction as the x kernel applied along the line
    for (const FaceScheme& s : kSchemes)
        for (int wind : {-1, 0, 1}) {
            std::vector<double> expect(n), got(n);
            face_values_row_x(s, data.data(), n, wind, expect.data());
            for (int j = 0; j < n; ++j) {
                double rows_data[6][1];
                const double* rows[6];
                for (int k = 0; k < 6; ++k) {
                    rows_data[k][0] = data[periodic_index(j - 2 + k, n)];
                    rows[k] = rows_data[k];
                }
                double out = 0.0;
                face_values_row_y(s, rows, 1, wind, &out);
                got[j] = out;
            }
            for (int j = 0; j < n; ++j)
                CHECK(got[j] == doctest::Approx(expect[j]).epsilon(1e-14));
        }
}
