#include "dugks/reconstruction.hpp"

#include "dugks/fields.hpp"

namespace dugks {

using namespace stencil;

double face_value(const FaceScheme& s, const double cells[5], int wind) {
    switch (s.kind) {
        case FaceSchemeKind::CDI2:
            return cdi2(cells[2], cells[3]);
        case FaceSchemeKind::CDI4:
            return cdi4(cells[1], cells[2], cells[3], cells[4]);
        case FaceSchemeKind::WenoZ3:
            if (wind >= 0)
                return weno_z3(cells[1], cells[2], cells[3], s.weno_eps, s.weno_p);
            return weno_z3(cells[4], cells[3], cells[2], s.weno_eps, s.weno_p);
        case FaceSchemeKind::WenoZ5:
            if (wind >= 0)
                return weno_z5(cells[0], cells[1], cells[2], cells[3], cells[4],
                               s.weno_eps, s.weno_p);
            return weno_z5(cells[4], cells[3], cells[2], cells[1], cells[0],
                           s.weno_eps, s.weno_p);
    }
    return 0.0;
}

Vec2 face_first_derivatives(const FaceStencilX& s, double h) {
    return {face_ddx(s.c[0], s.c[1], s.c[2], s.c[3], h),
            face_ddy(s.fv[0], s.fv[1], s.fv[3], s.fv[4], h)};
}

std::array<double, 3> face_second_derivatives(const FaceStencilX& s, double h) {
    return {face_d2dx2(s.c[0], s.c[1], s.c[2], s.c[3], h),
            face_d2dy2(s.fv[1], s.fv[2], s.fv[3], h),
            face_d2dxdy(s.cjm[0], s.cjp[0], s.cjm[1], s.cjp[1], h)};
}

namespace {

// Face value at (i+1/2) from a window pointer v aligned so that v[0] is
// cell i. Wind w is a compile-time constant so the hot loops carry no
// per-face branches; w == 0 averages the two one-sided reconstructions.
template <FaceSchemeKind K, int W>
inline double face_at(const double* v, double eps, int p) {
    if constexpr (K == FaceSchemeKind::CDI2) return cdi2(v[0], v[1]);
    if constexpr (K == FaceSchemeKind::CDI4) return cdi4(v[-1], v[0], v[1], v[2]);
    if constexpr (K == FaceSchemeKind::WenoZ3) {
        if constexpr (W > 0) return weno_z3(v[-1], v[0], v[1], eps, p);
        if constexpr (W < 0) return weno_z3(v[2], v[1], v[0], eps, p);
        return 0.5 * (weno_z3(v[-1], v[0], v[1], eps, p) +
                      weno_z3(v[2], v[1], v[0], eps, p));
    }
    if constexpr (K == FaceSchemeKind::WenoZ5) {
        if constexpr (W > 0) return weno_z5(v[-2], v[-1], v[0], v[1], v[2], eps, p);
        if constexpr (W < 0) return weno_z5(v[3], v[2], v[1], v[0], v[-1], eps, p);
        return 0.5 * (weno_z5(v[-2], v[-1], v[0], v[1], v[2], eps, p) +
                      weno_z5(v[3], v[2], v[1], v[0], v[-1], eps, p));
    }
}

// Widest window any scheme touches relative to cell i of face (i+1/2).
constexpr int kLo = -2;
constexpr int kHi = 3;

template <FaceSchemeKind K, int W>
void row_x(const double* c, int nx, double eps, int p, double* out) {
    double buf[kHi - kLo + 1];
    auto edge = [&](int i) {
        for (int k = kLo; k <= kHi; ++k) buf[k - kLo] = c[periodic_index(i + k, nx)];
        out[i] = face_at<K, W>(buf - kLo, eps, p);
    };
    const int begin = -kLo;
    const int end = nx - 1 - kHi;
    for (int i = 0; i < begin && i < nx; ++i) edge(i);
    for (int i = begin; i <= end; ++i) out[i] = face_at<K, W>(c + i, eps, p);
    for (int i = end < begin ? begin : end + 1; i < nx; ++i) edge(i);
}

template <FaceSchemeKind K>
void row_x_wind(const double* c, int nx, int wind, double eps, int p, double* out) {
    if (wind > 0)
        row_x<K, 1>(c, nx, eps, p, out);
    else if (wind < 0)
        row_x<K, -1>(c, nx, eps, p, out);
    else
        row_x<K, 0>(c, nx, eps, p, out);
}

template <FaceSchemeKind K, int W>
void row_y(const double* const r[6], int nx, double eps, int p, double* out) {
    // r = rows j-2 .. j+3; the face sits between r[2] and r[3].
    for (int i = 0; i < nx; ++i) {
        const double v[6] = {r[0][i], r[1][i], r[2][i], r[3][i], r[4][i], r[5][i]};
        out[i] = face_at<K, W>(v + 2, eps, p);
    }
}

template <FaceSchemeKind K>
void row_y_wind(const double* const r[6], int nx, int wind, double eps, int p,
                double* out) {
    if (wind > 0)
        row_y<K, 1>(r, nx, eps, p, out);
    else if (wind < 0)
        row_y<K, -1>(r, nx, eps, p, out);
    else
        row_y<K, 0>(r, nx, eps, p, out);
}

} // namespace

void face_values_row_x(const FaceScheme& s, const double* c, int nx, int wind,
                       double* out) {
    switch (s.kind) {
        case FaceSchemeKind::CDI2:
            row_x_wind<FaceSchemeKind::CDI2>(c, nx, wind, s.weno_eps, s.weno_p, out);
            break;
        case FaceSchemeKind::CDI4:
            row_x_wind<FaceSchemeKind::CDI4>(c, nx, wind, s.weno_eps, s.weno_p, out);
            break;
        case FaceSchemeKind::WenoZ3:
            row_x_wind<FaceSchemeKind::WenoZ3>(c, nx, wind, s.weno_eps, s.weno_p, out);
            break;
        case FaceSchemeKind::WenoZ5:
            row_x_wind<FaceSchemeKind::WenoZ5>(c, nx, wind, s.weno_eps, s.weno_p, out);
            break;
    }
}

void face_values_row_y(const FaceScheme& s, const double* const r[6], int nx,
                       int wind, double* out) {
    switch (s.kind) {
        case FaceSchemeKind::CDI2:
            row_y_wind<FaceSchemeKind::CDI2>(r, nx, wind, s.weno_eps, s.weno_p, out);
            break;
        case FaceSchemeKind::CDI4:
            row_y_wind<FaceSchemeKind::CDI4>(r, nx, wind, s.weno_eps, s.weno_p, out);
            break;
        case FaceSchemeKind::WenoZ3:
            row_y_wind<FaceSchemeKind::WenoZ3>(r, nx, wind, s.weno_eps, s.weno_p, out);
            break;
        case FaceSchemeKind::WenoZ5:
            row_y_wind<FaceSchemeKind::WenoZ5>(r, nx, wind, s.weno_eps, s.weno_p, out);
            break;
    }
}

} // namespace dugks
