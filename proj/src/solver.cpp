#include "dugks/solver.hpp"

#include <cmath>
#include <limits>

namespace dugks {

namespace {

constexpr double kPi = 3.14159265358979323846;
using L = LatticeD2Q9;

inline const double* wrap_row(const double* plane, int j, int nx, int ny) {
    return plane + std::size_t(periodic_index(j, ny)) * nx;
}

} // namespace

FlowField FlowField::uniform(Vec2 u) {
    FlowField f;
    f.kind = Kind::Uniform;
    f.u0 = u;
    return f;
}

FlowField FlowField::rotation(double u0, double l0) {
    FlowField f;
    f.kind = Kind::Rotation;
    f.mag = u0;
    f.l0 = l0;
    return f;
}

FlowField FlowField::vortex(double u0, double l0, double period) {
    FlowField f;
    f.kind = Kind::Vortex;
    f.mag = u0;
    f.l0 = l0;
    f.period = period;
    return f;
}

Vec2 FlowField::spatial(double x, double y) const {
    switch (kind) {
        case Kind::Uniform:
            return u0;
        case Kind::Rotation:
            return {-mag * kPi * (y / l0 - 0.5), mag * kPi * (x / l0 - 0.5)};
        case Kind::Vortex: {
            const double sx = std::sin(kPi * x / l0);
            const double sy = std::sin(kPi * y / l0);
            return {mag * sx * sx * std::sin(2.0 * kPi * y / l0),
                    -mag * sy * sy * std::sin(2.0 * kPi * x / l0)};
        }
    }
    return {};
}

double FlowField::time_factor(double t) const {
    return kind == Kind::Vortex ? std::cos(kPi * t / period) : 1.0;
}

double derived_timestep(const SolverConfig& cfg) {
    if (!(cfg.chi > 0.0) || cfg.chi > 1.0)
        throw std::invalid_argument("time step factor chi must lie in (0, 1], got " +
                                    std::to_string(cfg.chi));
    return cfg.chi * cfg.grid.h;
}

Solver::Solver(const SolverConfig& cfg, const FlowField& flow)
    : cfg_(cfg),
      flow_(flow),
      dt_(derived_timestep(cfg)),
      s_(0.5 * dt_),
      f_hat_plus_(cfg.grid),
      face_val_(cfg.grid),
      flux_x_(cfg.grid),
      flux_y_(cfg.grid),
      normal_(cfg.grid),
      dt_phiu_(cfg.grid),
      phi_face_(cfg.grid),
      u_cell_(cfg.grid),
      u_xface_(cfg.grid),
      u_yface_(cfg.grid) {
    state_.f_tilde = DistField(cfg.grid);
    state_.phi = ScalarField(cfg.grid);
    state_.phiu_prev = VectorField(cfg.grid);
    const Grid2D& g = cfg_.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            u_cell_.set(i, j, flow_.spatial(g.x(i), g.y(j)));
            u_xface_.set(i, j, flow_.spatial(g.x(i) + 0.5 * g.h, g.y(j)));
            u_yface_.set(i, j, flow_.spatial(g.x(i), g.y(j) + 0.5 * g.h));
        }
}

void Solver::set_initial_condition(const ScalarField& phi0) {
    const Grid2D& g = cfg_.grid;
    if (phi0.grid != g)
        throw std::invalid_argument("initial condition grid does not match solver grid");
    if (!all_finite(phi0))
        throw std::invalid_argument("initial condition contains non-finite values");

    state_.phi = phi0;
    state_.time = 0.0;
    state_.step_count = 0;

    const double fac = flow_.time_factor(0.0);
    const int nx = g.nx, ny = g.ny;
    for (int j = 0; j < ny; ++j) {
        const std::size_t off = std::size_t(j) * nx;
        const double* p = state_.phi.data() + off;
        const double* ux = u_cell_.x.data() + off;
        const double* uy = u_cell_.y.data() + off;
        double* px = state_.phiu_prev.x.data() + off;
        double* py = state_.phiu_prev.y.data() + off;
        for (int i = 0; i < nx; ++i) {
            px[i] = p[i] * (fac * ux[i]);
            py[i] = p[i] * (fac * uy[i]);
        }
    }

    // With phiu_prev freshly set the lagged time derivative comes out as
    // an exact zero, which is the intended start-up value.
    refresh_cell_geometry(0.0);

    const double half_dt = 0.5 * dt_;
    const double inv_w = 2.0 / cfg_.width;
    const bool va = cfg_.variant == KineticVariant::A;
    for (int a = 0; a < L::q; ++a) {
        const double wa = L::w[a];
        const double exa = L::c * L::ex[a], eya = L::c * L::ey[a];
#pragma omp parallel for schedule(static)
        for (int j = 0; j < ny; ++j) {
            const std::size_t off = std::size_t(j) * nx;
            double* ft = state_.f_tilde.plane(a) + off;
            const double* p = state_.phi.data() + off;
            const double* nxr = normal_.x.data() + off;
            const double* nyr = normal_.y.data() + off;
            const double* ux = u_cell_.x.data() + off;
            const double* uy = u_cell_.y.data() + off;
            const double* dtx = dt_phiu_.x.data() + off;
            const double* dty = dt_phiu_.y.data() + off;
            for (int i = 0; i < nx; ++i) {
                const double up = fac * ux[i], vp = fac * uy[i];
                const double xu = exa * up + eya * vp;
                const double feq =
                    va ? wa * p[i] *
                             (1.0 + 3.0 * xu + 4.5 * xu * xu - 1.5 * (up * up + vp * vp))
                       : wa * p[i] * (1.0 + 3.0 * xu);
                const double th = inv_w * (1.0 - p[i] * p[i]);
                double force = wa * th * (exa * nxr[i] + eya * nyr[i]);
                if (!va) force += wa * 3.0 * (exa * dtx[i] + eya * dty[i]);
                ft[i] = feq - half_dt * force;
            }
        }
    }

    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (double v : state_.phi.values) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    state_.phi_min = mn;
    state_.phi_max = mx;
}

void Solver::refresh_cell_geometry(double t) {
    const Grid2D& g = cfg_.grid;
    const int nx = g.nx, ny = g.ny;
    const double eps = cfg_.normal_eps;
    const bool iso = cfg_.gradient_scheme == GradientScheme::Isotropic;
    const double ca = 1.0 / (3.0 * g.h);
    const double cd = 1.0 / (12.0 * g.h);
    const double cgrad = 1.0 / (2.0 * g.h);
    const double* p = state_.phi.data();

#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const double* rc = p + std::size_t(j) * nx;
        const double* rn = wrap_row(p, j + 1, nx, ny);
        const double* rs = wrap_row(p, j - 1, nx, ny);
        double* nxr = normal_.x.data() + std::size_t(j) * nx;
        double* nyr = normal_.y.data() + std::size_t(j) * nx;
        auto cell = [&](int i, int ie, int iw) {
            double gx, gy;
            if (iso) {
                gx = ca * (rc[ie] - rc[iw]) + cd * (rn[ie] - rn[iw] + rs[ie] - rs[iw]);
                gy = ca * (rn[i] - rs[i]) + cd * (rn[ie] - rs[ie] + rn[iw] - rs[iw]);
            } else {
                gx = cgrad * (rc[ie] - rc[iw]);
                gy = cgrad * (rn[i] - rs[i]);
            }
            const double mag = std::sqrt(gx * gx + gy * gy) + eps;
            nxr[i] = gx / mag;
            nyr[i] = gy / mag;
        };
        cell(0, 1, nx - 1);
        for (int i = 1; i < nx - 1; ++i) cell(i, i + 1, i - 1);
        cell(nx - 1, 0, nx - 2);
    }

    if (cfg_.variant == KineticVariant::B) {
        const double fac = flow_.time_factor(t);
        const double invdt = 1.0 / dt_;
        const bool lag = cfg_.lag_dt_phiu;
#pragma omp parallel for schedule(static)
        for (int j = 0; j < ny; ++j) {
            const std::size_t off = std::size_t(j) * nx;
            const double* pc = p + off;
            const double* ux = u_cell_.x.data() + off;
            const double* uy = u_cell_.y.data() + off;
            double* px = state_.phiu_prev.x.data() + off;
            double* py = state_.phiu_prev.y.data() + off;
            double* dtx = dt_phiu_.x.data() + off;
            double* dty = dt_phiu_.y.data() + off;
            for (int i = 0; i < nx; ++i) {
                const double cx = pc[i] * (fac * ux[i]);
                const double cy = pc[i] * (fac * uy[i]);
                dtx[i] = lag ? (cx - px[i]) * invdt : 0.0;
                dty[i] = lag ? (cy - py[i]) * invdt : 0.0;
                px[i] = cx;
                py[i] = cy;
            }
        }
    }
}

void Solver::cell_transforms(double t) {
    const Grid2D& g = cfg_.grid;
    const int nx = g.nx, ny = g.ny;
    const double tau = cfg_.tau_f();
    const double den = 2.0 * tau + dt_;
    const double beta_h = 3.0 * s_ / den, gamma_h = 3.0 * tau * s_ / den;
    const double beta_t = 2.0 * dt_ / den, gamma_t = 2.0 * tau * dt_ / den;
    const double fac = flow_.time_factor(t);
    const double inv_w = 2.0 / cfg_.width;
    const bool va = cfg_.variant == KineticVariant::A;

    for (int a = 0; a < L::q; ++a) {
        const double wa = L::w[a];
        const double exa = L::c * L::ex[a], eya = L::c * L::ey[a];
#pragma omp parallel for schedule(static)
        for (int j = 0; j < ny; ++j) {
            const std::size_t off = std::size_t(j) * nx;
            double* ft = state_.f_tilde.plane(a) + off;
            double* fh = f_hat_plus_.plane(a) + off;
            const double* p = state_.phi.data() + off;
            const double* nxr = normal_.x.data() + off;
            const double* nyr = normal_.y.data() + off;
            const double* ux = u_cell_.x.data() + off;
            const double* uy = u_cell_.y.data() + off;
            const double* dtx = dt_phiu_.x.data() + off;
            const double* dty = dt_phiu_.y.data() + off;
            if (va) {
                for (int i = 0; i < nx; ++i) {
                    const double up = fac * ux[i], vp = fac * uy[i];
                    const double xu = exa * up + eya * vp;
                    const double feq =
                        wa * p[i] *
                        (1.0 + 3.0 * xu + 4.5 * xu * xu - 1.5 * (up * up + vp * vp));
                    const double th = inv_w * (1.0 - p[i] * p[i]);
                    const double force = wa * th * (exa * nxr[i] + eya * nyr[i]);
                    const double f0 = ft[i];
                    fh[i] = f0 + beta_h * (feq - f0) + gamma_h * force;
                    ft[i] = f0 + beta_t * (feq - f0) + gamma_t * force;
                }
            } else {
                for (int i = 0; i < nx; ++i) {
                    const double up = fac * ux[i], vp = fac * uy[i];
                    const double xu = exa * up + eya * vp;
                    const double feq = wa * p[i] * (1.0 + 3.0 * xu);
                    const double th = inv_w * (1.0 - p[i] * p[i]);
                    const double force =
                        wa * (th * (exa * nxr[i] + eya * nyr[i]) +
                              3.0 * (exa * dtx[i] + eya * dty[i]));
                    const double f0 = ft[i];
                    fh[i] = f0 + beta_h * (feq - f0) + gamma_h * force;
                    ft[i] = f0 + beta_t * (feq - f0) + gamma_t * force;
                }
            }
        }
    }
}

namespace {

// Characteristic shift to the foot point x_b - xi s for the x-face sweep.
// HasX/HasY say which velocity components are non-zero for this
// population; Par adds the parabolic (second derivative) terms.
struct ReconCtx {
    const double* fhp;       // cell plane of f_hat_plus
    const double* fv;        // face-value plane (same direction)
    double* rec;             // output plane
    double* phi_face;        // accumulated zeroth moment at faces
    int nx, ny;
    double h, s;
    double exa, eya;
};

template <bool HasX, bool HasY, bool Par, bool First>
void recon_x_pass(const ReconCtx& c) {
    const int nx = c.nx, ny = c.ny;
    const double i12h = 1.0 / (12.0 * c.h);
    const double i2h2 = 1.0 / (2.0 * c.h * c.h);
    const double ih2 = 1.0 / (c.h * c.h);
    const double sx = c.s * c.exa, sy = c.s * c.eya;
    const double cxx = 0.5 * c.s * c.s * c.exa * c.exa;
    const double cyy = 0.5 * c.s * c.s * c.eya * c.eya;
    const double cxy = c.s * c.s * c.exa * c.eya;

#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const std::size_t off = std::size_t(j) * nx;
        const double* fvc = c.fv + off;
        const double* fvm1 = HasY ? wrap_row(c.fv, j - 1, nx, ny) : nullptr;
        const double* fvp1 = HasY ? wrap_row(c.fv, j + 1, nx, ny) : nullptr;
        const double* fvm2 = HasY ? wrap_row(c.fv, j - 2, nx, ny) : nullptr;
        const double* fvp2 = HasY ? wrap_row(c.fv, j + 2, nx, ny) : nullptr;
        const double* cc = c.fhp + off;
        const double* cjm = (Par && HasX && HasY) ? wrap_row(c.fhp, j - 1, nx, ny) : nullptr;
        const double* cjp = (Par && HasX && HasY) ? wrap_row(c.fhp, j + 1, nx, ny) : nullptr;
        double* rec = c.rec + off;
        double* pf = c.phi_face + off;

        auto face = [&](int i, int iw, int ie, int ip2) {
            double r = fvc[i];
            if constexpr (HasX) {
                const double ddx = (cc[iw] - 15.0 * cc[i] + 15.0 * cc[ie] - cc[ip2]) * i12h;
                r -= sx * ddx;
            }
            if constexpr (HasY) {
                const double ddy = (8.0 * (fvp1[i] - fvm1[i]) - fvp2[i] + fvm2[i]) * i12h;
                r -= sy * ddy;
            }
            if constexpr (Par && HasX) {
                const double dxx = (cc[ip2] - cc[ie] - cc[i] + cc[iw]) * i2h2;
                r += cxx * dxx;
            }
            if constexpr (Par && HasY) {
                const double dyy = (fvp1[i] - 2.0 * fvc[i] + fvm1[i]) * ih2;
                r += cyy * dyy;
            }
            if constexpr (Par && HasX && HasY) {
                const double dxy = (cjp[ie] - cjm[ie] - cjp[i] + cjm[i]) * i2h2;
                r += cxy * dxy;
            }
            rec[i] = r;
            if constexpr (First)
                pf[i] = r;
            else
                pf[i] += r;
        };

        if constexpr (HasX) {
            face(0, nx - 1, 1, 2 % nx);
            for (int i = 1; i <= nx - 3; ++i) face(i, i - 1, i + 1, i + 2);
            face(nx - 2, nx - 3, nx - 1, 0);
            face(nx - 1, nx - 2, 0, 1);
        } else {
            for (int i = 0; i < nx; ++i) face(i, 0, 0, 0);
        }
    }
}

// Same shift for the y-face sweep; the roles of rows and columns swap.
template <bool HasX, bool HasY, bool Par, bool First>
void recon_y_pass(const ReconCtx& c) {
    const int nx = c.nx, ny = c.ny;
    const double i12h = 1.0 / (12.0 * c.h);
    const double i2h2 = 1.0 / (2.0 * c.h * c.h);
    const double ih2 = 1.0 / (c.h * c.h);
    const double sx = c.s * c.exa, sy = c.s * c.eya;
    const double cxx = 0.5 * c.s * c.s * c.exa * c.exa;
    const double cyy = 0.5 * c.s * c.s * c.eya * c.eya;
    const double cxy = c.s * c.s * c.exa * c.eya;

#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const std::size_t off = std::size_t(j) * nx;
        const double* fvc = c.fv + off;  // face row j holds faces (i, j+1/2)
        const double* cj = c.fhp + off;
        const double* cjm1 = HasY ? wrap_row(c.fhp, j - 1, nx, ny) : nullptr;
        const double* cjp1 = wrap_row(c.fhp, j + 1, nx, ny);
        const double* cjp2 = HasY ? wrap_row(c.fhp, j + 2, nx, ny) : nullptr;
        double* rec = c.rec + off;
        double* pf = c.phi_face + off;

        auto face = [&](int i, int im2, int iw, int ie, int ip2) {
            double r = fvc[i];
            if constexpr (HasY) {
                const double ddy = (cjm1[i] - 15.0 * cj[i] + 15.0 * cjp1[i] - cjp2[i]) * i12h;
                r -= sy * ddy;
            }
            if constexpr (HasX) {
                const double ddx = (8.0 * (fvc[ie] - fvc[iw]) - fvc[ip2] + fvc[im2]) * i12h;
                r -= sx * ddx;
            }
            if constexpr (Par && HasY) {
                const double dyy = (cjp2[i] - cjp1[i] - cj[i] + cjm1[i]) * i2h2;
                r += cyy * dyy;
            }
            if constexpr (Par && HasX) {
                const double dxx = (fvc[ie] - 2.0 * fvc[i] + fvc[iw]) * ih2;
                r += cxx * dxx;
            }
            if constexpr (Par && HasX && HasY) {
                const double dxy = (cjp1[ie] - cjp1[iw] - cj[ie] + cj[iw]) * i2h2;
                r += cxy * dxy;
            }
            rec[i] = r;
            if constexpr (First)
                pf[i] = r;
            else
                pf[i] += r;
        };

        if constexpr (HasX) {
            for (int i = 0; i < 2; ++i)
                face(i, periodic_index(i - 2, nx), periodic_index(i - 1, nx), i + 1, i + 2);
            for (int i = 2; i <= nx - 3; ++i) face(i, i - 2, i - 1, i + 1, i + 2);
            for (int i = nx - 2; i < nx; ++i)
                face(i, i - 2, i - 1, periodic_index(i + 1, nx), periodic_index(i + 2, nx));
        } else {
            for (int i = 0; i < nx; ++i) face(i, 0, 0, 0, 0);
        }
    }
}

struct FluxCtx {
    double* rec;  // in: reconstructed f_hat at faces, out: xi_n * f
    const double* phi_face;
    const double* n_x;
    const double* n_y;
    const double* uf_x;  // spatial face velocity
    const double* uf_y;
    const double* dtx;   // cell planes of lagged d/dt(phi u)
    const double* dty;
    int nx, ny;
    double fac;       // velocity time factor at the half step
    double wa, exa, eya;
    double beta, gamma;  // original-distribution recovery coefficients
    double inv_w;
};

// Converts the reconstructed face distribution into the transport flux
// xi_n f^{n+1/2}: assemble the face moments, rebuild feq and the force,
// then undo the auxiliary transform. XFace picks the neighbour pairing
// (i, i+1) across x-faces versus (j, j+1) across y-faces.
template <KineticVariant V, bool XFace>
void flux_pass(const FluxCtx& c) {
    const int nx = c.nx, ny = c.ny;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const std::size_t off = std::size_t(j) * nx;
        double* rec = c.rec + off;
        const double* pf = c.phi_face + off;
        const double* nx0 = c.n_x + off;
        const double* ny0 = c.n_y + off;
        const double* nx1 = XFace ? nx0 : wrap_row(c.n_x, j + 1, nx, ny);
        const double* ny1 = XFace ? ny0 : wrap_row(c.n_y, j + 1, nx, ny);
        const double* ux = c.uf_x + off;
        const double* uy = c.uf_y + off;
        const double* dtx0 = nullptr;
        const double* dty0 = nullptr;
        const double* dtx1 = nullptr;
        const double* dty1 = nullptr;
        if constexpr (V == KineticVariant::B) {
            dtx0 = c.dtx + off;
            dty0 = c.dty + off;
            dtx1 = XFace ? dtx0 : wrap_row(c.dtx, j + 1, nx, ny);
            dty1 = XFace ? dty0 : wrap_row(c.dty, j + 1, nx, ny);
        }
        const double xin = XFace ? c.exa : c.eya;

        auto face = [&](int i, int i1) {
            const double phif = pf[i];
            const double up = c.fac * ux[i], vp = c.fac * uy[i];
            const double xu = c.exa * up + c.eya * vp;
            double feq;
            if constexpr (V == KineticVariant::A)
                feq = c.wa * phif *
                      (1.0 + 3.0 * xu + 4.5 * xu * xu - 1.5 * (up * up + vp * vp));
            else
                feq = c.wa * phif * (1.0 + 3.0 * xu);
            const double th = c.inv_w * (1.0 - phif * phif);
            const double nfx = 0.5 * (nx0[i] + nx1[XFace ? i1 : i]);
            const double nfy = 0.5 * (ny0[i] + ny1[XFace ? i1 : i]);
            double force = c.wa * th * (c.exa * nfx + c.eya * nfy);
            if constexpr (V == KineticVariant::B) {
                const double dfx = 0.5 * (dtx0[i] + dtx1[XFace ? i1 : i]);
                const double dfy = 0.5 * (dty0[i] + dty1[XFace ? i1 : i]);
                force += c.wa * 3.0 * (c.exa * dfx + c.eya * dfy);
            }
            const double r = rec[i];
            const double f = r + c.beta * (feq - r) + c.gamma * force;
            rec[i] = xin * f;
        };

        if constexpr (XFace) {
            for (int i = 0; i < nx - 1; ++i) face(i, i + 1);
            face(nx - 1, 0);
        } else {
            for (int i = 0; i < nx; ++i) face(i, i);
        }
    }
}

struct UpdateCtx {
    double* ft;
    const double* fx;
    const double* fy;
    int nx, ny;
    double coef;  // dt / h
};

template <bool HasX, bool HasY>
void update_pass(const UpdateCtx& c) {
    const int nx = c.nx, ny = c.ny;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const std::size_t off = std::size_t(j) * nx;
        double* ft = c.ft + off;
        const double* fx = HasX ? c.fx + off : nullptr;
        const double* fy = HasY ? c.fy + off : nullptr;
        const double* fys = HasY ? wrap_row(c.fy, j - 1, nx, ny) : nullptr;
        {
            double div = 0.0;
            if constexpr (HasX) div += fx[0] - fx[nx - 1];
            if constexpr (HasY) div += fy[0] - fys[0];
            ft[0] -= c.coef * div;
        }
        for (int i = 1; i < nx; ++i) {
            double div = 0.0;
            if constexpr (HasX) div += fx[i] - fx[i - 1];
            if constexpr (HasY) div += fy[i] - fys[i];
            ft[i] -= c.coef * div;
        }
    }
}

template <bool HasX, bool HasY, bool First>
void recon_dispatch(bool x_dir, bool par, const ReconCtx& c) {
    if (x_dir) {
        if (par)
            recon_x_pass<HasX, HasY, true, First>(c);
        else
            recon_x_pass<HasX, HasY, false, First>(c);
    } else {
        if (par)
            recon_y_pass<HasX, HasY, true, First>(c);
        else
            recon_y_pass<HasX, HasY, false, First>(c);
    }
}

} // namespace

void Solver::direction_x(double t_half) {
    const Grid2D& g = cfg_.grid;
    const int nx = g.nx, ny = g.ny;

    for (int a = 0; a < L::q; ++a) {
        const int wind = (L::ex[a] > 0) - (L::ex[a] < 0);
        const double* fhp = f_hat_plus_.plane(a);
        double* fv = face_val_.plane(a);
#pragma omp parallel for schedule(static)
        for (int j = 0; j < ny; ++j)
            face_values_row_x(cfg_.face_scheme, fhp + std::size_t(j) * nx, nx, wind,
                              fv + std::size_t(j) * nx);
    }

    const bool par = cfg_.flux_mode == FluxMode::Parabolic;
    for (int a = 0; a < L::q; ++a) {
        ReconCtx c{f_hat_plus_.plane(a), face_val_.plane(a), flux_x_.plane(a),
                   phi_face_.data(),     nx,                 ny,
                   g.h,                  s_,                 double(L::c * L::ex[a]),
                   double(L::c * L::ey[a])};
        const bool hx = L::ex[a] != 0, hy = L::ey[a] != 0;
        if (a == 0)
            recon_dispatch<false, false, true>(true, par, c);
        else if (hx && hy)
            recon_dispatch<true, true, false>(true, par, c);
        else if (hx)
            recon_dispatch<true, false, false>(true, par, c);
        else
            recon_dispatch<false, true, false>(true, par, c);
    }

    const double tau = cfg_.tau_f();
    const double den = 2.0 * tau + s_;
    const double fac = flow_.time_factor(t_half);
    for (int a = 0; a < L::q; ++a) {
        if (L::ex[a] == 0) continue;
        FluxCtx c{flux_x_.plane(a),
                  phi_face_.data(),
                  normal_.x.data(),
                  normal_.y.data(),
                  u_xface_.x.data(),
                  u_xface_.y.data(),
                  dt_phiu_.x.data(),
                  dt_phiu_.y.data(),
                  nx,
                  ny,
                  fac,
                  L::w[a],
                  double(L::c * L::ex[a]),
                  double(L::c * L::ey[a]),
                  s_ / den,
                  tau * s_ / den,
                  2.0 / cfg_.width};
        if (cfg_.variant == KineticVariant::A)
            flux_pass<KineticVariant::A, true>(c);
        else
            flux_pass<KineticVariant::B, true>(c);
    }
}

void Solver::direction_y(double t_half) {
    const Grid2D& g = cfg_.grid;
    const int nx = g.nx, ny = g.ny;

    for (int a = 0; a < L::q; ++a) {
        const int wind = (L::ey[a] > 0) - (L::ey[a] < 0);
        const double* fhp = f_hat_plus_.plane(a);
        double* fv = face_val_.plane(a);
#pragma omp parallel for schedule(static)
        for (int j = 0; j < ny; ++j) {
            const double* rows[6];
            for (int k = 0; k < 6; ++k) rows[k] = wrap_row(fhp, j - 2 + k, nx, ny);
            face_values_row_y(cfg_.face_scheme, rows, nx, wind,
                              fv + std::size_t(j) * nx);
        }
    }

    const bool par = cfg_.flux_mode == FluxMode::Parabolic;
    for (int a = 0; a < L::q; ++a) {
        ReconCtx c{f_hat_plus_.plane(a), face_val_.plane(a), flux_y_.plane(a),
                   phi_face_.data(),     nx,                 ny,
                   g.h,                  s_,                 double(L::c * L::ex[a]),
                   double(L::c * L::ey[a])};
        const bool hx = L::ex[a] != 0, hy = L::ey[a] != 0;
        if (a == 0)
            recon_dispatch<false, false, true>(false, par, c);
        else if (hx && hy)
            recon_dispatch<true, true, false>(false, par, c);
        else if (hx)
            recon_dispatch<true, false, false>(false, par, c);
        else
            recon_dispatch<false, true, false>(false, par, c);
    }

    const double tau = cfg_.tau_f();
    const double den = 2.0 * tau + s_;
    const double fac = flow_.time_factor(t_half);
    for (int a = 0; a < L::q; ++a) {
        if (L::ey[a] == 0) continue;
        FluxCtx c{flux_y_.plane(a),
                  phi_face_.data(),
                  normal_.x.data(),
                  normal_.y.data(),
                  u_yface_.x.data(),
                  u_yface_.y.data(),
                  dt_phiu_.x.data(),
                  dt_phiu_.y.data(),
                  nx,
                  ny,
                  fac,
                  L::w[a],
                  double(L::c * L::ex[a]),
                  double(L::c * L::ey[a]),
                  s_ / den,
                  tau * s_ / den,
                  2.0 / cfg_.width};
        if (cfg_.variant == KineticVariant::A)
            flux_pass<KineticVariant::A, false>(c);
        else
            flux_pass<KineticVariant::B, false>(c);
    }
}

void Solver::apply_fluxes_and_moments() {
    const Grid2D& g = cfg_.grid;
    const int nx = g.nx, ny = g.ny;
    const double coef = dt_ / g.h;

    for (int a = 1; a < L::q; ++a) {
        UpdateCtx c{state_.f_tilde.plane(a), flux_x_.plane(a), flux_y_.plane(a),
                    nx, ny, coef};
        const bool hx = L::ex[a] != 0, hy = L::ey[a] != 0;
        if (hx && hy)
            update_pass<true, true>(c);
        else if (hx)
            update_pass<true, false>(c);
        else
            update_pass<false, true>(c);
    }

    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    int ok = 1;
    const DistField& f = state_.f_tilde;
    double* phi = state_.phi.data();
#pragma omp parallel for schedule(static) reduction(min : mn) reduction(max : mx) \
    reduction(& : ok)
    for (int j = 0; j < ny; ++j) {
        const std::size_t off = std::size_t(j) * nx;
        const double* p0 = f.plane(0) + off;
        const double* p1 = f.plane(1) + off;
        const double* p2 = f.plane(2) + off;
        const double* p3 = f.plane(3) + off;
        const double* p4 = f.plane(4) + off;
        const double* p5 = f.plane(5) + off;
        const double* p6 = f.plane(6) + off;
        const double* p7 = f.plane(7) + off;
        const double* p8 = f.plane(8) + off;
        double* out = phi + off;
        for (int i = 0; i < nx; ++i) {
            const double v = ((p0[i] + p1[i]) + (p2[i] + p3[i])) +
                             ((p4[i] + p5[i]) + (p6[i] + p7[i])) + p8[i];
            out[i] = v;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            ok &= (v - v == 0.0);
        }
    }
    state_.phi_min = mn;
    state_.phi_max = mx;
    if (!ok) throw DivergenceError(state_.step_count + 1);
}

void Solver::step() {
    const double t = state_.time;
    refresh_cell_geometry(t);
    cell_transforms(t);
    direction_x(t + s_);
    direction_y(t + s_);
    apply_fluxes_and_moments();
    state_.step_count += 1;
    state_.time = dt_ * state_.step_count;
}

void Solver::advance(long nsteps) {
    for (long k = 0; k < nsteps; ++k) step();
}

Solver make_solver(const SolverConfig& cfg, const FlowField& flow,
                   const ScalarField& phi0) {
    Solver s(cfg, flow);
    s.set_initial_condition(phi0);
    return s;
}

} // namespace dugks
