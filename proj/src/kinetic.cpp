#include "dugks/kinetic.hpp"

namespace dugks {

using L = LatticeD2Q9;

Dist equilibrium(KineticVariant v, double phi, Vec2 u) {
    Dist f;
    if (v == KineticVariant::A) {
        const double uu = dot(u, u);
        for (int a = 0; a < L::q; ++a) {
            const double xu = L::c * (L::ex[a] * u.x + L::ey[a] * u.y);
            f[a] = L::w[a] * phi *
                   (1.0 + L::inv_cs2 * xu +
                    0.5 * L::inv_cs2 * L::inv_cs2 * xu * xu -
                    0.5 * L::inv_cs2 * uu);
        }
    } else {
        for (int a = 0; a < L::q; ++a) {
            const double xu = L::c * (L::ex[a] * u.x + L::ey[a] * u.y);
            f[a] = L::w[a] * phi * (1.0 + L::inv_cs2 * xu);
        }
    }
    return f;
}

Dist source_term(KineticVariant v, double theta_val, Vec2 n, Vec2 dt_phiu) {
    Dist F;
    for (int a = 0; a < L::q; ++a) {
        const double xn = L::c * (L::ex[a] * n.x + L::ey[a] * n.y);
        F[a] = L::w[a] * theta_val * xn;
    }
    if (v == KineticVariant::B) {
        for (int a = 0; a < L::q; ++a) {
            const double xd = L::c * (L::ex[a] * dt_phiu.x + L::ey[a] * dt_phiu.y);
            F[a] += L::w[a] * L::inv_cs2 * xd;
        }
    }
    return F;
}

namespace {

inline Dist affine(const Dist& f, const Dist& feq, const Dist& force,
                   double beta, double gamma) {
    Dist out;
    for (int a = 0; a < L::q; ++a)
        out[a] = f[a] + beta * (feq[a] - f[a]) + gamma * force[a];
    return out;
}

} // namespace

Dist f_hat_plus_from_f_tilde(const Dist& f_tilde, const Dist& feq,
                             const Dist& force, double tau_f, double dt) {
    const double s = 0.5 * dt;
    const double d = 2.0 * tau_f + dt;
    return affine(f_tilde, feq, force, 3.0 * s / d, 3.0 * tau_f * s / d);
}

Dist f_tilde_plus(const Dist& f_tilde, const Dist& feq, const Dist& force,
                  double tau_f, double dt) {
    const double d = 2.0 * tau_f + dt;
    return affine(f_tilde, feq, force, 2.0 * dt / d, 2.0 * tau_f * dt / d);
}

Dist f_original_from_f_hat(const Dist& f_hat, const Dist& feq,
                           const Dist& force, double tau_f, double s) {
    const double d = 2.0 * tau_f + s;
    return affine(f_hat, feq, force, s / d, tau_f * s / d);
}

Dist f_hat_from_f_original(const Dist& f, const Dist& feq, const Dist& force,
                           double tau_f, double s) {
    const double r = 0.5 * s / tau_f;
    Dist out;
    for (int a = 0; a < L::q; ++a)
        out[a] = f[a] + r * (f[a] - feq[a]) - 0.5 * s * force[a];
    return out;
}

} // namespace dugks
