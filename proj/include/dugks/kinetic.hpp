#pragma once

#include <array>

#include "dugks/lattice.hpp"
#include "dugks/vec2.hpp"

namespace dugks {

// The two BGK models for the order-parameter equation. Variant A uses
// the quadratic-in-velocity equilibrium and a force with moments
// (0, cs^2 Theta n); variant B uses the linear equilibrium and adds the
// time derivative of phi*u to the force.
enum class KineticVariant { A, B };

struct KineticModel {
    KineticVariant variant = KineticVariant::A;
    double width = 4.0;   // interface width W
    double tau_f = 0.004; // relaxation time; mobility = cs^2 tau_f

    double mobility() const { return LatticeD2Q9::cs2 * tau_f; }
};

// Theta = 2 (1 - phi^2) / W, the equilibrium interface-gradient magnitude.
inline double theta(double phi, double width) {
    return 2.0 * (1.0 - phi * phi) / width;
}

using Dist = std::array<double, LatticeD2Q9::q>;

Dist equilibrium(KineticVariant v, double phi, Vec2 u);

// dt_phiu is only consumed by variant B; variant A ignores it.
Dist source_term(KineticVariant v, double theta_val, Vec2 n, Vec2 dt_phiu);

// Auxiliary-distribution transforms of the update cycle. All are affine
// in (f, feq, F) with the f and feq coefficients summing to one, so they
// are evaluated as f + beta (feq - f) + gamma F; an equilibrium state
// with zero force is then a fixed point to the last bit.

// Cell update precursor at the half step: coefficient set (2tau - s, 3s,
// 3 tau s) / (2 tau + dt), with s = dt/2.
Dist f_hat_plus_from_f_tilde(const Dist& f_tilde, const Dist& feq,
                             const Dist& force, double tau_f, double dt);

// Post-collision value tracked across whole steps: (2tau - dt, 2dt,
// 2 tau dt) / (2 tau + dt).
Dist f_tilde_plus(const Dist& f_tilde, const Dist& feq, const Dist& force,
                  double tau_f, double dt);

// Recovers the original distribution at a face from the half-step
// auxiliary value: (2tau, s, tau s) / (2 tau + s).
Dist f_original_from_f_hat(const Dist& f_hat, const Dist& feq,
                           const Dist& force, double tau_f, double s);

// Forward map f -> f_hat (the inverse pair of the recovery above).
Dist f_hat_from_f_original(const Dist& f, const Dist& feq, const Dist& force,
                           double tau_f, double s);

} // namespace dugks
