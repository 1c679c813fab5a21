#pragma once

#include <stdexcept>
#include <string>

#include "dugks/fields.hpp"
#include "dugks/kinetic.hpp"
#include "dugks/reconstruction.hpp"

namespace dugks {

// Characteristic reconstruction of the half-step face value: linear in
// s, or parabolic with the second-derivative correction term.
enum class FluxMode { Linear, Parabolic };

// Gradient operator feeding the interface normal; central differences
// are kept only for sensitivity comparisons.
enum class GradientScheme { Isotropic, Central };

// Prescribed incompressible velocity, separable as spatial(x, y) times
// a scalar time factor. Covers all the benchmark flows.
struct FlowField {
    enum class Kind { Uniform, Rotation, Vortex };
    Kind kind = Kind::Uniform;
    Vec2 u0{};          // uniform translation velocity
    double mag = 0.0;   // velocity scale of rotation / vortex
    double l0 = 0.0;    // domain extent of rotation / vortex
    double period = 0.0;  // vortex reversal period (physical time)

    static FlowField uniform(Vec2 u);
    static FlowField rotation(double u0, double l0);
    static FlowField vortex(double u0, double l0, double period);

    Vec2 spatial(double x, double y) const;
    double time_factor(double t) const;
    Vec2 operator()(double x, double y, double t) const {
        return time_factor(t) * spatial(x, y);
    }
};

struct SolverConfig {
    Grid2D grid;
    KineticVariant variant = KineticVariant::A;
    FluxMode flux_mode = FluxMode::Parabolic;
    FaceScheme face_scheme{};
    GradientScheme gradient_scheme = GradientScheme::Isotropic;

    double width = 4.0;  // interface width W (lattice units)
    double pe = 60.0;    // Peclet number U0 W / mobility
    double u0 = 0.02;    // velocity scale entering the Peclet number
    double chi = 0.5;    // time step factor, dt = chi * h
    double normal_eps = 1e-12;
    bool lag_dt_phiu = true;  // variant B: backward-difference d/dt(phi u)

    double mobility() const { return u0 * width / pe; }
    double tau_f() const { return mobility() * LatticeD2Q9::inv_cs2; }
    KineticModel kinetic() const { return {variant, width, tau_f()}; }
};

// dt = chi * h; chi outside (0, 1] is rejected.
double derived_timestep(const SolverConfig& cfg);

struct DivergenceError : std::runtime_error {
    long step;
    explicit DivergenceError(long step_)
        : std::runtime_error("solution diverged (non-finite order parameter) at step " +
                             std::to_string(step_)),
          step(step_) {}
};

struct SolverState {
    DistField f_tilde;     // tracked auxiliary distribution
    ScalarField phi;       // zeroth moment of f_tilde, refreshed every step
    VectorField phiu_prev; // phi*u of the previous step (variant B lag)
    double time = 0.0;
    long step_count = 0;
    double phi_min = 0.0;
    double phi_max = 0.0;
};

class Solver {
public:
    Solver(const SolverConfig& cfg, const FlowField& flow);

    // Sets phi and puts f_tilde at the corresponding forced equilibrium,
    // f_tilde = feq - (dt/2) F, whose zeroth moment is exactly phi0.
    void set_initial_condition(const ScalarField& phi0);

    // Advances one time step; throws DivergenceError when the updated
    // order parameter stops being finite.
    void step();
    void advance(long nsteps);

    const SolverState& state() const { return state_; }
    const SolverConfig& config() const { return cfg_; }
    const FlowField& flow() const { return flow_; }
    double dt() const { return dt_; }

private:
    SolverConfig cfg_;
    FlowField flow_;
    double dt_;
    double s_;  // half step

    SolverState state_;

    // scratch planes
    DistField f_hat_plus_;
    DistField face_val_;
    DistField flux_x_;
    DistField flux_y_;
    VectorField normal_;
    VectorField dt_phiu_;
    ScalarField phi_face_;
    // spatial velocity samples (time factor applied on use)
    VectorField u_cell_;
    VectorField u_xface_;
    VectorField u_yface_;

    void refresh_cell_geometry(double t);  // normals + lagged d/dt(phi u)
    void cell_transforms(double t);
    void direction_x(double t_half);
    void direction_y(double t_half);
    void apply_fluxes_and_moments();
};

// Convenience wrapper mirroring the initialize operation.
Solver make_solver(const SolverConfig& cfg, const FlowField& flow,
                   const ScalarField& phi0);

} // namespace dugks
