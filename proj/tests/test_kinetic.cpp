#include <doctest.h>

#include <cmath>
#include <random>

#include "dugks/kinetic.hpp"

using namespace dugks;
using L = LatticeD2Q9;

TEST_CASE("theta kernel") {
    CHECK(theta(0.0, 4.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(theta(1.0, 4.0) == 0.0);
    CHECK(theta(-1.0, 7.3) == 0.0);
    // on the tanh profile, theta equals the profile slope
    const double w = 4.0;
    const double s = 0.5 * w;
    const double phi = std::tanh(2.0 * s / w);
    CHECK(theta(phi, w) == doctest::Approx(0.209987).epsilon(1e-5));
    const double ds = 1e-6;
    const double slope =
        (std::tanh(2.0 * (s + ds) / w) - std::tanh(2.0 * (s - ds) / w)) / (2.0 * ds);
    CHECK(theta(phi, w) == doctest::Approx(slope).epsilon(1e-8));
}

TEST_CASE("equilibrium at rest reduces to weighted phi") {
    for (KineticVariant v : {KineticVariant::A, KineticVariant::B}) {
        const Dist eq = equilibrium(v, 0.37, {0.0, 0.0});
        for (int a = 0; a < L::q; ++a)
            CHECK(eq[a] == doctest::Approx(L::w[a] * 0.37).epsilon(1e-16));
    }
}

TEST_CASE("equilibrium, direct substitution for the axis velocity") {
    const Dist eqb = equilibrium(KineticVariant::B, 1.0, {0.02, 0.0});
    CHECK(eqb[1] == doctest::Approx((1.0 / 9.0) * 1.06).epsilon(1e-14));
    const Dist eqa = equilibrium(KineticVariant::A, 1.0, {0.02, 0.0});
    // term-by-term evaluation of the quadratic equilibrium at xi = (1,0)
    const double xu = 0.02;
    const double expect =
        (1.0 / 9.0) * (1.0 + 3.0 * xu + 4.5 * xu * xu - 1.5 * xu * xu);
    CHECK(eqa[1] == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("source term trivial zeros") {
    const Dist fa = source_term(KineticVariant::A, 0.0, {1.0, 0.0}, {});
    for (double v : fa) CHECK(v == 0.0);
    const Dist fb = source_term(KineticVariant::B, 0.0, {1.0, 0.0}, {0.0, 0.0});
    for (double v : fb) CHECK(v == 0.0);
}

TEST_CASE("randomized moment identities") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> phi_d(-1.0, 1.0);
    std::uniform_real_distribution<double> u_d(-0.1, 0.1);
    std::uniform_real_distribution<double> th_d(0.0, 0.6);

    for (int trial = 0; trial < 1000; ++trial) {
        const double phi = phi_d(rng);
        const Vec2 u{u_d(rng), u_d(rng)};
        const double th = th_d(rng);
        double ang = phi_d(rng) * 3.14159;
        const Vec2 n{std::cos(ang), std::sin(ang)};
        const Vec2 dtphiu{0.01 * u_d(rng), 0.01 * u_d(rng)};

        for (KineticVariant v : {KineticVariant::A, KineticVariant::B}) {
            const Dist eq = equilibrium(v, phi, u);
            CHECK(moment0(eq.data()) == doctest::Approx(phi).epsilon(1e-13));
            const Vec2 m1 = moment1(eq.data());
            CHECK(m1.x == doctest::Approx(phi * u.x).epsilon(1e-13));
            CHECK(m1.y == doctest::Approx(phi * u.y).epsilon(1e-13));

            const Dist force = source_term(v, th, n, dtphiu);
            CHECK(std::abs(moment0(force.data())) < 1e-13);
            const Vec2 fm = moment1(force.data());
            if (v == KineticVariant::A) {
                CHECK(fm.x == doctest::Approx(L::cs2 * th * n.x).epsilon(1e-13));
                CHECK(fm.y == doctest::Approx(L::cs2 * th * n.y).epsilon(1e-13));
                // second moment of the quadratic equilibrium
                const auto m2 = moment2(eq.data());
                CHECK(m2[0] ==
                      doctest::Approx(L::cs2 * phi + phi * u.x * u.x).epsilon(1e-13));
                CHECK(m2[1] == doctest::Approx(phi * u.x * u.y).epsilon(1e-13));
                CHECK(m2[2] ==
                      doctest::Approx(L::cs2 * phi + phi * u.y * u.y).epsilon(1e-13));
            } else {
                CHECK(fm.x == doctest::Approx(L::cs2 * th * n.x + dtphiu.x)
                                  .epsilon(1e-13));
                CHECK(fm.y == doctest::Approx(L::cs2 * th * n.y + dtphiu.y)
                                  .epsilon(1e-13));
            }
            // force has no second moment in either variant
            const auto f2 = moment2(force.data());
            CHECK(std::abs(f2[0]) < 1e-14);
            CHECK(std::abs(f2[1]) < 1e-14);
            CHECK(std::abs(f2[2]) < 1e-14);
        }
    }
}

TEST_CASE("variant B moment1 example") {
    const Dist f = source_term(KineticVariant::B, 0.0, {0.0, 0.0}, {0.001, 0.0});
    const Vec2 m = moment1(f.data());
    CHECK(m.x == doctest::Approx(0.001).epsilon(1e-14));
    CHECK(std::abs(m.y) < 1e-18);
}

namespace {

Dist random_dist(std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Dist f;
    for (double& v : f) v = d(rng);
    return f;
}

} // namespace

TEST_CASE("equilibrium is a fixed point of every transform") {
    const Dist eq = equilibrium(KineticVariant::A, 0.42, {0.03, -0.01});
    const Dist zero{};
    const double tau = 0.004, dt = 0.5;
    const Dist a = f_hat_plus_from_f_tilde(eq, eq, zero, tau, dt);
    const Dist b = f_tilde_plus(eq, eq, zero, tau, dt);
    const Dist c = f_original_from_f_hat(eq, eq, zero, tau, 0.25);
    for (int k = 0; k < L::q; ++k) {
        CHECK(a[k] == eq[k]);  // exact, by the delta form
        CHECK(b[k] == eq[k]);
        CHECK(c[k] == eq[k]);
    }
}

TEST_CASE("transform coefficients, direct evaluation") {
    // single-population probe of the leading coefficient
    Dist f{}, eq{}, F{};
    f[3] = 1.0;
    const double tau = 0.004, dt = 0.5;
    const Dist out = f_hat_plus_from_f_tilde(f, eq, F, tau, dt);
    CHECK(out[3] == doctest::Approx((2 * tau - 0.25) / (2 * tau + dt)).epsilon(1e-14));

    // s = 0 collapses the face recovery to the identity
    std::mt19937 rng(11);
    const Dist g = random_dist(rng);
    const Dist id = f_original_from_f_hat(g, eq, F, tau, 0.0);
    for (int k = 0; k < L::q; ++k) CHECK(id[k] == g[k]);

    // collisionless limit
    const Dist free = f_tilde_plus(g, eq, F, 1e9, dt);
    for (int k = 0; k < L::q; ++k)
        CHECK(free[k] == doctest::Approx(g[k]).epsilon(1e-9));
}

TEST_CASE("transforms preserve the zeroth moment") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        const double phi = d(rng);
        const Vec2 u{0.05 * d(rng), 0.05 * d(rng)};
        const double th = 0.3 * (d(rng) + 1.0);
        const Vec2 n{d(rng), d(rng)};
        const Dist eq = equilibrium(KineticVariant::A, phi, u);
        const Dist F = source_term(KineticVariant::A, th, n, {});
        // f_tilde with the same zeroth moment as feq
        Dist f = eq;
        std::uniform_real_distribution<double> jitter(-0.01, 0.01);
        double bump = jitter(rng);
        f[1] += bump;
        f[3] -= bump;  // keeps moment0 unchanged
        const double tau = 0.01, dt = 0.4;
        const Dist tp = f_tilde_plus(f, eq, F, tau, dt);
        CHECK(moment0(tp.data()) == doctest::Approx(phi).epsilon(1e-13));
        const Dist hp = f_hat_plus_from_f_tilde(f, eq, F, tau, dt);
        CHECK(moment0(hp.data()) == doctest::Approx(phi).epsilon(1e-13));
    }
}

TEST_CASE("the two half-step forms agree") {
    // f_tilde_plus equals (4/3) f_hat_plus - (1/3) f_tilde
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const Dist f = random_dist(rng);
        const Dist eq = random_dist(rng);
        const Dist F = random_dist(rng);
        const double tau = 0.004, dt = 0.5;
        const Dist hp = f_hat_plus_from_f_tilde(f, eq, F, tau, dt);
        const Dist tp = f_tilde_plus(f, eq, F, tau, dt);
        for (int k = 0; k < L::q; ++k)
            CHECK(tp[k] ==
                  doctest::Approx((4.0 / 3.0) * hp[k] - (1.0 / 3.0) * f[k])
                      .epsilon(1e-14));
    }
}

TEST_CASE("face transform round-trip") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const Dist f = random_dist(rng);
        const Dist eq = random_dist(rng);
        const Dist F = random_dist(rng);
        const double tau = 0.004, s = 0.25;
        const Dist hat = f_hat_from_f_original(f, eq, F, tau, s);
        const Dist back = f_original_from_f_hat(hat, eq, F, tau, s);
        for (int k = 0; k < L::q; ++k)
            CHECK(back[k] == doctest::Approx(f[k]).epsilon(1e-12));
    }
}

TEST_CASE("transforms are affine with unit coefficient sum") {
    // numeric probing: slopes in each slot plus the (f, feq) sum rule
    const Dist zero{};
    Dist e1{};
    e1[4] = 1.0;
    const double tau = 0.02, dt = 0.3;
    auto probe = [&](auto&& op) {
        const double at_zero = op(zero, zero)[4];
        const double df = op(e1, zero)[4] - at_zero;
        const double dq = op(zero, e1)[4] - at_zero;
        CHECK(df + dq == doctest::Approx(1.0).epsilon(1e-14));
    };
    probe([&](const Dist& f, const Dist& q) {
        return f_hat_plus_from_f_tilde(f, q, zero, tau, dt);
    });
    probe([&](const Dist& f, const Dist& q) {
        return f_tilde_plus(f, q, zero, tau, dt);
    });
    probe([&](const Dist& f, const Dist& q) {
        return f_original_from_f_hat(f, q, zero, tau, 0.5 * dt);
    });
}
