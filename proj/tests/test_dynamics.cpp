// Riemann-frame dynamics: Taylor-sign coefficient, acceleration law, the
// conformal transport coefficient, RK4 stepping with re-projection, label
// tracking, Lagrangian jet recovery and the a_t solve.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gravsurf/dynamics.hpp"
#include "gravsurf/errors.hpp"

#include "support/oracles.hpp"

#include <cmath>
#include <random>

using namespace gravsurf;
using gravsurf::testing::kPi;
using gravsurf::testing::unit_circle_field;

namespace {

FluidState equilibrium(std::size_t n, double omega0) {
    return FluidState{unit_circle_field(n), PeriodicComplexField(n), omega0, 0.0};
}

// random valid state built directly in the conformal frame: Z with positive
// modes only and area pi, Zt anti-holomorphic
FluidState random_state(std::mt19937& rng, std::size_t n, double size) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> z(n), zt(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        z[j] = std::polar(1.0, a);
        zt[j] = {0.0, 0.0};
    }
    for (int m = 2; m <= 4; ++m) {
        const Complex cm = size * Complex(u(rng), u(rng));
        const Complex dm = size * Complex(u(rng), u(rng));
        for (std::size_t j = 0; j < n; ++j) {
            const double a = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
            z[j] += cm * std::polar(1.0, m * a);
            zt[j] += dm * std::polar(1.0, -(m - 2) * a);
        }
    }
    FluidState s{PeriodicComplexField(std::move(z)), PeriodicComplexField(std::move(zt)),
                 0.5, 0.0};
    return reproject(s);
}

} // namespace

TEST_CASE("A1 on the equilibrium equals pi - omega0^2") {
    for (double w0 : {0.0, 0.5, 1.0, 1.5}) {
        const auto a1 = compute_A1(equilibrium(128, w0));
        for (std::size_t j = 0; j < a1.size(); j += 8)
            CHECK(std::abs(a1[j] - (kPi - w0 * w0)) <= 1e-10);
    }
}

TEST_CASE("A1 is unchanged by rigid translation velocity") {
    auto s = equilibrium(64, 0.5);
    auto moving = s;
    moving.Zt = PeriodicComplexField(64, Complex(0.3, -0.2));
    const auto a = compute_A1(s);
    const auto b = compute_A1(moving);
    for (std::size_t j = 0; j < 64; ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-12);
}

TEST_CASE("vorticity bound is enforced") {
    CHECK_THROWS_AS(compute_A1(equilibrium(64, 1.8)), InvariantViolation);
}

TEST_CASE("script A on the equilibrium and scaled circles") {
    const auto sa = compute_script_A(equilibrium(64, 0.5));
    for (std::size_t j = 0; j < 64; ++j)
        CHECK(sa[j] == doctest::Approx(kPi - 0.25).epsilon(1e-12));
    // scaled circle: script A = A1 / r^2 by definition
    FluidState s = equilibrium(64, 0.0);
    s.Z *= Complex(1.3, 0.0);
    const auto a1 = compute_A1(s);
    const auto sa2 = compute_script_A(s);
    for (std::size_t j = 0; j < 64; j += 7)
        CHECK(sa2[j] == doctest::Approx(a1[j] / (1.3 * 1.3)).epsilon(1e-12));
}

TEST_CASE("acceleration vanishes on the equilibrium") {
    for (double w0 : {0.0, 0.7}) {
        CHECK(sup_norm(accel(equilibrium(128, w0))) <= 1e-12);
    }
}

TEST_CASE("acceleration scales linearly with the perturbation") {
    std::vector<double> eps = {0.04, 0.02, 0.01};
    std::vector<double> norms;
    for (double e : eps) {
        const auto ts = prepare_state(default_profile(e, 0.5), 128);
        norms.push_back(sup_norm(accel(ts.state)));
    }
    const double r1 = norms[0] / norms[1];
    const double r2 = norms[1] / norms[2];
    CHECK(r1 > 1.6);
    CHECK(r1 < 2.4);
    CHECK(r2 > 1.6);
    CHECK(r2 < 2.4);
}

TEST_CASE("transport coefficient b") {
    CHECK(sup_norm(compute_b(equilibrium(64, 0.5)).complexified()) <= 1e-14);

    std::mt19937 rng(83);
    auto s = random_state(rng, 128, 0.02);
    const auto b = compute_b(s);
    const auto dz = s.Zt - b * derivative(s.Z);
    auto coeffs = spectrum(dz);
    double worst = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (fft_mode(k, coeffs.size()) < 0) worst = std::max(worst, std::abs(coeffs[k]));
    CHECK(worst <= 1e-10);

    // rigid label rotation: residual still certifies
    auto rot = s;
    rot.Zt = Complex(0.0, 0.15) * derivative(s.Z);
    rot = reproject(rot);
    const auto b2 = compute_b(rot);
    const auto dz2 = rot.Zt - b2 * derivative(rot.Z);
    auto c2 = spectrum(dz2);
    worst = 0.0;
    for (std::size_t k = 0; k < c2.size(); ++k)
        if (fft_mode(k, c2.size()) < 0) worst = std::max(worst, std::abs(c2[k]));
    CHECK(worst <= 1e-10);
}

TEST_CASE("b keeps the stepped curve conformally parametrized") {
    // after one RK4 step the freshly solved boundary correspondence of the
    // stepped curve differs from the identity only at integrator order
    auto s = prepare_state(default_profile(0.05, 0.5), 128).state;
    const auto stepped = rk4_step(s, 1e-3);
    const auto h = conformal_parametrization(ClosedCurve(stepped.Z));
    CHECK(sup_norm(h.offset()) <= 1e-10);
}

TEST_CASE("equilibrium is a fixed point of the stepper") {
    auto s = equilibrium(128, 0.5);
    FluidState cur = s;
    for (int i = 0; i < 100; ++i) cur = step(cur, 1e-2);
    CHECK(sup_norm(cur.Z - s.Z) + sup_norm(cur.Zt) <= 1e-10);
}

TEST_CASE("RK4 order: halving dt reduces the step error ~16x") {
    const auto ts = prepare_state(default_profile(0.05, 0.5), 96);
    auto run = [&](double dt, int steps) {
        FluidState s = ts.state;
        for (int i = 0; i < steps; ++i) s = rk4_step(s, dt);
        return s;
    };
    const auto ref = run(0.0025, 64);
    const auto coarse = run(0.02, 8);
    const auto fine = run(0.01, 16);
    const double e_coarse = sup_norm(coarse.Z - ref.Z) + sup_norm(coarse.Zt - ref.Zt);
    const double e_fine = sup_norm(fine.Z - ref.Z) + sup_norm(fine.Zt - ref.Zt);
    const double ratio = e_coarse / e_fine;
    CHECK(ratio > 10.0);
    CHECK(ratio < 26.0);
}

TEST_CASE("area drift over 1000 steps stays below 1e-8") {
    auto s = prepare_state(default_profile(0.05, 0.5), 128).state;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        s = step(s, 1e-3);
        worst = std::max(worst, std::abs(area(ClosedCurve(s.Z)) - kPi));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("reproject is idempotent and removes injected defects") {
    std::mt19937 rng(89);
    auto s = random_state(rng, 128, 0.02);
    const auto r1 = reproject(s);
    const auto r2 = reproject(r1);
    CHECK(sup_norm(r2.Z - r1.Z) + sup_norm(r2.Zt - r1.Zt) <= 1e-14);

    auto noisy = r1;
    for (std::size_t j = 0; j < noisy.Z.size(); ++j) {
        const double a = noisy.Z.node(j);
        noisy.Z[j] += 1e-6 * std::polar(1.0, -3.0 * a);
        noisy.Zt[j] += 1e-6 * std::polar(1.0, 2.0 * a);
    }
    const auto cleaned = reproject(noisy);
    CHECK(negative_mode_energy(cleaned.Z) <= 1e-14);
    CHECK(sup_norm(conj(cleaned.Zt) - circle_hilbert(conj(cleaned.Zt))) <= 1e-13);
    CHECK(sup_norm(cleaned.Z - r1.Z) <= 3e-6);
}

TEST_CASE("Lagrangian jet of the equilibrium") {
    const auto j = lagrangian_jet(equilibrium(128, 0.5));
    CHECK(sup_norm(j.z - unit_circle_field(128)) <= 1e-12);
    CHECK(sup_norm(j.zt) <= 1e-12);
    CHECK(sup_norm(j.ztt) <= 1e-12);
    for (std::size_t i = 0; i < j.a.size(); i += 16)
        CHECK(j.a[i] == doctest::Approx(kPi - 0.25).epsilon(1e-10));
}

TEST_CASE("jet holomorphy constraint transports through the pullback") {
    auto ts = prepare_state(default_profile(0.05, 0.5), 128);
    for (int i = 0; i < 20; ++i) ts = step_tracked(ts, 1e-3);
    const auto j = lagrangian_jet(ts.state, ts.labels);
    CHECK(jet_constraint_defect(j) <= 1e-8);
}

TEST_CASE("rotating-frame system residual of the recovered jet") {
    auto ts = prepare_state(default_profile(0.03, 0.8), 128);
    for (int i = 0; i < 10; ++i) ts = step_tracked(ts, 1e-3);
    const auto j = lagrangian_jet(ts.state, ts.labels);
    ClosedCurve c(j.z);
    auto resid = j.ztt + Complex(0.0, 1.0) * (j.a * derivative(j.z));
    resid += (kPi / 2.0) * (j.z - conj_hilbert(c, j.z));
    resid -= Complex(0.0, 2.0 * j.omega0) * j.zt;
    resid -= Complex(j.omega0 * j.omega0, 0.0) * j.z;
    CHECK(sup_norm(resid) <= 1e-6);
}

TEST_CASE("script A composed with the labels matches a h_alpha") {
    auto ts = prepare_state(default_profile(0.05, 0.5), 128);
    for (int i = 0; i < 15; ++i) ts = step_tracked(ts, 1e-3);
    const auto j = lagrangian_jet(ts.state, ts.labels);
    const auto sa = compute_script_A(ts.state);
    const auto sa_comp = compose(sa, ts.labels);
    const auto ha = PeriodicRealField(128, 1.0) + derivative(ts.labels.offset());
    for (std::size_t i = 0; i < 128; i += 8)
        CHECK(std::abs(sa_comp[i] - j.a[i] * ha[i]) <= 1e-8);
}

TEST_CASE("label transport: material velocity matches stepped positions") {
    auto ts = prepare_state(default_profile(0.05, 0.5), 128);
    for (int i = 0; i < 10; ++i) ts = step_tracked(ts, 1e-3);
    const double dt = 5e-4;
    const auto back = step_tracked(ts, -dt);
    const auto fwd = step_tracked(ts, dt);
    const auto zm = lagrangian_jet(back.state, back.labels).z;
    const auto zp = lagrangian_jet(fwd.state, fwd.labels).z;
    const auto j0 = lagrangian_jet(ts.state, ts.labels);
    double worst = 0.0;
    for (std::size_t i = 0; i < 128; ++i)
        worst = std::max(worst, std::abs((zp[i] - zm[i]) / (2.0 * dt) - j0.zt[i]));
    CHECK(worst <= 1e-6);
}

TEST_CASE("a_t solve: equilibrium and finite-difference cross-check") {
    const auto j0 = lagrangian_jet(equilibrium(128, 0.5));
    CHECK(sup_norm(solve_at(j0).complexified()) <= 1e-12);

    auto ts = prepare_state(default_profile(0.05, 0.5), 128);
    for (int i = 0; i < 30; ++i) ts = step_tracked(ts, 1e-3);
    const double dt = 5e-4;
    const auto back = step_tracked(ts, -dt);
    const auto fwd = step_tracked(ts, dt);
    const auto am = lagrangian_jet(back.state, back.labels).a;
    const auto ap = lagrangian_jet(fwd.state, fwd.labels).a;
    const auto at = solve_at(lagrangian_jet(ts.state, ts.labels));
    double worst = 0.0;
    for (std::size_t i = 0; i < 128; ++i)
        worst = std::max(worst, std::abs((ap[i] - am[i]) / (2.0 * dt) - at[i]));
    CHECK(worst <= 2.0 * dt * dt + 1e-7);
}

TEST_CASE("a_t right-hand side is quadratic or higher in the perturbation") {
    std::vector<double> eps = {0.04, 0.02, 0.01};
    std::vector<double> norms;
    for (double e : eps) {
        const auto ts = prepare_state(default_profile(e, 0.5), 128);
        norms.push_back(sup_norm(solve_at(lagrangian_jet(ts.state, ts.labels)).complexified()));
    }
    const double slope = std::log(norms[0] / norms[2]) / std::log(eps[0] / eps[2]);
    CHECK(slope >= 1.9);
}

TEST_CASE("prepared initial data satisfies the constraint and reduces to the equilibrium") {
    const auto ts = prepare_state(default_profile(0.0, 0.9), 128);
    CHECK(sup_norm(ts.state.Z - unit_circle_field(128)) <= 1e-10);
    CHECK(sup_norm(ts.state.Zt) <= 1e-10);

    const auto tp = prepare_state(default_profile(0.05, 0.9), 128);
    const auto d = diagnose(tp.state);
    CHECK(std::abs(d.area - kPi) <= 1e-9);
    CHECK(d.constraint_defect <= 1e-10);
    CHECK(d.neg_mode_energy <= 1e-10);
    CHECK(d.min_a1 > 0.0);
}
