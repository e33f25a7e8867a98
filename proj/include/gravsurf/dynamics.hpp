// dynamics.hpp
// The Riemann-frame interface state and its evolution: the Taylor-sign
// coefficient A1 and the quotient script-A, the acceleration law, the
// tangential transport coefficient b that keeps the parametrization
// conformal, RK4 time stepping with constraint re-projection, material-label
// tracking, recovery of the Lagrangian jet (z, z_t, z_tt, a), and the
// (I + K*) solve for a_t.
#pragma once

#include "gravsurf/curve.hpp"
#include "gravsurf/hilbert.hpp"

namespace gravsurf {

// Interface state on the unit-circle grid: Z the conformal parametrization
// of the curve (no negative modes, area pi), Zt the velocity with conj(Zt)
// holomorphic in the disc, omega0 half the constant vorticity (omega0^2 < pi).
struct FluidState {
    PeriodicComplexField Z;
    PeriodicComplexField Zt;
    double omega0 = 0.0;
    double t = 0.0;
};

struct StateDiagnostics {
    double area = 0.0;
    double min_a1 = 0.0;
    double eps_sup = 0.0;
    double constraint_defect = 0.0;  // sup |(I - circle_hilbert) conj(Zt)|
    double neg_mode_energy = 0.0;    // negative-mode energy of Z
};

StateDiagnostics diagnose(const FluidState& s);

// throws InvariantViolation / TaylorSignViolation when a state invariant fails
void validate_state(const FluidState& s,
                    double area_tol = 1e-6,
                    double constraint_tol = 1e-6,
                    double conformal_tol = 1e-6);

// A1 = csc_form(Zt) + (pi - omega0^2) csc_form(Z); strictly positive
// (TaylorSignViolation otherwise)
PeriodicRealField compute_A1(const FluidState& s);

// script A = A1 / |Z_a|^2 (DegenerateParametrization if |Z_a| collapses)
PeriodicRealField compute_script_A(const FluidState& s);

// Z_tt = -i script-A Z_a - (pi - omega0^2) Z + conj(G)
PeriodicComplexField accel(const FluidState& s);

// the unique real transport coefficient: d_t Z = Zt - b Z_a keeps Z free of
// negative modes and preserves the map normalization
PeriodicRealField compute_b(const FluidState& s);

// zero the negative modes of Z and the anti-holomorphic defect of conj(Zt),
// rescale to area pi; idempotent
FluidState reproject(const FluidState& s);

// classical RK4 on (Z, Zt) with dealiased products, followed by reproject
FluidState step(const FluidState& s, double dt);
FluidState rk4_step(const FluidState& s, double dt); // no projection

// state plus the material-label correspondence h(t, .): alpha' = h(alpha).
// h is transported by dh/dt = b o h so that Z o h stays a fixed-label
// Lagrangian parametrization.
struct TrackedState {
    FluidState state;
    Diffeo labels;
};

TrackedState step_tracked(const TrackedState& ts, double dt);

// Lagrangian-frame jet (rotating frame): positions, velocity, acceleration
// and the coefficient a = (script-A o h)/h_alpha
struct LagrangianJet {
    PeriodicComplexField z;
    PeriodicComplexField zt;
    PeriodicComplexField ztt;
    PeriodicRealField a;
    double omega0 = 0.0;
    double t = 0.0;
};

LagrangianJet lagrangian_jet(const FluidState& s);  // identity labels
LagrangianJet lagrangian_jet(const FluidState& s, const Diffeo& labels);

// sup |(I - H) conj(zt)| on the jet's curve
double jet_constraint_defect(const LagrangianJet& j);

// a_t from the (I + K*) solve. ga, gh are optional source terms (zero when
// not supplied); phase_omega sets the e^{i phase_omega t} prefactor on ga so
// either phase convention can be exercised.
PeriodicRealField solve_at(const LagrangianJet& j,
                           const PeriodicComplexField& ga,
                           const PeriodicComplexField& gh,
                           double phase_omega = 1.0);
PeriodicRealField solve_at(const LagrangianJet& j);

// initial data of the perturbed equilibrium:
// z0 = e^{ia} + eps f(a), z1 = v0 - i omega0 e^{ia} + eps g(a),
// holomorphy constraint enforced by projection, area normalized to pi
struct PerturbationMode {
    int mode = 0;
    Complex coeff{0.0, 0.0};
};

struct InitialData {
    double epsilon = 0.0;
    double omega0 = 0.0;
    Complex v0{0.0, 0.0};
    std::vector<PerturbationMode> f_modes;
    std::vector<PerturbationMode> g_modes;
};

// the default perturbation profile f = e^{2ia} + (1/2) e^{-ia}, g = i e^{ia}
InitialData default_profile(double epsilon, double omega0);

TrackedState prepare_state(const InitialData& data, std::size_t n);

} // namespace gravsurf
