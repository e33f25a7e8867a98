// identities.hpp
// The normal-form chain delta -> delta_t -> tilde -> k-frame and the
// numerical verification that the transformed evolution equations hold with
// no quadratic nonlinearities: assembly of both right-hand sides (the E-free
// form and the E form), the validation identity that accepts or rejects an E
// operator, trajectory residuals with finite-difference time derivatives,
// the k-change identities, and the cubic scaling experiment.
#pragma once

#include "gravsurf/dynamics.hpp"

#include <optional>
#include <string>

namespace gravsurf {

// jets sampled at t - dt, t, t + dt with one consistent set of material labels
struct JetTriple {
    LagrangianJet minus, center, plus;
    double dt = 0.0;
};

// step the tracked state backward/forward around its current time
JetTriple jet_triple(const TrackedState& ts, double dt);

// delta = (I - H) eps
PeriodicComplexField delta(const LagrangianJet& j);

// d_t delta via the transport rule d_t(H f) = H f_t + [z_t, H](f_a / z_a),
// with eps_t = 2 Re(conj(z) z_t)
PeriodicComplexField delta_t(const LagrangianJet& j);

struct N1Assembly {
    PeriodicComplexField rhs_pre;  // E-free right-hand side of the delta equation
    PeriodicComplexField n1_pre;   // rhs_pre - pi delta (claimed cubic)
};

// E-free assembly, entirely from (z, z_t):
// (pi/2)(I-H)(z (I-H) conj z - conj z (I-Hbar) z) + (pi/2)[(I-Hbar) z, H](eps_a/z_a)
//   - 2 [z_t, H 1/z_a + Hbar 1/conj(z_a)] d_a(z_t conj z) - quad kernel on eps
N1Assembly n1_pre_e(const LagrangianJet& j);

// the printed form with a pluggable E
PeriodicComplexField n1_with_e(const LagrangianJet& j, const EOperator& e);

// sup norm of (rhs_pre - pi delta) - n1_with_e; the acceptance gate for an E
double residual_delta_identity(const LagrangianJet& j, const EOperator& e);

// the accepted default E (validated at round-off)
EOperator accepted_e_operator();

// all eight terms of the delta_t right-hand side; time derivatives of E taken
// by central differences across the triple, time derivatives of the double
// integrals expanded by the product rule
PeriodicComplexField n2_with_e(const JetTriple& jets, const EOperator& e,
                               const PeriodicRealField& at);

// finite-difference trajectory residuals
// || (D_t^2 + i a d_a - 2 i w0 D_t) delta - rhs_pre ||_inf
double delta_equation_residual_pre(const JetTriple& jets);
// || (D_t^2 + i a d_a - pi - 2 i w0 D_t) delta - n1 ||_inf
double delta_equation_residual(const JetTriple& jets, const EOperator& e);
// || (D_t^2 + i a d_a - pi - 2 i w0 D_t) delta_t - n2 ||_inf
double delta_t_equation_residual(const JetTriple& jets, const EOperator& e,
                                 const PeriodicRealField& at);

// the phase change tilde(delta) = e^{-i w0 t} delta and the k-frame fields
struct TransformedState {
    PeriodicComplexField delta;    // tilde delta
    PeriodicComplexField delta_t;  // d_t tilde delta
    PeriodicComplexField m1;       // e^{-i w0 t} n1
    PeriodicComplexField m2;       // e^{-i w0 t} (n2 - i w0 n1)
    PeriodicComplexField chi;      // tilde delta o k^{-1}
    PeriodicComplexField v;        // (d_t tilde delta) o k^{-1}
    std::optional<Diffeo> k;
    double omega0 = 0.0;
    double t = 0.0;
};

TransformedState tilde_transform(const LagrangianJet& j,
                                 const PeriodicComplexField& delta_,
                                 const PeriodicComplexField& delta_t_,
                                 const PeriodicComplexField& n1,
                                 const PeriodicComplexField& n2);

// compose every field with k^{-1} (spectral interpolation)
TransformedState k_frame(const TransformedState& ts, const Diffeo& k);

// residuals of the identities satisfied by the coordinate change
struct KIdentityReport {
    double av_eps = 0.0;          // sup |AV(eps)|
    double kt_identity = 0.0;     // (I-H)k_t identity vs finite-difference k_t
    double ktt_identity = 0.0;    // (I-H)k_tt identity
    double re_av_kt = 0.0;        // Re AV(k_t) average identity
    double re_av_ktt = 0.0;       // Re AV(k_tt) average identity
    double solve_residual = 0.0;  // certified (I-H) log(conj z e^{ik}) residual
    double dt = 0.0;
};

KIdentityReport verify_k_identities(const TrackedState& ts, double dt);

// log-log least-squares slope fits over an eps sweep
struct ScalingPoint {
    double eps = 0.0;
    double delta_norm = 0.0;
    double pre_norm = 0.0;  // ||rhs_pre - pi delta||
    double n1_norm = 0.0;
    double n2_norm = 0.0;
};

struct ScalingResult {
    std::vector<ScalingPoint> points;
    double slope_delta = 0.0;
    double slope_pre = 0.0;
    double slope_n1 = 0.0;
    double slope_n2 = 0.0;
};

ScalingResult cubic_scaling_experiment(const InitialData& profile,
                                       const std::vector<double>& eps_list,
                                       std::size_t n, double fd_dt = 1e-4);

// least-squares slope of log(y) against log(x)
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace gravsurf
