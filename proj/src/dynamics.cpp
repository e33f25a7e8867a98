#include "gravsurf/dynamics.hpp"

#include "gravsurf/errors.hpp"

#include <cmath>
#include <numbers>

namespace gravsurf {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

void require_vorticity(double omega0) {
    if (!(omega0 * omega0 < pi))
        throw InvariantViolation("omega0^2 must be below pi (Taylor sign)");
}

} // namespace

StateDiagnostics diagnose(const FluidState& s) {
    StateDiagnostics d;
    ClosedCurve c(s.Z);
    d.area = area(c);
    d.eps_sup = sup_norm(epsilon(c));
    d.neg_mode_energy = negative_mode_energy(s.Z);
    const auto zb = conj(s.Zt);
    d.constraint_defect = sup_norm(zb - circle_hilbert(zb));
    d.min_a1 = 1e300;
    const auto a1 = csc_form(s.Zt) + (pi - s.omega0 * s.omega0) * csc_form(s.Z);
    for (std::size_t j = 0; j < a1.size(); ++j) d.min_a1 = std::min(d.min_a1, a1[j]);
    return d;
}

void validate_state(const FluidState& s, double area_tol, double constraint_tol,
                    double conformal_tol) {
    require_vorticity(s.omega0);
    if (!all_finite(s.Z) || !all_finite(s.Zt))
        throw InvariantViolation("state contains non-finite samples");
    const auto d = diagnose(s);
    if (!(std::abs(d.area - pi) <= area_tol))
        throw InvariantViolation("enclosed area drifted from pi by " +
                                 std::to_string(d.area - pi));
    if (!(d.constraint_defect <= constraint_tol))
        throw InvariantViolation("holomorphy constraint defect " +
                                 std::to_string(d.constraint_defect));
    if (!(d.neg_mode_energy <= conformal_tol))
        throw InvariantViolation("conformal parametrization defect " +
                                 std::to_string(d.neg_mode_energy));
    if (!(d.min_a1 > 0.0)) throw TaylorSignViolation("min A1 is not positive");
}

PeriodicRealField compute_A1(const FluidState& s) {
    require_vorticity(s.omega0);
    auto a1 = csc_form(s.Zt) + (pi - s.omega0 * s.omega0) * csc_form(s.Z);
    for (std::size_t j = 0; j < a1.size(); ++j)
        if (!(a1[j] > 0.0)) throw TaylorSignViolation("A1 not positive on the grid");
    return a1;
}

PeriodicRealField compute_script_A(const FluidState& s) {
    const auto a1 = compute_A1(s);
    const auto za = derivative(s.Z);
    std::vector<double> out(a1.size());
    for (std::size_t j = 0; j < a1.size(); ++j) {
        const double n2 = std::norm(za[j]);
        if (n2 < 1e-16) throw DegenerateParametrization("|Z_alpha| collapsed");
        out[j] = a1[j] / n2;
    }
    return PeriodicRealField(std::move(out));
}

PeriodicComplexField accel(const FluidState& s) {
    const auto script_a = compute_script_A(s);
    const auto za = derivative(s.Z);
    const auto g = g_forcing(s.Z, s.Zt, s.omega0);
    auto out = conj(g);
    out -= Complex(0.0, 1.0) * (script_a * za);
    out -= (pi - s.omega0 * s.omega0) * s.Z;
    return out;
}

PeriodicRealField compute_b(const FluidState& s) {
    const auto za = derivative(s.Z);
    for (std::size_t j = 0; j < za.size(); ++j)
        if (std::abs(za[j]) < 1e-12)
            throw DegenerateParametrization("|Z_alpha| collapsed in compute_b");
    const auto u = pointwise_quotient(s.Zt, za);
    auto coeffs = fft_forward(u.samples());
    const std::size_t n = coeffs.size();
    std::vector<Complex> b(n, Complex(0.0, 0.0));
    b[0] = Complex(coeffs[0].real(), 0.0);
    for (std::size_t k = n / 2 + 1; k < n; ++k) b[k] = coeffs[k];        // modes <= -1
    for (std::size_t k = 1; k < n / 2; ++k) b[k] = std::conj(b[n - k]);  // reality
    return real_part(PeriodicComplexField(fft_inverse(b)));
}

FluidState reproject(const FluidState& s) {
    FluidState out = s;
    out.Z = project_nonnegative_modes(s.Z);
    const double scale = std::sqrt(pi / area(ClosedCurve(out.Z)));
    out.Z *= Complex(scale, 0.0);
    out.Zt = conj(project_nonnegative_modes(conj(s.Zt)));
    return out;
}

namespace {

struct Rhs {
    PeriodicComplexField dZ, dZt;
    PeriodicRealField b;
};

Rhs state_rhs(const FluidState& s) {
    Rhs r;
    r.b = compute_b(s);
    const auto za = derivative(s.Z);
    const auto zta = derivative(s.Zt);
    r.dZ = s.Zt - r.b * za;
    r.dZt = accel(s) - r.b * zta;
    return r;
}

FluidState advanced(const FluidState& s, const Rhs& k, double h) {
    FluidState out = s;
    out.t = s.t + h;
    for (std::size_t j = 0; j < s.Z.size(); ++j) {
        out.Z[j] += h * k.dZ[j];
        out.Zt[j] += h * k.dZt[j];
    }
    return out;
}

// db/dt for the label ODE: b interpolated at the mapped grid points
PeriodicRealField labels_rhs(const Rhs& r, const PeriodicRealField& label_offset) {
    const auto bc = fft_forward(r.b.complexified().samples());
    const std::size_t n = label_offset.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a =
            two_pi * static_cast<double>(j) / static_cast<double>(n) + label_offset[j];
        out[j] = eval_interpolant_real(bc, a);
    }
    return PeriodicRealField(std::move(out));
}

} // namespace

FluidState rk4_step(const FluidState& s, double dt) {
    if (dt == 0.0) throw std::invalid_argument("dt must be nonzero");
    const Rhs k1 = state_rhs(s);
    const Rhs k2 = state_rhs(advanced(s, k1, dt / 2.0));
    const Rhs k3 = state_rhs(advanced(s, k2, dt / 2.0));
    const Rhs k4 = state_rhs(advanced(s, k3, dt));
    FluidState out = s;
    out.t = s.t + dt;
    for (std::size_t j = 0; j < s.Z.size(); ++j) {
        out.Z[j] += dt / 6.0 * (k1.dZ[j] + 2.0 * k2.dZ[j] + 2.0 * k3.dZ[j] + k4.dZ[j]);
        out.Zt[j] += dt / 6.0 * (k1.dZt[j] + 2.0 * k2.dZt[j] + 2.0 * k3.dZt[j] + k4.dZt[j]);
    }
    return out;
}

FluidState step(const FluidState& s, double dt) {
    return reproject(rk4_step(s, dt));
}

TrackedState step_tracked(const TrackedState& ts, double dt) {
    const FluidState& s = ts.state;
    const PeriodicRealField& u0 = ts.labels.offset();

    const Rhs k1 = state_rhs(s);
    const auto l1 = labels_rhs(k1, u0);
    const Rhs k2 = state_rhs(advanced(s, k1, dt / 2.0));
    const auto l2 = labels_rhs(k2, u0 + (dt / 2.0) * l1);
    const Rhs k3 = state_rhs(advanced(s, k2, dt / 2.0));
    const auto l3 = labels_rhs(k3, u0 + (dt / 2.0) * l2);
    const Rhs k4 = state_rhs(advanced(s, k3, dt));
    const auto l4 = labels_rhs(k4, u0 + dt * l3);

    FluidState out = s;
    out.t = s.t + dt;
    PeriodicRealField u = u0;
    for (std::size_t j = 0; j < s.Z.size(); ++j) {
        out.Z[j] += dt / 6.0 * (k1.dZ[j] + 2.0 * k2.dZ[j] + 2.0 * k3.dZ[j] + k4.dZ[j]);
        out.Zt[j] += dt / 6.0 * (k1.dZt[j] + 2.0 * k2.dZt[j] + 2.0 * k3.dZt[j] + k4.dZt[j]);
        u[j] += dt / 6.0 * (l1[j] + 2.0 * l2[j] + 2.0 * l3[j] + l4[j]);
    }
    return TrackedState{reproject(out), Diffeo(u)};
}

LagrangianJet lagrangian_jet(const FluidState& s) {
    return lagrangian_jet(s, Diffeo::identity(s.Z.size()));
}

LagrangianJet lagrangian_jet(const FluidState& s, const Diffeo& labels) {
    LagrangianJet j;
    j.omega0 = s.omega0;
    j.t = s.t;
    j.z = compose(s.Z, labels);
    j.zt = compose(s.Zt, labels);
    j.ztt = compose(accel(s), labels);
    const auto script_a = compute_script_A(s);
    const auto ha = PeriodicRealField(labels.size(), 1.0) + derivative(labels.offset());
    j.a = pointwise_quotient(compose(script_a, labels), ha);
    for (std::size_t idx = 0; idx < j.a.size(); ++idx)
        if (!(j.a[idx] > 0.0))
            throw TaylorSignViolation("Lagrangian coefficient a not positive");
    return j;
}

double jet_constraint_defect(const LagrangianJet& j) {
    ClosedCurve c(j.z);
    const auto zb = conj(j.zt);
    return sup_norm(zb - curve_hilbert(c, zb));
}

PeriodicRealField solve_at(const LagrangianJet& j,
                           const PeriodicComplexField& ga,
                           const PeriodicComplexField& gh,
                           double phase_omega) {
    ClosedCurve c(j.z);
    HilbertWorkspace ws(c);
    const auto& za = c.z_alpha();
    const auto zb = conj(c.z());
    const auto ztb = conj(j.zt);
    const auto zttb = conj(j.ztt);
    const auto ztb_a = derivative(ztb);
    const auto q = pointwise_quotient(ztb_a, za);
    // d_t(zbar_ta / z_a)
    auto q_t = pointwise_quotient(derivative(zttb), za);
    q_t -= pointwise_quotient(pointwise_product(ztb_a, derivative(j.zt)),
                              pointwise_product(za, za));

    auto ih = [&](const PeriodicComplexField& f) { return f - ws.apply(f); };

    // (I-H) zbar_ttt by the transport expansion of d_t^2 applied to the
    // holomorphy constraint H zbar_t = zbar_t (instantaneous in the jet)
    auto sum = commutator(ws, j.zt, pointwise_quotient(derivative(zttb), za));
    sum += commutator(ws, j.ztt, q);
    sum += commutator(ws, j.zt, q_t);
    sum += pointwise_product(j.zt,
                             commutator(ws, j.zt, pointwise_quotient(derivative(q), za)));
    sum -= commutator(ws, j.zt,
                      pointwise_quotient(derivative(pointwise_product(j.zt, q)), za));
    // remaining projections of the time-differentiated momentum equation;
    // note (I-H) d_a zbar_t does not vanish on non-conformal parametrizations,
    // so (I-H)(a zbar_ta) is kept whole rather than rewritten as [a,H]zbar_ta
    sum -= Complex(0.0, 1.0) * ih(pointwise_product(j.a.complexified(), ztb_a));
    sum -= (pi / 2.0) * ih(commutator(ws, j.zt, pointwise_quotient(derivative(zb), za)));
    sum += Complex(0.0, 2.0 * j.omega0) * commutator(ws, j.zt, q);
    // optional source terms, added verbatim when supplied
    if (sup_norm(ga) > 0.0) {
        auto ga_phase = ga;
        ga_phase *= std::polar(1.0, phase_omega * j.t);
        sum -= commutator(ws, ga_phase, q);
    }
    if (sup_norm(gh) > 0.0) {
        const auto q_gh = pointwise_quotient(derivative(gh), za);
        sum += (pi / 2.0) * commutator(ws, j.zt, q_gh);
    }

    // The adjoint pairing here is the arc-length-weighted one; with the
    // unweighted K* it reads (I + K*)(a_t |z_a|^2) = Re[-i z_a {...}].
    std::vector<double> rhs(sum.size());
    for (std::size_t idx = 0; idx < sum.size(); ++idx) {
        const Complex unit = Complex(0.0, -1.0) * za[idx];
        rhs[idx] = (unit * sum[idx]).real();
    }
    const auto x = k_star_solve(c, PeriodicRealField(std::move(rhs)));
    std::vector<double> at(x.size());
    for (std::size_t idx = 0; idx < x.size(); ++idx)
        at[idx] = x[idx] / std::norm(za[idx]);
    return PeriodicRealField(std::move(at));
}

PeriodicRealField solve_at(const LagrangianJet& j) {
    const PeriodicComplexField zero(j.z.size());
    return solve_at(j, zero, zero);
}

InitialData default_profile(double epsilon, double omega0) {
    InitialData d;
    d.epsilon = epsilon;
    d.omega0 = omega0;
    d.f_modes = {{2, Complex(1.0, 0.0)}, {-1, Complex(0.5, 0.0)}};
    d.g_modes = {{1, Complex(0.0, 1.0)}};
    return d;
}

TrackedState prepare_state(const InitialData& data, std::size_t n) {
    require_vorticity(data.omega0);
    if (!(data.epsilon >= 0.0)) throw InvariantViolation("epsilon must be nonnegative");

    std::vector<Complex> z0(n), z1(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = two_pi * static_cast<double>(j) / static_cast<double>(n);
        Complex f{0.0, 0.0}, g{0.0, 0.0};
        for (const auto& m : data.f_modes) f += m.coeff * std::polar(1.0, m.mode * a);
        for (const auto& m : data.g_modes) g += m.coeff * std::polar(1.0, m.mode * a);
        const Complex e1 = std::polar(1.0, a);
        z0[j] = e1 + data.epsilon * f;
        z1[j] = data.v0 - Complex(0.0, data.omega0) * e1 + data.epsilon * g;
    }

    PeriodicComplexField zf(std::move(z0)), z1f(std::move(z1));
    const double scale = std::sqrt(pi / area(ClosedCurve(zf)));
    zf *= Complex(scale, 0.0);
    z1f *= Complex(scale, 0.0);
    ClosedCurve c0(zf);

    // rotating frame at t = 0; the holomorphy constraint is enforced by the
    // Plemelj projection of conj(zt)
    auto zt = z1f + Complex(0.0, data.omega0) * zf;
    HilbertWorkspace ws(c0);
    auto q = conj(zt);
    q = 0.5 * (q + ws.apply(q));
    zt = conj(q);

    const auto h = conformal_parametrization(c0);
    const auto hinv = h.inverse();
    FluidState s;
    s.omega0 = data.omega0;
    s.t = 0.0;
    s.Z = compose(zf, hinv);
    s.Zt = compose(zt, hinv);
    s = reproject(s);
    validate_state(s, 1e-6, 1e-8, 1e-8);
    return TrackedState{std::move(s), h};
}

} // namespace gravsurf
