#include "gravsurf/identities.hpp"

#include "gravsurf/errors.hpp"

#include <cmath>
#include <numbers>

namespace gravsurf {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

PeriodicRealField eps_t_field(const LagrangianJet& j) {
    // d_t(|z|^2 - 1) = 2 Re(conj(z) z_t)
    std::vector<double> out(j.z.size());
    for (std::size_t idx = 0; idx < out.size(); ++idx)
        out[idx] = 2.0 * (std::conj(j.z[idx]) * j.zt[idx]).real();
    return PeriodicRealField(std::move(out));
}

std::vector<Complex> table_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

std::vector<Complex> table_conj(const std::vector<Complex>& a) {
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::conj(a[i]);
    return out;
}

} // namespace

JetTriple jet_triple(const TrackedState& ts, double dt) {
    JetTriple out;
    out.dt = dt;
    out.center = lagrangian_jet(ts.state, ts.labels);
    const auto back = step_tracked(ts, -dt);
    const auto fwd = step_tracked(ts, dt);
    out.minus = lagrangian_jet(back.state, back.labels);
    out.plus = lagrangian_jet(fwd.state, fwd.labels);
    return out;
}

PeriodicComplexField delta(const LagrangianJet& j) {
    ClosedCurve c(j.z);
    const auto e = epsilon(c).complexified();
    return e - curve_hilbert(c, e);
}

PeriodicComplexField delta_t(const LagrangianJet& j) {
    ClosedCurve c(j.z);
    HilbertWorkspace ws(c);
    const auto et = eps_t_field(j).complexified();
    const auto u = pointwise_quotient(derivative(epsilon(c).complexified()), c.z_alpha());
    return et - ws.apply(et) - commutator(ws, j.zt, u);
}

N1Assembly n1_pre_e(const LagrangianJet& j) {
    ClosedCurve c(j.z);
    HilbertWorkspace ws(c);
    const auto& z = c.z();
    const auto zb = conj(z);
    const auto e = epsilon(c).complexified();
    const auto u = pointwise_quotient(derivative(e), c.z_alpha());

    auto ih = [&](const PeriodicComplexField& f) { return f - ws.apply(f); };
    auto ihc = [&](const PeriodicComplexField& f) { return f - ws.apply_conj(f); };

    auto rhs = (pi / 2.0) * ih(pointwise_product(z, ih(zb)) - pointwise_product(zb, ihc(z)));
    rhs += (pi / 2.0) * commutator(ws, ihc(z), u);
    rhs -= 2.0 * bracket_two(ws, j.zt, pointwise_product(j.zt, zb));
    rhs -= quad_kernel(c, j.zt, e);

    N1Assembly out;
    out.n1_pre = rhs - pi * ih(e);
    out.rhs_pre = std::move(rhs);
    return out;
}

PeriodicComplexField n1_with_e(const LagrangianJet& j, const EOperator& e) {
    ClosedCurve c(j.z);
    HilbertWorkspace ws(c);
    const auto zb = conj(c.z());
    const auto ef = epsilon(c).complexified();
    const auto u = pointwise_quotient(derivative(ef), c.z_alpha());

    const auto e_eps = e(ws, ef);
    const auto e_z = e(ws, c.z());

    auto n1 = (pi / 2.0) * (e_eps - ws.apply(e_eps));
    n1 += (pi / 2.0) * commutator(ws, e_z, u);
    n1 -= 2.0 * bracket_two(ws, j.zt, pointwise_product(j.zt, zb));
    n1 -= quad_kernel(c, j.zt, ef);
    return n1;
}

double residual_delta_identity(const LagrangianJet& j, const EOperator& e) {
    const auto pre = n1_pre_e(j);
    return sup_norm(pre.n1_pre - n1_with_e(j, e));
}

EOperator accepted_e_operator() { return reflection_e_operator(); }

PeriodicComplexField n2_with_e(const JetTriple& jets, const EOperator& e,
                               const PeriodicRealField& at) {
    const LagrangianJet& j = jets.center;
    ClosedCurve c(j.z);
    HilbertWorkspace ws(c);
    const std::size_t n = c.size();
    const auto& z = c.z();
    const auto& za = c.z_alpha();
    const auto zb = conj(z);
    const auto ztb = conj(j.zt);
    const auto ef = epsilon(c).complexified();
    const auto et = eps_t_field(j).complexified();
    const auto u = pointwise_quotient(derivative(ef), za);

    // u_t = eps_ta / z_a - eps_a z_ta / z_a^2
    const auto zta = derivative(j.zt);
    auto u_t = pointwise_quotient(derivative(et), za);
    u_t -= pointwise_quotient(pointwise_product(derivative(ef), zta),
                              pointwise_product(za, za));

    // E on the center jet; time derivative by central differences over the triple
    const auto e_eps = e(ws, ef);
    const auto e_z = e(ws, z);
    ClosedCurve cm(jets.minus.z), cp(jets.plus.z);
    HilbertWorkspace wsm(cm), wsp(cp);
    const Complex inv2dt(1.0 / (2.0 * jets.dt), 0.0);
    auto dt_e_eps =
        inv2dt * (e(wsp, epsilon(cp).complexified()) - e(wsm, epsilon(cm).complexified()));
    auto dt_e_z = inv2dt * (e(wsp, cp.z()) - e(wsm, cm.z()));

    auto ih = [&](const PeriodicComplexField& f) { return f - ws.apply(f); };
    const auto dlt = ih(ef);

    auto n2 = Complex(0.0, -1.0) * (at * derivative(dlt));
    n2 += (pi / 2.0) * (ih(dt_e_eps) -
                        commutator(ws, j.zt, pointwise_quotient(derivative(e_eps), za)));
    n2 += (pi / 2.0) * commutator(ws, dt_e_z, u);
    n2 += (pi / 2.0) * commutator(ws, e_z, u_t);
    n2 += (pi / 2.0) * pointwise_product(
                           e_z, commutator(ws, j.zt, pointwise_quotient(derivative(u), za)));
    n2 -= (pi / 2.0) *
          commutator(ws, j.zt,
                     pointwise_quotient(derivative(pointwise_product(e_z, u)), za));

    // pairwise difference-quotient tables for the two integral terms
    const auto P = difference_quotient_table(c, j.zt);
    const auto Pz_tt = difference_quotient_table(c, j.ztt);
    const auto P_t = [&] {  // d_t P = Dz(z_tt) - P^2
        auto out = table_mul(P, P);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = Pz_tt[i] - out[i];
        return out;
    }();

    // g = eps / conj(z); Dzbar tables obtained by conjugation
    const auto g = pointwise_quotient(ef, zb);
    auto g_t = pointwise_quotient(et, zb);
    g_t -= pointwise_quotient(pointwise_product(ef, conj(j.zt)), pointwise_product(zb, zb));
    const auto R = table_conj(difference_quotient_table(c, conj(g)));
    const auto Rzbt = table_conj(difference_quotient_table(c, j.zt));  // Dzbar(conj z_t)
    const auto R_t = [&] {
        auto dg = table_conj(difference_quotient_table(c, conj(g_t)));
        const auto corr = table_mul(R, Rzbt);
        for (std::size_t i = 0; i < dg.size(); ++i) dg[i] -= corr[i];
        return dg;
    }();

    const auto S = derivative(pointwise_product(j.zt, zb));
    const auto S_t = derivative(pointwise_product(j.ztt, zb) +
                                pointwise_product(j.zt, conj(j.zt)));
    const auto eb = derivative(ef);
    const auto etb = derivative(et);

    const double w = two_pi / static_cast<double>(n);
    std::vector<Complex> int7(n), int8(n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        const Complex* p = P.data() + jj * n;
        const Complex* pt = P_t.data() + jj * n;
        const Complex* r = R.data() + jj * n;
        const Complex* rt = R_t.data() + jj * n;
        Complex acc7{0.0, 0.0}, acc8{0.0, 0.0};
        for (std::size_t l = 0; l < n; ++l) {
            const Complex wgt = zb[jj] * zb[l];
            const Complex wgt_t = std::conj(j.zt[jj]) * zb[l] + zb[jj] * std::conj(j.zt[l]);
            acc7 += (pt[l] * r[l] * S[l] + p[l] * rt[l] * S[l] + p[l] * r[l] * S_t[l]) * wgt +
                    p[l] * r[l] * S[l] * wgt_t;
            acc8 += 2.0 * p[l] * pt[l] * eb[l] + p[l] * p[l] * etb[l];
        }
        int7[jj] = w * acc7;
        int8[jj] = w * acc8;
    }
    const Complex inv_pi_i = 1.0 / Complex(0.0, pi);
    n2 += (2.0 * inv_pi_i) * PeriodicComplexField(std::move(int7));
    n2 -= inv_pi_i * PeriodicComplexField(std::move(int8));
    return n2;
}

namespace {

struct FdParts {
    PeriodicComplexField second;  // (f+ - 2 f0 + f-)/dt^2
    PeriodicComplexField first;   // (f+ - f-)/(2 dt)
};

FdParts central_diff(const PeriodicComplexField& minus, const PeriodicComplexField& center,
                     const PeriodicComplexField& plus, double dt) {
    FdParts out{PeriodicComplexField(center.size()), PeriodicComplexField(center.size())};
    for (std::size_t j = 0; j < center.size(); ++j) {
        out.second[j] = (plus[j] - 2.0 * center[j] + minus[j]) / (dt * dt);
        out.first[j] = (plus[j] - minus[j]) / (2.0 * dt);
    }
    return out;
}

PeriodicComplexField lhs_operator(const LagrangianJet& j, const FdParts& fd,
                                  const PeriodicComplexField& center, double pi_coeff) {
    auto lhs = fd.second;
    lhs += Complex(0.0, 1.0) * (j.a * derivative(center));
    lhs -= Complex(0.0, 2.0 * j.omega0) * fd.first;
    if (pi_coeff != 0.0) lhs -= Complex(pi_coeff, 0.0) * center;
    return lhs;
}

} // namespace

double delta_equation_residual_pre(const JetTriple& jets) {
    const auto fd = central_diff(delta(jets.minus), delta(jets.center), delta(jets.plus),
                                 jets.dt);
    const auto lhs = lhs_operator(jets.center, fd, delta(jets.center), 0.0);
    return sup_norm(lhs - n1_pre_e(jets.center).rhs_pre);
}

double delta_equation_residual(const JetTriple& jets, const EOperator& e) {
    const auto d0 = delta(jets.center);
    const auto fd = central_diff(delta(jets.minus), d0, delta(jets.plus), jets.dt);
    const auto lhs = lhs_operator(jets.center, fd, d0, pi);
    return sup_norm(lhs - n1_with_e(jets.center, e));
}

double delta_t_equation_residual(const JetTriple& jets, const EOperator& e,
                                 const PeriodicRealField& at) {
    const auto d0 = delta_t(jets.center);
    const auto fd = central_diff(delta_t(jets.minus), d0, delta_t(jets.plus), jets.dt);
    const auto lhs = lhs_operator(jets.center, fd, d0, pi);
    return sup_norm(lhs - n2_with_e(jets, e, at));
}

TransformedState tilde_transform(const LagrangianJet& j,
                                 const PeriodicComplexField& delta_,
                                 const PeriodicComplexField& delta_t_,
                                 const PeriodicComplexField& n1,
                                 const PeriodicComplexField& n2) {
    const Complex phase = std::polar(1.0, -j.omega0 * j.t);
    TransformedState out;
    out.omega0 = j.omega0;
    out.t = j.t;
    out.delta = phase * delta_;
    out.delta_t = phase * (delta_t_ - Complex(0.0, j.omega0) * delta_);
    out.m1 = phase * n1;
    out.m2 = phase * (n2 - Complex(0.0, j.omega0) * n1);
    out.chi = out.delta;
    out.v = out.delta_t;
    return out;
}

TransformedState k_frame(const TransformedState& ts, const Diffeo& k) {
    const auto kinv = k.inverse();
    TransformedState out = ts;
    out.k = k;
    out.chi = compose(ts.delta, kinv);
    out.v = compose(ts.delta_t, kinv);
    out.m1 = compose(ts.m1, kinv);
    out.m2 = compose(ts.m2, kinv);
    return out;
}

KIdentityReport verify_k_identities(const TrackedState& ts, double dt) {
    KIdentityReport rep;
    rep.dt = dt;

    const auto jets = jet_triple(ts, dt);
    const LagrangianJet& j = jets.center;
    ClosedCurve c(j.z);
    HilbertWorkspace ws(c);
    const auto& za = c.z_alpha();
    const auto zb = conj(c.z());
    const auto ztb = conj(j.zt);
    const auto ef = epsilon(c).complexified();
    const auto et = eps_t_field(j).complexified();

    ClosedCurve cm(jets.minus.z), cp(jets.plus.z);
    const auto k0 = solve_k(c);
    const auto km = solve_k(cm);
    const auto kp = solve_k(cp);
    rep.solve_residual = k_residual(c, k0);

    const std::size_t n = c.size();
    std::vector<Complex> ktv(n), kttv(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        ktv[idx] = (kp.offset()[idx] - km.offset()[idx]) / (2.0 * dt);
        kttv[idx] =
            (kp.offset()[idx] - 2.0 * k0.offset()[idx] + km.offset()[idx]) / (dt * dt);
    }
    const PeriodicComplexField kt(std::move(ktv)), ktt(std::move(kttv));

    auto ih = [&](const PeriodicComplexField& f) { return f - ws.apply(f); };

    rep.av_eps = sup_norm(av_bracket(ws, ef));

    const auto L = log_conj_z_e_ik(c, k0);
    const auto La = derivative(L);

    {
        auto rhs =
            Complex(0.0, -1.0) * ih(pointwise_quotient(pointwise_product(ztb, ef), zb));
        rhs -= Complex(0.0, 1.0) * commutator(ws, j.zt, pointwise_quotient(La, za));
        rep.kt_identity = sup_norm(ih(kt) - rhs);
    }

    {
        const auto zttb = conj(j.ztt);
        const auto num = pointwise_product(zttb, ef) + pointwise_product(ztb, et);
        auto rhs = Complex(0.0, -1.0) * ih(pointwise_quotient(num, zb));
        rhs += Complex(0.0, 1.0) *
               ih(pointwise_quotient(pointwise_product(pointwise_product(ztb, ztb), ef),
                                     pointwise_product(zb, zb)));
        // L_t = conj(z_t)/conj(z) + i k_t
        const auto Lt = pointwise_quotient(ztb, zb) + Complex(0.0, 1.0) * kt;
        const auto bracket_arg = derivative(Lt + Complex(0.0, 1.0) * kt);
        rhs -= Complex(0.0, 1.0) * commutator(ws, j.zt, pointwise_quotient(bracket_arg, za));
        const auto transported =
            derivative(pointwise_quotient(pointwise_product(ztb, ef), zb));
        rhs += Complex(0.0, 1.0) *
               commutator(ws, j.zt, pointwise_quotient(transported, za));
        rhs -= Complex(0.0, 1.0) * commutator(ws, j.ztt, pointwise_quotient(La, za));
        const auto P = difference_quotient_table(c, j.zt);
        const double w = two_pi / static_cast<double>(n);
        std::vector<Complex> tail(n);
        for (std::size_t jj = 0; jj < n; ++jj) {
            const Complex* p = P.data() + jj * n;
            Complex acc{0.0, 0.0};
            for (std::size_t l = 0; l < n; ++l) acc += p[l] * p[l] * La[l];
            tail[jj] = -(w / pi) * acc;
        }
        rhs += PeriodicComplexField(std::move(tail));
        rep.ktt_identity = sup_norm(ih(ktt) - rhs);
    }

    // scalar averages evaluated per jet (for the time-differentiated terms)
    auto avg1 = [&](const LagrangianJet& jet) {
        ClosedCurve cc(jet.z);
        const auto e2 = epsilon(cc).complexified();
        const auto q = pointwise_quotient(pointwise_product(conj(jet.zt), e2),
                                          abs2(jet.z).complexified());
        return trapezoid_integral(pointwise_product(q, derivative(jet.z))).real() / two_pi;
    };
    auto avg2 = [&](const LagrangianJet& jet, const Diffeo& kk) {
        ClosedCurve cc(jet.z);
        const auto Lk = log_conj_z_e_ik(cc, kk);
        const auto ratio = pointwise_quotient(jet.zt, jet.z);
        return trapezoid_integral(pointwise_product(derivative(Lk), ratio)).real() / two_pi;
    };

    {
        const auto av_kt = av_bracket(ws, kt);
        const double rhs = avg1(j) + avg2(j, k0);
        double worst = 0.0;
        for (std::size_t idx = 0; idx < n; ++idx)
            worst = std::max(worst, std::abs(av_kt[idx].real() - rhs));
        rep.re_av_kt = worst;
    }

    {
        const auto av_ktt = av_bracket(ws, ktt);
        const auto dq = derivative(pointwise_quotient(j.zt, j.z));
        const double term1 = trapezoid_integral(pointwise_product(dq, kt)).imag() / two_pi;
        const double d_avg1 = (avg1(jets.plus) - avg1(jets.minus)) / (2.0 * dt);
        const double d_avg2 = (avg2(jets.plus, kp) - avg2(jets.minus, km)) / (2.0 * dt);
        const double rhs = term1 + d_avg1 + d_avg2;
        double worst = 0.0;
        for (std::size_t idx = 0; idx < n; ++idx)
            worst = std::max(worst, std::abs(av_ktt[idx].real() - rhs));
        rep.re_av_ktt = worst;
    }

    return rep;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mx;
        num += dx * (std::log(y[i]) - my);
        den += dx * dx;
    }
    return num / den;
}

ScalingResult cubic_scaling_experiment(const InitialData& profile,
                                       const std::vector<double>& eps_list,
                                       std::size_t n, double fd_dt) {
    ScalingResult out;
    const auto e = accepted_e_operator();
    for (double eps : eps_list) {
        InitialData data = profile;
        data.epsilon = eps;
        const auto ts = prepare_state(data, n);
        const auto jets = jet_triple(ts, fd_dt);
        const auto at = solve_at(jets.center);
        ScalingPoint p;
        p.eps = eps;
        p.delta_norm = sup_norm(delta(jets.center));
        p.pre_norm = sup_norm(n1_pre_e(jets.center).n1_pre);
        p.n1_norm = sup_norm(n1_with_e(jets.center, e));
        p.n2_norm = sup_norm(n2_with_e(jets, e, at));
        out.points.push_back(p);
    }
    std::vector<double> xs, d, pre, n1, n2;
    for (const auto& p : out.points) {
        xs.push_back(p.eps);
        d.push_back(p.delta_norm);
        pre.push_back(p.pre_norm);
        n1.push_back(p.n1_norm);
        n2.push_back(p.n2_norm);
    }
    out.slope_delta = fit_loglog_slope(xs, d);
    out.slope_pre = fit_loglog_slope(xs, pre);
    out.slope_n1 = fit_loglog_slope(xs, n1);
    out.slope_n2 = fit_loglog_slope(xs, n2);
    return out;
}

} // namespace gravsurf
