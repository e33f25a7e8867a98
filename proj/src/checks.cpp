#include "gravsurf/checks.hpp"

#include "gravsurf/errors.hpp"
#include "gravsurf/gravity.hpp"

#include <json.hpp>

#include <cmath>
#include <future>
#include <numbers>

namespace gravsurf {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

PeriodicComplexField circle_mode(std::size_t n, int m) {
    std::vector<Complex> f(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = two_pi * static_cast<double>(j) / static_cast<double>(n);
        f[j] = std::polar(1.0, static_cast<double>(m) * a);
    }
    return PeriodicComplexField(std::move(f));
}

// residual of the Lagrangian interface system on the rigidly rotating
// equilibrium z = e^{-i w0 t + i a}, a = pi - w0^2
double equilibrium_system_residual(std::size_t n, double omega0, double t) {
    auto z = circle_mode(n, 1);
    z *= std::polar(1.0, -omega0 * t);
    ClosedCurve c(z);
    const double a = pi - omega0 * omega0;
    auto zt = z;
    zt *= Complex(0.0, -omega0);
    auto ztt = z;
    ztt *= Complex(-omega0 * omega0, 0.0);
    auto resid = ztt + Complex(0.0, a) * derivative(z);
    resid += (pi / 2.0) * (z - conj_hilbert(c, z));
    double out = sup_norm(resid);
    // holomorphy constraint line
    auto q = conj(zt) - Complex(0.0, omega0) * conj(z);
    out = std::max(out, sup_norm(q - curve_hilbert(c, q)));
    return out;
}

} // namespace

std::vector<CheckResult> run_verification_suite(const SimConfig& config) {
    std::vector<CheckResult> out;
    const std::size_t n = config.N;
    const double w0 = config.omega0;
    const double eps = config.epsilon;

    auto add = [&](const std::string& name, double residual, double tol,
                   bool hard = true) {
        CheckResult r;
        r.name = name;
        r.resolution = n;
        r.epsilon = eps;
        r.omega0 = w0;
        r.residual = residual;
        r.tolerance = tol;
        r.pass = residual <= tol;
        r.hard = hard;
        out.push_back(r);
    };

    // spectral layer
    {
        auto f = circle_mode(n, 3) + Complex(0.5, 0.2) * circle_mode(n, -2);
        add("circle_hilbert_involution", sup_norm(circle_hilbert(circle_hilbert(f)) - f),
            1e-13);
        add("derivative_band_limited",
            sup_norm(derivative(circle_mode(n, 3)) - Complex(0.0, 3.0) * circle_mode(n, 3)),
            1e-12);
    }

    // equilibrium of the boundary system
    add("equilibrium_system_residual", equilibrium_system_residual(n, w0, 0.4), 1e-10);

    // prepared near-circle state at the configured (eps, w0)
    const auto ts = prepare_state(default_profile(eps, w0), n);
    const auto& s = ts.state;
    ClosedCurve cz(s.Z);
    HilbertWorkspace ws(cz);

    {
        double worst = 0.0;
        auto f = PeriodicComplexField(n, Complex(1.0, 0.0));
        for (int p = 0; p <= 4; ++p) {
            worst = std::max(worst, sup_norm(ws.apply(f) - f));
            f = pointwise_product(f, s.Z);
        }
        add("curve_hilbert_fixes_holomorphic", worst, 1e-9);
        auto g = circle_mode(n, 2) + Complex(0.3, -0.4) * circle_mode(n, -1);
        add("curve_hilbert_involution", sup_norm(ws.apply(ws.apply(g)) - g), 1e-8);
    }

    {
        const auto a1 = compute_A1(FluidState{circle_mode(n, 1), PeriodicComplexField(n), w0, 0.0});
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(a1[j] - (pi - w0 * w0)));
        add("a1_equilibrium_value", worst, 1e-10);
        const auto a1s = compute_A1(s);
        double mn = 1e300;
        for (std::size_t j = 0; j < n; ++j) mn = std::min(mn, a1s[j]);
        add("a1_positive_on_state", mn > 0.0 ? 0.0 : 1.0, 0.5);
    }

    {
        const auto d = diagnose(s);
        add("state_area_pi", std::abs(d.area - pi), 1e-6);
        add("state_constraint_defect", d.constraint_defect, 1e-8);
        add("state_conformal_defect", d.neg_mode_energy, 1e-8);
    }

    // equilibrium fixed point of the stepper
    {
        FluidState eq{circle_mode(n, 1), PeriodicComplexField(n), w0, 0.0};
        FluidState cur = eq;
        for (int it = 0; it < 100; ++it) cur = step(cur, 1e-2);
        add("equilibrium_fixed_point_T1", sup_norm(cur.Z - eq.Z) + sup_norm(cur.Zt),
            1e-10);
    }

    // transport coefficient leaves the parametrization conformal
    {
        const auto b = compute_b(s);
        const auto dz = s.Zt - b * derivative(s.Z);
        auto coeffs = spectrum(dz);
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (fft_mode(k, n) < 0) worst = std::max(worst, std::abs(coeffs[k]));
        add("b_conformal_residual", worst, 1e-10);
    }

    {
        const auto r1 = reproject(s);
        const auto r2 = reproject(r1);
        add("reproject_idempotent", sup_norm(r2.Z - r1.Z) + sup_norm(r2.Zt - r1.Zt), 1e-13);
    }

    // Lagrangian frame consistency: the rotating-frame system residual
    {
        const auto j = lagrangian_jet(s, ts.labels);
        ClosedCurve cj(j.z);
        auto resid = j.ztt + Complex(0.0, 1.0) * (j.a * derivative(j.z));
        resid += (pi / 2.0) * (j.z - conj_hilbert(cj, j.z));
        resid -= Complex(0.0, 2.0 * w0) * j.zt;
        resid -= Complex(w0 * w0, 0.0) * j.z;
        add("lagrangian_system_residual", sup_norm(resid), 1e-6);
        add("jet_constraint_defect", jet_constraint_defect(j), 1e-8);
    }

    // coordinate change machinery
    {
        const auto k = solve_k(cz);
        add("k_solve_residual", k_residual(cz, k), 1e-10);
        add("av_eps_vanishes", sup_norm(av_bracket(ws, epsilon(cz).complexified())), 1e-10);
        const auto krep = verify_k_identities(ts, 1e-3);
        add("k_t_identity_fd", krep.kt_identity, 2.0 * 1e-6 + 1e-8);
        add("k_tt_identity_fd", krep.ktt_identity, 20.0 * 1e-6 + 1e-7);
        add("re_av_kt_identity", krep.re_av_kt, 2.0 * 1e-6 + 1e-8);
        add("re_av_ktt_identity", krep.re_av_ktt, 20.0 * 1e-6 + 1e-7);
    }

    // E operator: accepted operator must satisfy the validation identity at
    // round-off; the candidate's residual and scaling slope are reported
    {
        const auto j = lagrangian_jet(s, ts.labels);
        add("e_accepted_validation", residual_delta_identity(j, accepted_e_operator()),
            1e-8);
        add("e_candidate_validation_residual",
            residual_delta_identity(j, candidate_e_operator()), 1e-8, false);
        std::vector<double> es, rs, ns;
        for (double ee : {eps, eps / 2.0, eps / 4.0}) {
            const auto tse = prepare_state(default_profile(ee, w0), n);
            const auto je = lagrangian_jet(tse.state, tse.labels);
            es.push_back(ee);
            rs.push_back(residual_delta_identity(je, candidate_e_operator()));
            ClosedCurve ce(je.z);
            HilbertWorkspace wse(ce);
            ns.push_back(sup_norm(accepted_e_operator()(wse, epsilon(ce).complexified())));
        }
        add("e_candidate_defect_scaling_slope", fit_loglog_slope(es, rs), 1e300, false);
        add("e_accepted_eps_scaling_slope_err", std::abs(fit_loglog_slope(es, ns) - 2.0),
            0.35);
    }

    // cubic structure at the configured omega0
    {
        const auto sc = cubic_scaling_experiment(default_profile(eps, w0),
                                                 {0.05, 0.02, 0.01, 0.005}, n);
        add("cubic_slope_pre_err", std::abs(sc.slope_pre - 3.0), 0.3);
        add("cubic_slope_n1_err", std::abs(sc.slope_n1 - 3.0), 0.3);
        // the default family is time-symmetric at t = 0 and its n2 cubic
        // coefficient cancels (measured slope ~ 4); the claim itself is
        // "no quadratic terms", so gate on slope >= 2.7 and measure the
        // generic cubic rate on a parity-broken profile
        add("default_family_n2_slope_floor", std::max(0.0, 2.7 - sc.slope_n2), 0.0);
        add("default_family_n2_slope", sc.slope_n2, 1e300, false);
        InitialData broken = default_profile(eps, w0);
        broken.g_modes = {{1, Complex(0.7, 0.7)}, {-2, Complex(0.3, 0.0)}};
        const auto scb = cubic_scaling_experiment(broken, {0.05, 0.02, 0.01, 0.005}, n);
        add("cubic_slope_n2_err", std::abs(scb.slope_n2 - 3.0), 0.3);
        add("control_slope_delta_err", std::abs(sc.slope_delta - 1.0), 0.1);
    }

    // short trajectory identity at the configured parameters
    {
        auto cur = ts;
        for (int it = 0; it < 50; ++it) cur = step_tracked(cur, 1e-3);
        const auto jets = jet_triple(cur, 1e-3);
        add("delta_equation_residual_pre", delta_equation_residual_pre(jets), 1e-6);
        add("delta_equation_residual", delta_equation_residual(jets, accepted_e_operator()),
            1e-6);
        const auto at = solve_at(jets.center);
        add("delta_t_equation_residual",
            delta_t_equation_residual(jets, accepted_e_operator(), at), 1e-5);
        // tilde recombination: the phase-transformed equation residual can
        // only differ by round-off (pure algebra)
        const auto d0 = delta(jets.center);
        const auto dt0 = delta_t(jets.center);
        const auto n1 = n1_with_e(jets.center, accepted_e_operator());
        const auto n2 = n2_with_e(jets, accepted_e_operator(), at);
        const auto tr = tilde_transform(jets.center, d0, dt0, n1, n2);
        add("tilde_norm_preserved", std::abs(sup_norm(tr.delta) - sup_norm(d0)), 1e-12);
        const auto k = solve_k(ClosedCurve(jets.center.z));
        const auto kf = k_frame(tr, k);
        add("k_frame_interpolation_fidelity", sup_norm(compose(kf.chi, k) - tr.delta),
            1e-10);
        // grid sup norms sample the same continuum function at moved points
        add("k_frame_norm_preserved", std::abs(sup_norm(kf.chi) - sup_norm(tr.delta)),
            1e-6);
    }

    // gravity reduction at moderate resolution
    if (n <= 256) {
        std::vector<Complex> zv(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double a = two_pi * static_cast<double>(j) / static_cast<double>(n);
            zv[j] = std::polar(1.0, a) + eps * std::polar(1.0, -a);
        }
        const auto c = normalized_to_area_pi(ClosedCurve(PeriodicComplexField(zv)));
        add("gravity_reduction_check", reduction_check(c), 1e-5);
    }

    return out;
}

std::string checks_to_json(const std::vector<CheckResult>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json j;
        j["check_name"] = c.name;
        j["resolution"] = c.resolution;
        j["epsilon"] = c.epsilon;
        j["omega0"] = c.omega0;
        j["residual"] = c.residual;
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        j["hard"] = c.hard;
        arr.push_back(j);
    }
    return arr.dump(2);
}

bool all_hard_checks_pass(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (c.hard && !c.pass) return false;
    return true;
}

SimulationRun simulate_run(const SimConfig& config) {
    SimulationRun run;
    FluidState s;
    if (!config.checkpoint.empty()) {
        s = load_checkpoint(config.checkpoint);
    } else {
        s = prepare_state(config_initial_data(config), config.N).state;
    }
    const double t_end = s.t + config.t_end;
    const std::size_t steps_per_record =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(config.out_interval / config.dt)));

    auto record = [&](const FluidState& state, double proj) {
        const auto d = diagnose(state);
        run.records.push_back({state.t, d.area, d.min_a1, d.eps_sup, d.constraint_defect, proj});
    };

    record(s, 0.0);
    std::size_t since_record = 0;
    try {
        while (s.t < t_end - 0.5 * config.dt) {
            const auto raw = rk4_step(s, config.dt);
            const auto projected = reproject(raw);
            double proj = sup_norm(projected.Z - raw.Z) + sup_norm(projected.Zt - raw.Zt);
            s = projected;
            if (++since_record >= steps_per_record) {
                validate_state(s);
                record(s, proj);
                since_record = 0;
            }
        }
    } catch (const std::exception& e) {
        run.aborted = true;
        run.abort_reason = e.what();
    }
    run.final_state = s;
    return run;
}

namespace {

LifespanPoint lifespan_single(const SimConfig& config, double eps) {
    LifespanPoint p;
    p.eps = eps;
    if (!(eps > 0.0)) {
        p.failed = true;
        p.note = "epsilon must be positive (no finite doubling time at 0)";
        return p;
    }
    SimConfig c = config;
    c.epsilon = eps;
    const double horizon = std::min(config.lifespan_cap / (eps * eps), config.t_end);
    try {
        FluidState s = prepare_state(config_initial_data(c), c.N).state;
        const double eps0 = diagnose(s).eps_sup;
        while (s.t < horizon) {
            s = step(s, c.dt);
            const auto d = diagnose(s);
            if (d.eps_sup > 2.0 * eps0) {
                p.t_star = s.t;
                p.note = "doubling";
                return p;
            }
            if (!(std::abs(d.area - pi) <= 1e-6) || !(d.constraint_defect <= 1e-6) ||
                !(d.min_a1 > 0.0)) {
                p.t_star = s.t;
                p.note = "invariant stop";
                return p;
            }
        }
        p.t_star = horizon;
        p.censored = true;
        p.note = "capped";
    } catch (const std::exception& e) {
        p.failed = true;
        p.note = e.what();
    }
    return p;
}

} // namespace

LifespanResult lifespan_experiment(const SimConfig& config, unsigned threads) {
    LifespanResult out;
    std::vector<double> eps_list = config.eps_list;
    if (eps_list.empty()) eps_list = {0.2, 0.1, 0.05};
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw ConfigError("eps_list must be strictly decreasing");

    out.points.resize(eps_list.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < eps_list.size(); ++i)
            out.points[i] = lifespan_single(config, eps_list[i]);
    } else {
        std::vector<std::future<LifespanPoint>> futs;
        for (double e : eps_list)
            futs.push_back(std::async(std::launch::async, lifespan_single, config, e));
        for (std::size_t i = 0; i < futs.size(); ++i) out.points[i] = futs[i].get();
    }

    // fitted exponent over the non-failed points, T* ~ eps^{-p}
    std::vector<double> xs, ys;
    for (const auto& p : out.points) {
        if (!p.failed && p.t_star > 0.0) {
            xs.push_back(p.eps);
            ys.push_back(p.t_star);
        }
    }
    if (xs.size() >= 2) {
        out.fitted_exponent = -fit_loglog_slope(xs, ys);
        // residual-based standard error of the slope
        if (xs.size() > 2) {
            double mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                mx += std::log(xs[i]);
                my += std::log(ys[i]);
            }
            mx /= static_cast<double>(xs.size());
            my /= static_cast<double>(xs.size());
            double sxx = 0.0, ss = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double dx = std::log(xs[i]) - mx;
                const double fit = my - out.fitted_exponent * dx;
                const double r = std::log(ys[i]) - fit;
                sxx += dx * dx;
                ss += r * r;
            }
            out.exponent_stderr =
                std::sqrt(ss / (static_cast<double>(xs.size()) - 2.0) / sxx);
        }
    }

    out.monotone = true;
    out.all_censored = true;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        if (!out.points[i].censored) out.all_censored = false;
        if (i > 0 && (out.points[i].failed || out.points[i - 1].failed ||
                      !(out.points[i].t_star > out.points[i - 1].t_star)))
            out.monotone = false;
    }
    return out;
}

} // namespace gravsurf
