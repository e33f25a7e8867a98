// Command-line front end: verify (identity/property suite), simulate
// (perturbed-equilibrium evolution with diagnostics), lifespan (doubling-time
// scaling experiment), gravity-check (field reduction cross-check), k-solve
// (coordinate change for a curve from JSON samples).
#include "gravsurf/checks.hpp"
#include "gravsurf/errors.hpp"
#include "gravsurf/gravity.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

using namespace gravsurf;

namespace {

SimConfig resolve_config(const std::string& config_path, int resolution) {
    SimConfig c;
    if (!config_path.empty()) c = load_config(config_path);
    if (resolution > 0) {
        if (resolution < 32 || resolution % 2 != 0)
            throw ConfigError("--resolution must be even and at least 32");
        c.N = static_cast<std::size_t>(resolution);
    }
    return c;
}

std::filesystem::path out_file(const std::string& out_dir, const std::string& name) {
    std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::filesystem::create_directories(dir);
    return dir / name;
}

int cmd_verify(const SimConfig& config, const std::string& out_dir) {
    const auto checks = run_verification_suite(config);
    const auto path = out_file(out_dir, "verify_report.json");
    std::ofstream(path) << checks_to_json(checks) << "\n";
    int failed = 0;
    for (const auto& c : checks) {
        std::printf("%-40s residual=%-12.3e tol=%-9.1e %s%s\n", c.name.c_str(), c.residual,
                    c.tolerance, c.pass ? "pass" : "FAIL",
                    c.hard ? "" : " (informational)");
        if (c.hard && !c.pass) ++failed;
    }
    std::printf("report: %s\n", path.string().c_str());
    return failed == 0 ? 0 : 1;
}

int cmd_simulate(const SimConfig& config, const std::string& out_dir) {
    const auto run = simulate_run(config);
    write_diagnostics_csv(out_file(out_dir, "diagnostics.csv").string(), run.records);
    save_checkpoint(out_file(out_dir, "checkpoint.json").string(), run.final_state);
    if (run.aborted) {
        std::printf("run aborted at t=%.6f: %s (partial output written)\n",
                    run.final_state.t, run.abort_reason.c_str());
        return 2;
    }
    const auto& last = run.records.back();
    std::printf("t=%.3f area_drift=%.3e min_A1=%.3e eps_sup=%.3e defect=%.3e\n", last.t,
                std::abs(last.area - std::numbers::pi), last.min_a1, last.eps_sup,
                last.constraint_defect);
    return 0;
}

int cmd_lifespan(const SimConfig& config, const std::string& out_dir, unsigned threads) {
    const auto res = lifespan_experiment(config, threads);
    nlohmann::json j;
    j["points"] = nlohmann::json::array();
    for (const auto& p : res.points) {
        j["points"].push_back({{"eps", p.eps},
                               {"t_star", p.t_star},
                               {"censored", p.censored},
                               {"failed", p.failed},
                               {"note", p.note}});
        std::printf("eps=%-8.4f T*=%-12.4f %s\n", p.eps, p.t_star, p.note.c_str());
    }
    j["fitted_exponent"] = res.fitted_exponent;
    j["exponent_stderr"] = res.exponent_stderr;
    j["monotone"] = res.monotone;
    j["all_censored"] = res.all_censored;
    std::ofstream(out_file(out_dir, "lifespan.json")) << j.dump(2) << "\n";
    std::printf("fitted exponent p=%.3f (stderr %.3f), monotone=%s%s\n",
                res.fitted_exponent, res.exponent_stderr, res.monotone ? "yes" : "no",
                res.all_censored ? " (all runs censored: T* values are lower bounds)" : "");
    return res.monotone ? 0 : 1;
}

int cmd_gravity_check(const SimConfig& config, const std::string& out_dir) {
    const std::size_t n = config.N;
    std::vector<Complex> zv(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a =
            2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        zv[j] = std::polar(1.0, a) + config.epsilon * std::polar(1.0, -a);
    }
    const auto c = normalized_to_area_pi(ClosedCurve(PeriodicComplexField(zv)));
    const double rc = reduction_check(c);

    std::vector<Complex> dv(n);
    for (std::size_t j = 0; j < n; ++j)
        dv[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                    static_cast<double>(n));
    ClosedCurve disc{PeriodicComplexField(std::move(dv))};
    std::vector<Complex> pts = {{0.25, 0.1}, {-0.4, 0.3}, {0.0, -0.55}, {1.7, 0.2}};
    const auto field = grad_phi_oracle(disc, pts);
    double disc_err = 0.0;
    for (std::size_t p = 0; p < pts.size(); ++p) {
        const Complex x = pts[p];
        const Complex expect = (std::abs(x) < 1.0) ? std::numbers::pi * x
                                                   : std::numbers::pi * x / std::norm(x);
        disc_err = std::max(disc_err, std::abs(field.values[p] - expect));
    }
    nlohmann::json j;
    j["reduction_check"] = rc;
    j["disc_field_error"] = disc_err;
    std::ofstream(out_file(out_dir, "gravity_check.json")) << j.dump(2) << "\n";
    std::printf("reduction_check=%.3e disc_field_error=%.3e\n", rc, disc_err);
    return (rc <= 1e-5 && disc_err <= 1e-6) ? 0 : 1;
}

int cmd_k_solve(const std::string& curve_path, const std::string& out_dir) {
    const auto c = load_curve(curve_path);
    const auto k = solve_k(c);
    nlohmann::json j;
    j["residual"] = k_residual(c, k);
    j["offset"] = nlohmann::json::array();
    for (std::size_t i = 0; i < k.size(); ++i) j["offset"].push_back(k.offset()[i]);
    std::ofstream(out_file(out_dir, "k_solution.json")) << j.dump(2) << "\n";
    std::printf("k residual=%.3e sup|k - alpha|=%.3e\n", k_residual(c, k),
                sup_norm(k.offset()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral boundary-integral solver for the self-gravitating "
                 "free-boundary interface with constant vorticity"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir, curve_path;
    int resolution = 0;
    unsigned threads = 1;
    app.add_option("--config", config_path, "config JSON path")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads for independent runs");
    app.add_option("--resolution", resolution, "override grid size N");

    auto* verify = app.add_subcommand("verify", "run the identity/property suite");
    auto* simulate = app.add_subcommand("simulate", "evolve the perturbed equilibrium");
    auto* lifespan = app.add_subcommand("lifespan", "doubling-time scaling experiment");
    auto* gravity = app.add_subcommand("gravity-check", "field vs boundary reduction");
    auto* ksolve = app.add_subcommand("k-solve", "solve the coordinate change for a curve");
    ksolve->add_option("curve", curve_path, "curve JSON ([ [re, im], ... ])")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        const SimConfig config = resolve_config(config_path, resolution);
        if (verify->parsed()) return cmd_verify(config, out_dir);
        if (simulate->parsed()) return cmd_simulate(config, out_dir);
        if (lifespan->parsed()) return cmd_lifespan(config, out_dir, threads);
        if (gravity->parsed()) return cmd_gravity_check(config, out_dir);
        if (ksolve->parsed()) return cmd_k_solve(curve_path, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
