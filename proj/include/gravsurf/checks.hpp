// checks.hpp
// The runnable verification suite (named checks with residuals and pinned
// tolerances, serialized as a JSON report), the simulation driver with
// per-interval diagnostics, and the lifespan-scaling experiment.
#pragma once

#include "gravsurf/identities.hpp"
#include "gravsurf/io.hpp"

#include <functional>
#include <string>

namespace gravsurf {

struct CheckResult {
    std::string name;
    std::size_t resolution = 0;
    double epsilon = 0.0;
    double omega0 = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool hard = true;  // informational entries do not gate the exit status
};

std::vector<CheckResult> run_verification_suite(const SimConfig& config);
std::string checks_to_json(const std::vector<CheckResult>& checks);
bool all_hard_checks_pass(const std::vector<CheckResult>& checks);

// time evolution with diagnostics sampled every out_interval; stops on
// invariant violation (partial records kept, flag set)
struct SimulationRun {
    std::vector<DiagnosticsRecord> records;
    FluidState final_state;
    bool aborted = false;
    std::string abort_reason;
};

SimulationRun simulate_run(const SimConfig& config);

// lifespan experiment: evolve per epsilon until sup|eps(t)| doubles, an
// invariant fails, or the capped horizon min(lifespan_cap/eps^2, t_end) runs
// out (censored = true)
struct LifespanPoint {
    double eps = 0.0;
    double t_star = 0.0;
    bool censored = false;
    bool failed = false;
    std::string note;
};

struct LifespanResult {
    std::vector<LifespanPoint> points;
    double fitted_exponent = 0.0;  // T* ~ eps^{-p}
    double exponent_stderr = 0.0;
    bool monotone = false;
    bool all_censored = false;  // every T* is a lower bound (cap reached)
};

LifespanResult lifespan_experiment(const SimConfig& config, unsigned threads = 1);

} // namespace gravsurf
