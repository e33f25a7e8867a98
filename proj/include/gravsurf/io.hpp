// io.hpp
// File formats: run configuration (JSON), interface checkpoints (JSON,
// round-trip exact at shortest-round-trip double precision), curve samples
// (JSON array of [re, im]), diagnostics time series (CSV with a versioned
// header comment).
#pragma once

#include "gravsurf/dynamics.hpp"

#include <cstdint>
#include <string>

namespace gravsurf {

struct SimConfig {
    std::size_t N = 128;
    double omega0 = 0.0;
    double epsilon = 0.05;
    std::vector<PerturbationMode> profile_f;  // empty -> default profile
    std::vector<PerturbationMode> profile_g;
    Complex v0{0.0, 0.0};
    double dt = 1e-3;
    double t_end = 10.0;
    std::uint64_t seed = 0;
    std::string output_path = "out";
    double out_interval = 0.1;
    std::string checkpoint;                   // resume from this state when set
    std::vector<double> eps_list;             // lifespan sweep
    double lifespan_cap = 4.0;                // per-eps horizon cap / eps^2
};

// ConfigError carries the offending field name
SimConfig parse_config(const std::string& json_text);
SimConfig load_config(const std::string& path);
std::string config_to_json(const SimConfig& c);

InitialData config_initial_data(const SimConfig& c);

void save_checkpoint(const std::string& path, const FluidState& s);
FluidState load_checkpoint(const std::string& path);

void save_curve(const std::string& path, const ClosedCurve& c);
ClosedCurve load_curve(const std::string& path);

struct DiagnosticsRecord {
    double t = 0.0;
    double area = 0.0;
    double min_a1 = 0.0;
    double eps_sup = 0.0;
    double constraint_defect = 0.0;
    double projection_magnitude = 0.0;
};

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records);

} // namespace gravsurf
