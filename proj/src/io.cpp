#include "gravsurf/io.hpp"

#include "gravsurf/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gravsurf {

namespace {

using nlohmann::json;

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex json_to_complex(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(field + ": expected [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<PerturbationMode> parse_modes(const json& j, const std::string& field) {
    std::vector<PerturbationMode> out;
    if (!j.is_array()) throw ConfigError(field + ": expected a list of [mode, re, im]");
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 3)
            throw ConfigError(field + ": each entry must be [mode, re, im]");
        PerturbationMode m;
        m.mode = item[0].get<int>();
        m.coeff = Complex(item[1].get<double>(), item[2].get<double>());
        out.push_back(m);
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

std::vector<Complex> json_to_samples(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field + ": expected array of [re, im]");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(json_to_complex(item, field));
    return out;
}

json samples_to_json(const PeriodicComplexField& f) {
    json out = json::array();
    for (std::size_t k = 0; k < f.size(); ++k) out.push_back(complex_to_json(f[k]));
    return out;
}

} // namespace

SimConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    SimConfig c;
    if (j.contains("N")) {
        if (!j["N"].is_number_integer()) throw ConfigError("N: expected integer");
        const long long n = j["N"].get<long long>();
        if (n < 32 || n % 2 != 0) throw ConfigError("N: must be even and at least 32");
        c.N = static_cast<std::size_t>(n);
    }
    if (j.contains("omega0")) c.omega0 = j["omega0"].get<double>();
    if (!(c.omega0 * c.omega0 < std::numbers::pi))
        throw ConfigError("omega0: omega0^2 must be below pi");
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    if (!(c.epsilon >= 0.0)) throw ConfigError("epsilon: must be nonnegative");
    if (j.contains("profile_f")) c.profile_f = parse_modes(j["profile_f"], "profile_f");
    if (j.contains("profile_g")) c.profile_g = parse_modes(j["profile_g"], "profile_g");
    if (j.contains("v0")) c.v0 = json_to_complex(j["v0"], "v0");
    if (j.contains("dt")) c.dt = j["dt"].get<double>();
    if (!(c.dt > 0.0)) throw ConfigError("dt: must be positive");
    if (j.contains("t_end")) c.t_end = j["t_end"].get<double>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_path")) c.output_path = j["output_path"].get<std::string>();
    if (j.contains("out_interval")) c.out_interval = j["out_interval"].get<double>();
    if (j.contains("checkpoint")) c.checkpoint = j["checkpoint"].get<std::string>();
    if (j.contains("eps_list")) {
        for (const auto& e : j["eps_list"]) c.eps_list.push_back(e.get<double>());
    }
    if (j.contains("lifespan_cap")) c.lifespan_cap = j["lifespan_cap"].get<double>();
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const SimConfig& c) {
    json j;
    j["N"] = c.N;
    j["omega0"] = c.omega0;
    j["epsilon"] = c.epsilon;
    json pf = json::array(), pg = json::array();
    for (const auto& m : c.profile_f)
        pf.push_back({m.mode, m.coeff.real(), m.coeff.imag()});
    for (const auto& m : c.profile_g)
        pg.push_back({m.mode, m.coeff.real(), m.coeff.imag()});
    j["profile_f"] = pf;
    j["profile_g"] = pg;
    j["v0"] = complex_to_json(c.v0);
    j["dt"] = c.dt;
    j["t_end"] = c.t_end;
    j["seed"] = c.seed;
    j["output_path"] = c.output_path;
    j["out_interval"] = c.out_interval;
    if (!c.checkpoint.empty()) j["checkpoint"] = c.checkpoint;
    if (!c.eps_list.empty()) j["eps_list"] = c.eps_list;
    j["lifespan_cap"] = c.lifespan_cap;
    return j.dump(2);
}

InitialData config_initial_data(const SimConfig& c) {
    InitialData d = default_profile(c.epsilon, c.omega0);
    d.v0 = c.v0;
    if (!c.profile_f.empty()) d.f_modes = c.profile_f;
    if (!c.profile_g.empty()) d.g_modes = c.profile_g;
    return d;
}

void save_checkpoint(const std::string& path, const FluidState& s) {
    json j;
    j["t"] = s.t;
    j["omega0"] = s.omega0;
    j["N"] = s.Z.size();
    j["Z"] = samples_to_json(s.Z);
    j["Zt"] = samples_to_json(s.Zt);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write checkpoint " + path);
    out << j.dump(1) << "\n";
}

FluidState load_checkpoint(const std::string& path) {
    const json j = read_json_file(path);
    for (const char* key : {"t", "omega0", "N", "Z", "Zt"})
        if (!j.contains(key)) throw ConfigError(path + ": missing field " + key);
    FluidState s;
    s.t = j["t"].get<double>();
    s.omega0 = j["omega0"].get<double>();
    const auto n = j["N"].get<std::size_t>();
    s.Z = PeriodicComplexField(json_to_samples(j["Z"], "Z"));
    s.Zt = PeriodicComplexField(json_to_samples(j["Zt"], "Zt"));
    if (s.Z.size() != n || s.Zt.size() != n)
        throw ConfigError(path + ": sample counts disagree with N");
    return s;
}

void save_curve(const std::string& path, const ClosedCurve& c) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write curve " + path);
    out << samples_to_json(c.z()).dump(1) << "\n";
}

ClosedCurve load_curve(const std::string& path) {
    const json j = read_json_file(path);
    return ClosedCurve(PeriodicComplexField(json_to_samples(j, "curve")));
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write diagnostics " + path);
    out << "# diagnostics v1\n";
    out << "t,area,min_A1,eps_sup,constraint_defect,projection_magnitude\n";
    out.precision(17);
    for (const auto& r : records) {
        out << r.t << ',' << r.area << ',' << r.min_a1 << ',' << r.eps_sup << ','
            << r.constraint_defect << ',' << r.projection_magnitude << '\n';
    }
}

} // namespace gravsurf
