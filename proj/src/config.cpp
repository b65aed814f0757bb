// SPDX-License-Identifier: Apache-2.0

#include "fcapa/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fcapa/errors.hpp"

namespace fcapa {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void read_armijo(const json& j, ArmijoOptions& a) {
    read(j, "initial_step_scale", a.initial_step_scale);
    read(j, "shrink", a.shrink);
    read(j, "slope_coeff", a.slope_coeff);
    read(j, "min_step", a.min_step);
}

json dump_config(const RunConfig& cfg) {
    const ExperimentDefaults& d = cfg.defaults;
    json j;
    j["frequency_hz"] = d.frequency;
    j["impedance_ohm"] = d.impedance;
    j["transmit_power_a2"] = d.transmit_power;
    j["noise_var"] = d.noise_var;
    j["aperture_area_m2"] = d.aperture_area;
    j["users"] = d.users;
    j["morph_lambda"] = d.morph_lambda;
    j["shape"] = d.shape;
    j["grid_resolution"] = d.grid_resolution;
    j["quadrature_order"] = d.solver.quadrature_order;
    j["user_region"] = {{"r_x", d.region.r_x},
                        {"r_z", d.region.r_z},
                        {"r_y_min", d.region.r_y_min},
                        {"r_y_max", d.region.r_y_max}};
    j["solver"] = {{"outer_iterations", d.solver.outer_iterations},
                   {"early_stop_tol", d.solver.early_stop_tol},
                   {"armijo",
                    {{"initial_step_scale", d.solver.armijo.initial_step_scale},
                     {"shrink", d.solver.armijo.shrink},
                     {"slope_coeff", d.solver.armijo.slope_coeff},
                     {"min_step", d.solver.armijo.min_step}}}};
    j["beamformer"] =
        d.mimo.beamformer == Beamformer::zero_forcing ? "zf" : "fp";
    j["mimo"] = {{"outer_iterations", d.mimo.outer_iterations},
                 {"fp_iterations", d.mimo.fp.iterations},
                 {"fp_tolerance", d.mimo.fp.tolerance},
                 {"fd_step_scale", d.mimo.fd_step_scale}};
    if (!cfg.user_positions.empty()) {
        auto arr = json::array();
        for (const auto& p : cfg.user_positions) arr.push_back({p[0], p[1], p[2]});
        j["user_positions"] = arr;
    }
    auto schemes = json::array();
    for (const Scheme s : cfg.sweep.schemes) schemes.push_back(scheme_name(s));
    j["sweep"] = {{"parameter", sweep_parameter_name(cfg.sweep.parameter)},
                  {"values", cfg.sweep.values},
                  {"realizations", cfg.sweep.realizations},
                  {"schemes", schemes}};
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    return j;
}

} // namespace

RunConfig default_config() {
    RunConfig cfg;
    cfg.sweep.defaults = cfg.defaults;
    cfg.sweep.values = default_sweep_values(cfg.sweep.parameter);
    cfg.raw_json = dump_config(cfg).dump();
    return cfg;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    ExperimentDefaults& d = cfg.defaults;
    try {
        read(j, "frequency_hz", d.frequency);
        read(j, "impedance_ohm", d.impedance);
        read(j, "transmit_power_a2", d.transmit_power);
        read(j, "noise_var", d.noise_var);
        read(j, "aperture_area_m2", d.aperture_area);
        read(j, "users", d.users);
        read(j, "morph_lambda", d.morph_lambda);
        read(j, "shape", d.shape);
        read(j, "grid_resolution", d.grid_resolution);
        read(j, "quadrature_order", d.solver.quadrature_order);
        if (j.contains("user_region")) {
            const json& r = j.at("user_region");
            read(r, "r_x", d.region.r_x);
            read(r, "r_z", d.region.r_z);
            read(r, "r_y_min", d.region.r_y_min);
            read(r, "r_y_max", d.region.r_y_max);
        }
        if (j.contains("solver")) {
            const json& s = j.at("solver");
            read(s, "outer_iterations", d.solver.outer_iterations);
            read(s, "early_stop_tol", d.solver.early_stop_tol);
            if (s.contains("armijo")) read_armijo(s.at("armijo"), d.solver.armijo);
        }
        if (j.contains("beamformer")) {
            const std::string b = j.at("beamformer").get<std::string>();
            if (b == "zf")
                d.mimo.beamformer = Beamformer::zero_forcing;
            else if (b == "fp")
                d.mimo.beamformer = Beamformer::fractional_programming;
            else
                throw InvalidConfigError("beamformer must be \"zf\" or \"fp\", got \"" + b +
                                         "\"");
        }
        if (j.contains("mimo")) {
            const json& m = j.at("mimo");
            read(m, "outer_iterations", d.mimo.outer_iterations);
            read(m, "fp_iterations", d.mimo.fp.iterations);
            read(m, "fp_tolerance", d.mimo.fp.tolerance);
            read(m, "fd_step_scale", d.mimo.fd_step_scale);
        }
        if (j.contains("user_positions")) {
            for (const auto& p : j.at("user_positions")) {
                if (!p.is_array() || p.size() != 3)
                    throw InvalidConfigError("user_positions entries must be [x, y, z]");
                cfg.user_positions.push_back(
                    {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
            }
        }
        read(j, "seed", cfg.seed);
        read(j, "threads", cfg.threads);

        cfg.sweep.defaults = d;
        cfg.sweep.seed = cfg.seed;
        cfg.sweep.threads = cfg.threads;
        if (j.contains("sweep")) {
            const json& s = j.at("sweep");
            if (s.contains("parameter"))
                cfg.sweep.parameter =
                    sweep_parameter_from_name(s.at("parameter").get<std::string>());
            if (s.contains("values"))
                cfg.sweep.values = s.at("values").get<std::vector<double>>();
            read(s, "realizations", cfg.sweep.realizations);
            if (s.contains("schemes")) {
                cfg.sweep.schemes.clear();
                for (const auto& name : s.at("schemes"))
                    cfg.sweep.schemes.push_back(scheme_from_name(name.get<std::string>()));
            }
        }
        if (cfg.sweep.values.empty()) cfg.sweep.values = default_sweep_values(cfg.sweep.parameter);
    } catch (const json::exception& e) {
        throw InvalidConfigError(std::string("bad config value: ") + e.what());
    }

    cfg.raw_json = dump_config(cfg).dump();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

Scenario solve_scenario(const RunConfig& cfg, int realization) {
    Scenario scn;
    const ExperimentDefaults& d = cfg.defaults;
    scn.frequency = d.frequency;
    scn.impedance = d.impedance;
    scn.transmit_power = d.transmit_power;
    scn.length_x = scn.length_z = std::sqrt(d.aperture_area);
    if (!cfg.user_positions.empty()) {
        const int k = static_cast<int>(cfg.user_positions.size());
        scn.users.resize(k);
        for (int u = 0; u < k; ++u) {
            scn.users[u].position = cfg.user_positions[u];
            scn.users[u].polarization = {0.0, 0.0, 1.0};
            scn.users[u].noise_var = d.noise_var;
            scn.users[u].weight = 1.0 / k;
        }
    } else {
        scn.users = sample_users(d.users, d.region, cfg.seed, realization, d.noise_var);
    }
    return scn;
}

} // namespace fcapa
