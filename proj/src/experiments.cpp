// SPDX-License-Identifier: Apache-2.0

#include "fcapa/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fcapa/errors.hpp"
#include "fcapa/rng.hpp"

namespace fcapa {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::fcapa: return "fcapa";
        case Scheme::capa: return "capa";
        case Scheme::mimo_conventional: return "mimo-conventional";
        case Scheme::mimo_flexible: return "mimo-flexible";
    }
    return "unknown";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "fcapa") return Scheme::fcapa;
    if (name == "capa") return Scheme::capa;
    if (name == "mimo-conventional") return Scheme::mimo_conventional;
    if (name == "mimo-flexible") return Scheme::mimo_flexible;
    throw InvalidConfigError("unknown scheme: " + name);
}

const char* sweep_parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::aperture: return "aperture";
        case SweepParameter::power: return "power";
        case SweepParameter::users: return "users";
        case SweepParameter::frequency: return "frequency";
        case SweepParameter::morph: return "morph";
    }
    return "unknown";
}

SweepParameter sweep_parameter_from_name(const std::string& name) {
    if (name == "aperture") return SweepParameter::aperture;
    if (name == "power") return SweepParameter::power;
    if (name == "users") return SweepParameter::users;
    if (name == "frequency") return SweepParameter::frequency;
    if (name == "morph") return SweepParameter::morph;
    throw InvalidConfigError("unknown sweep parameter: " + name);
}

std::vector<double> default_sweep_values(SweepParameter p) {
    switch (p) {
        case SweepParameter::aperture: return {0.1, 0.25, 0.5, 0.75, 1.0};   // m^2
        case SweepParameter::power: return {0.01, 0.05, 0.1, 0.5, 1.0};      // A^2
        case SweepParameter::users: return {2, 4, 8, 12, 16};
        case SweepParameter::frequency: return {2.4e9, 6e9, 12e9, 24e9};     // Hz
        case SweepParameter::morph: return {0, 1, 2, 3, 4, 6};               // wavelengths
    }
    return {};
}

std::vector<UserTerminal> sample_users(int count, const UserRegion& region,
                                       std::uint64_t master_seed, int realization,
                                       double noise_var) {
    if (count < 1) throw InvalidConfigError("sample_users: user count must be >= 1");
    if (region.r_y_max < region.r_y_min)
        throw InvalidConfigError("sample_users: empty y range");
    std::vector<UserTerminal> users(count);
    for (int u = 0; u < count; ++u) {
        SplitMix64 rng(substream_seed(master_seed, std::uint64_t(realization), std::uint64_t(u)));
        UserTerminal& t = users[u];
        t.position[0] = rng.next_uniform(-region.r_x, region.r_x);
        t.position[2] = rng.next_uniform(-region.r_z, region.r_z);
        t.position[1] = rng.next_uniform(region.r_y_min, region.r_y_max);
        t.polarization = {0.0, 0.0, 1.0};
        t.noise_var = noise_var;
        t.weight = 1.0 / count;
    }
    return users;
}

SurfaceShape make_experiment_shape(const ExperimentDefaults& defaults, double length_x,
                                   double length_z, double morph_range) {
    if (defaults.shape.size() > 4 &&
        defaults.shape.substr(defaults.shape.size() - 4) == ".csv") {
        SurfaceShape s = shape_from_csv(defaults.shape, morph_range);
        if (std::abs(2.0 * s.half_length_u - length_x) > 1e-9 * (1.0 + length_x) ||
            std::abs(2.0 * s.half_length_v - length_z) > 1e-9 * (1.0 + length_z))
            throw InvalidConfigError("shape file extent does not match the aperture: " +
                                     defaults.shape);
        return s;
    }
    return shape_from_preset(defaults.shape, length_x, length_z, defaults.grid_resolution,
                             morph_range);
}

Scenario make_scenario(const ExperimentDefaults& defaults, SweepParameter parameter, double value,
                       std::uint64_t master_seed, int realization) {
    Scenario scn;
    scn.frequency = parameter == SweepParameter::frequency ? value : defaults.frequency;
    scn.impedance = defaults.impedance;
    scn.transmit_power = parameter == SweepParameter::power ? value : defaults.transmit_power;
    const double area = parameter == SweepParameter::aperture ? value : defaults.aperture_area;
    scn.length_x = scn.length_z = std::sqrt(area);
    const int users = parameter == SweepParameter::users ? static_cast<int>(std::lround(value))
                                                         : defaults.users;
    scn.users =
        sample_users(users, defaults.region, master_seed, realization, defaults.noise_var);
    return scn;
}

ResultRecord run_scheme(Scheme scheme, const Scenario& scn, const ExperimentDefaults& defaults,
                        SweepParameter parameter, double value, std::uint64_t master_seed,
                        int realization) {
    ResultRecord rec;
    rec.scheme = scheme_name(scheme);
    rec.param_name = sweep_parameter_name(parameter);
    rec.param_value = value;
    rec.realization = realization;
    rec.seed = master_seed;

    const double morph_lambda =
        parameter == SweepParameter::morph ? value : defaults.morph_lambda;
    const double xi = morph_lambda * scn.wavelength();

    const auto t0 = std::chrono::steady_clock::now();
    try {
        switch (scheme) {
            case Scheme::fcapa: {
                const SurfaceShape shape =
                    make_experiment_shape(defaults, scn.length_x, scn.length_z, xi);
                const SolveReport rep = solve(scn, shape, defaults.solver);
                rec.arpu = rep.rates.arpu;
                rec.rates = rep.rates.rate;
                rec.iterations = rep.iterations;
                rec.power = rep.power;
                break;
            }
            case Scheme::capa: {
                const SolveReport rep =
                    rigid_capa(scn, defaults.solver, defaults.grid_resolution);
                rec.arpu = rep.rates.arpu;
                rec.rates = rep.rates.rate;
                rec.iterations = rep.iterations;
                rec.power = rep.power;
                break;
            }
            case Scheme::mimo_conventional: {
                const MimoReport rep = conventional_mimo(scn, defaults.mimo);
                rec.arpu = rep.arpu;
                rec.rates = rep.rates.rate;
                rec.iterations = rep.iterations;
                rec.power = rep.power;
                break;
            }
            case Scheme::mimo_flexible: {
                const SurfaceShape ref =
                    make_experiment_shape(defaults, scn.length_x, scn.length_z, xi);
                const MimoReport rep = flexible_mimo(scn, ref, defaults.mimo);
                rec.arpu = rep.arpu;
                rec.rates = rep.rates.rate;
                rec.iterations = rep.iterations;
                rec.power = rep.power;
                break;
            }
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
        rec.arpu = std::nan("");
    }
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<ResultRecord> run_sweep(const SweepConfig& cfg) {
    if (cfg.values.empty()) throw InvalidConfigError("run_sweep: no sweep values");
    if (cfg.realizations < 1) throw InvalidConfigError("run_sweep: realizations must be >= 1");
    if (cfg.schemes.empty()) throw InvalidConfigError("run_sweep: no schemes selected");

    struct Task {
        Scheme scheme;
        double value;
        int realization;
    };
    std::vector<Task> tasks;
    tasks.reserve(cfg.schemes.size() * cfg.values.size() * std::size_t(cfg.realizations));
    for (const Scheme scheme : cfg.schemes)
        for (const double value : cfg.values)
            for (int r = 0; r < cfg.realizations; ++r) tasks.push_back({scheme, value, r});

    std::vector<ResultRecord> records(tasks.size());
    auto worker = [&](std::atomic<std::size_t>& next) {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            const Scenario scn =
                make_scenario(cfg.defaults, cfg.parameter, t.value, cfg.seed, t.realization);
            records[i] = run_scheme(t.scheme, scn, cfg.defaults, cfg.parameter, t.value, cfg.seed,
                                    t.realization);
        }
    };

    std::atomic<std::size_t> next{0};
    if (cfg.threads <= 1) {
        worker(next);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < cfg.threads; ++t) pool.emplace_back([&] { worker(next); });
        for (auto& t : pool) t.join();
    }
    return records;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sidecar_path(const std::string& csv_path) {
    if (csv_path.size() > 4 && csv_path.substr(csv_path.size() - 4) == ".csv")
        return csv_path.substr(0, csv_path.size() - 4) + ".json";
    return csv_path + ".json";
}

} // namespace

void emit_results(const std::vector<ResultRecord>& records, const std::string& csv_path,
                  const std::string& config_json) {
    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot write results file: " + csv_path);
    out << "scheme,param_name,param_value,realization,seed,arpu,iterations,power,wall_ms\n";
    for (const auto& r : records) {
        out << r.scheme << ',' << r.param_name << ',' << format_double(r.param_value) << ','
            << r.realization << ',' << r.seed << ',' << format_double(r.arpu) << ','
            << r.iterations << ',' << format_double(r.power) << ',' << format_double(r.wall_ms)
            << '\n';
    }
    if (!out) throw IoError("write failure on results file: " + csv_path);
    out.close();

    nlohmann::json side;
    side["config"] =
        config_json.empty() ? nlohmann::json() : nlohmann::json::parse(config_json);
    auto errors = nlohmann::json::array();
    for (const auto& r : records) {
        if (r.error.empty()) continue;
        errors.push_back({{"scheme", r.scheme},
                          {"param_value", r.param_value},
                          {"realization", r.realization},
                          {"message", r.error}});
    }
    side["errors"] = errors;
    const std::string jpath = sidecar_path(csv_path);
    std::ofstream jout(jpath);
    if (!jout) throw IoError("cannot write config sidecar: " + jpath);
    jout << side.dump(2) << '\n';
}

std::vector<ResultRecord> parse_results_csv(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw IoError("cannot open results file: " + csv_path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty results file: " + csv_path);
    std::vector<ResultRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        ResultRecord r;
        std::getline(row, r.scheme, ',');
        std::getline(row, r.param_name, ',');
        std::getline(row, field, ',');
        r.param_value = std::strtod(field.c_str(), nullptr);
        std::getline(row, field, ',');
        r.realization = std::atoi(field.c_str());
        std::getline(row, field, ',');
        r.seed = std::strtoull(field.c_str(), nullptr, 10);
        std::getline(row, field, ',');
        r.arpu = std::strtod(field.c_str(), nullptr);
        std::getline(row, field, ',');
        r.iterations = std::atoi(field.c_str());
        std::getline(row, field, ',');
        r.power = std::strtod(field.c_str(), nullptr);
        std::getline(row, field, ',');
        r.wall_ms = std::strtod(field.c_str(), nullptr);
        records.push_back(std::move(r));
    }
    return records;
}

void emit_trace(const SolveReport& report, const std::string& csv_path) {
    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot write trace file: " + csv_path);
    out << "iteration,surrogate,arpu\n";
    for (std::size_t i = 0; i < report.surrogate_trace.size(); ++i)
        out << (i + 1) << ',' << format_double(report.surrogate_trace[i]) << ','
            << format_double(report.arpu_trace[i]) << '\n';
    if (!out) throw IoError("write failure on trace file: " + csv_path);
}

double mean_arpu(const std::vector<ResultRecord>& records, Scheme scheme, double value) {
    const std::string name = scheme_name(scheme);
    double sum = 0.0;
    int count = 0;
    for (const auto& r : records) {
        if (r.scheme != name || r.param_value != value || !r.error.empty()) continue;
        sum += r.arpu;
        ++count;
    }
    return count > 0 ? sum / count : std::nan("");
}

} // namespace fcapa
