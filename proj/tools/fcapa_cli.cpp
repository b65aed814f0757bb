// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: single-scenario solves, Monte Carlo sweeps, and
// convergence traces. All outputs are CSV plus a JSON config sidecar.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "fcapa/config.hpp"
#include "fcapa/errors.hpp"

namespace {

using namespace fcapa;

std::string out_path(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

int cmd_solve(const RunConfig& cfg, const std::string& out_dir, const std::string& scheme_str) {
    const Scheme scheme = scheme_from_name(scheme_str);
    const Scenario scn = solve_scenario(cfg);
    const double xi = cfg.defaults.morph_lambda * scn.wavelength();

    if (scheme == Scheme::fcapa || scheme == Scheme::capa) {
        SolveReport rep;
        if (scheme == Scheme::fcapa) {
            const SurfaceShape shape =
                make_experiment_shape(cfg.defaults, scn.length_x, scn.length_z, xi);
            rep = solve(scn, shape, cfg.defaults.solver);
        } else {
            rep = rigid_capa(scn, cfg.defaults.solver, cfg.defaults.grid_resolution);
        }
        std::printf("scheme            %s\n", scheme_name(scheme));
        std::printf("users             %d\n", scn.user_count());
        std::printf("iterations        %d\n", rep.iterations);
        std::printf("arpu (bit/s/Hz)   %.6f\n", rep.rates.arpu);
        std::printf("wsr  (bit/s/Hz)   %.6f\n", rep.rates.wsr);
        std::printf("power (A^2)       %.9f\n", rep.power);
        std::printf("wall (s)          %.3f\n", rep.wall_seconds);
        for (std::size_t k = 0; k < rep.rates.rate.size(); ++k)
            std::printf("rate[%zu]           %.6f\n", k, rep.rates.rate[k]);
        const std::string trace = out_path(out_dir, "trace.csv");
        emit_trace(rep, trace);
        std::printf("trace             %s\n", trace.c_str());
    } else {
        const MimoOptions& mopts = cfg.defaults.mimo;
        MimoReport rep;
        if (scheme == Scheme::mimo_flexible) {
            const SurfaceShape ref =
                make_experiment_shape(cfg.defaults, scn.length_x, scn.length_z, xi);
            rep = flexible_mimo(scn, ref, mopts);
        } else {
            rep = conventional_mimo(scn, mopts);
        }
        std::printf("scheme            %s\n", scheme_name(scheme));
        std::printf("users             %d\n", scn.user_count());
        std::printf("iterations        %d\n", rep.iterations);
        std::printf("arpu (bit/s/Hz)   %.6f\n", rep.arpu);
        std::printf("power (A^2)       %.9f\n", rep.power);
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_dir) {
    const auto records = run_sweep(cfg.sweep);
    const std::string csv = out_path(out_dir, "results.csv");
    emit_results(records, csv, cfg.raw_json);
    std::printf("records           %zu\n", records.size());
    std::printf("results           %s\n", csv.c_str());
    for (const Scheme scheme : cfg.sweep.schemes) {
        for (const double value : cfg.sweep.values) {
            std::printf("mean arpu  %-18s %-10s=%-12g %.6f\n", scheme_name(scheme),
                        sweep_parameter_name(cfg.sweep.parameter), value,
                        mean_arpu(records, scheme, value));
        }
    }
    return 0;
}

int cmd_convergence(const RunConfig& cfg, const std::string& out_dir) {
    std::vector<double> apertures = cfg.sweep.parameter == SweepParameter::aperture
                                        ? cfg.sweep.values
                                        : default_sweep_values(SweepParameter::aperture);
    for (const double area : apertures) {
        RunConfig point = cfg;
        point.defaults.aperture_area = area;
        const Scenario scn = solve_scenario(point);
        const double xi = point.defaults.morph_lambda * scn.wavelength();
        const SurfaceShape shape =
            make_experiment_shape(point.defaults, scn.length_x, scn.length_z, xi);
        const SolveReport rep = solve(scn, shape, point.defaults.solver);
        char name[64];
        std::snprintf(name, sizeof name, "convergence_a%g.csv", area);
        const std::string path = out_path(out_dir, name);
        emit_trace(rep, path);
        std::printf("aperture %-8g iterations %-3d arpu %.6f  %s\n", area, rep.iterations,
                    rep.rates.arpu, path.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flexible continuous-aperture array downlink optimizer"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string scheme = "fcapa";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--threads", threads, "worker threads for sweeps");

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one scenario and print the rates");
    solve_cmd->add_option("--scheme", scheme,
                          "fcapa | capa | mimo-flexible | mimo-conventional");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run the configured Monte Carlo sweep");
    CLI::App* conv_cmd =
        app.add_subcommand("convergence", "write per-iteration traces across aperture sizes");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = config_path.empty() ? fcapa::default_config()
                                            : fcapa::load_config(config_path);
        if (seed_set) {
            cfg.seed = seed;
            cfg.sweep.seed = seed;
        }
        if (threads > 0) {
            cfg.threads = threads;
            cfg.sweep.threads = threads;
        }
        if (solve_cmd->parsed()) return cmd_solve(cfg, out_dir, scheme);
        if (sweep_cmd->parsed()) return cmd_sweep(cfg, out_dir);
        if (conv_cmd->parsed()) return cmd_convergence(cfg, out_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
