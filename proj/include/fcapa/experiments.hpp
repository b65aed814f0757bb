// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo experiment harness: user sampling, parameter sweeps with paired
// realizations across schemes, and CSV/JSON result emission.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fcapa/baselines.hpp"
#include "fcapa/em_channel.hpp"
#include "fcapa/shape_optimizer.hpp"

namespace fcapa {

struct UserRegion {
    double r_x = 5.0;      // |x| <= r_x
    double r_z = 5.0;      // |z| <= r_z
    double r_y_min = 15.0; // y range
    double r_y_max = 30.0;
};

enum class Scheme { fcapa, capa, mimo_conventional, mimo_flexible };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

enum class SweepParameter { aperture, power, users, frequency, morph };

const char* sweep_parameter_name(SweepParameter p);
SweepParameter sweep_parameter_from_name(const std::string& name);

// Fixed defaults shared by all sweep points; the swept parameter overrides
// the matching field per point.
struct ExperimentDefaults {
    double frequency = 2.4e9;      // Hz
    double impedance = free_space_impedance;
    double transmit_power = 0.1;   // A^2
    double noise_var = 5.6e-3;     // V^2/m^2
    double aperture_area = 0.25;   // m^2 (square aperture)
    int users = 8;
    double morph_lambda = 2.0;     // xi in wavelengths
    std::string shape = "paraboloid"; // preset name or a .csv grid file
    int grid_resolution = 64;
    UserRegion region;
    SolveOptions solver;
    MimoOptions mimo;
};

// Shape for one sweep point: a preset scaled to the aperture, or the grid
// loaded from a CSV file (whose extent must match the aperture).
SurfaceShape make_experiment_shape(const ExperimentDefaults& defaults, double length_x,
                                   double length_z, double morph_range);

struct SweepConfig {
    std::vector<Scheme> schemes{Scheme::fcapa, Scheme::capa, Scheme::mimo_flexible,
                                Scheme::mimo_conventional};
    SweepParameter parameter = SweepParameter::aperture;
    std::vector<double> values;
    int realizations = 200;
    std::uint64_t seed = 1;
    int threads = 1;
    ExperimentDefaults defaults;
};

struct ResultRecord {
    std::string scheme;
    std::string param_name;
    double param_value = 0.0;
    int realization = 0;
    std::uint64_t seed = 0;
    double arpu = 0.0;
    std::vector<double> rates;
    int iterations = 0;
    double power = 0.0;
    double wall_ms = 0.0;
    std::string error; // empty on success
};

// Default sweep grids bracketing the baseline setup.
std::vector<double> default_sweep_values(SweepParameter p);

// K users drawn uniformly in the region, polarization along z, one substream
// per (realization, user) so draws are stable under changes of K.
std::vector<UserTerminal> sample_users(int count, const UserRegion& region,
                                       std::uint64_t master_seed, int realization,
                                       double noise_var);

// Scenario for one sweep point; weights are 1/K.
Scenario make_scenario(const ExperimentDefaults& defaults, SweepParameter parameter, double value,
                       std::uint64_t master_seed, int realization);

// Solve one scheme for a prepared scenario. `value`/`parameter` select
// point-dependent knobs (the morph range for morph sweeps).
ResultRecord run_scheme(Scheme scheme, const Scenario& scn, const ExperimentDefaults& defaults,
                        SweepParameter parameter, double value, std::uint64_t master_seed,
                        int realization);

// Full sweep: every (scheme, value, realization) triple, user draws shared
// across schemes within a realization. Failures are recorded per record and
// the sweep continues. Records come back in deterministic (scheme, value,
// realization) order regardless of thread count.
std::vector<ResultRecord> run_sweep(const SweepConfig& cfg);

// CSV with header scheme,param_name,param_value,realization,seed,arpu,
// iterations,power,wall_ms plus a JSON sidecar (same path with .json
// appended) holding the full configuration.
void emit_results(const std::vector<ResultRecord>& records, const std::string& csv_path,
                  const std::string& config_json);
std::vector<ResultRecord> parse_results_csv(const std::string& csv_path);

// Convergence trace CSV with header iteration,surrogate,arpu.
void emit_trace(const SolveReport& report, const std::string& csv_path);

// Mean ARPU of the successful records for (scheme, value).
double mean_arpu(const std::vector<ResultRecord>& records, Scheme scheme, double value);

} // namespace fcapa
