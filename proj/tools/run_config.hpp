#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "erhoq/erhoq.h"

// Flat `key = value` run configuration (`#` comments, blank lines ignored).
//
// Required keys:
//   sites
//   h0_j_z  h0_mu_x  h0_mu_z        thermal Hamiltonian
//   h1_j_z  h1_mu_x  h1_mu_z        evolution Hamiltonian (t >= 0)
//   beta  delta_beta  n_initial  seed
//   t_max  grid_dt  trotter_dt
// Optional keys (with defaults):
//   mode = exact | shots            (exact)
//   shots = <n>                     (512, used when mode = shots)
//   shot_seed = <n>                 (1)
//   readout_flip = <p>              (0)
//   angle_bias = <c>                (0)
//   angle_bias_slope = <c>          (0)
//   bootstrap_resamples = <n>       (1000)
//   bootstrap_seed = <n>            (1)
//   weight_ceiling = <w>            (1e7)
//   rescale = true|false            (false)
//   calibrate = true|false          (false)
//   per_psip = true|false           (false)
//   population_file = <path>        (population.txt)
//   results_file = <path>           (results.csv)
//   reference_file = <path>         (reference.csv)

struct MissingKey : std::runtime_error {
    explicit MissingKey(const std::string& key)
        : std::runtime_error("missing config key: " + key), name(key) {}
    std::string name;
};

struct BadValue : std::runtime_error {
    BadValue(const std::string& key, const std::string& value)
        : std::runtime_error("config key `" + key + "` has invalid value `" + value +
                             "`") {}
};

struct RunConfig {
    int sites = 0;
    erhoq_hamiltonian h0{0, 0, 0};
    erhoq_hamiltonian h1{0, 0, 0};
    double beta = 0;
    double delta_beta = 0;
    long long n_initial = 0;
    unsigned long long seed = 0;
    double t_max = 0;
    double grid_dt = 0;
    double trotter_dt = 0;
    bool shots_mode = false;
    long long shots = 512;
    unsigned long long shot_seed = 1;
    erhoq_noise noise{0, 0, 0};
    int bootstrap_resamples = 1000;
    unsigned long long bootstrap_seed = 1;
    double weight_ceiling = 1e7;
    bool rescale = false;
    bool calibrate = false;
    bool per_psip = false;
    std::string population_file = "population.txt";
    std::string results_file = "results.csv";
    std::string reference_file = "reference.csv";
};

// Throws MissingKey / BadValue; the CLI maps those to exit code 1.
RunConfig load_run_config(const std::string& path);

erhoq_dmqmc_options dmqmc_options(const RunConfig& config);

// The single-switch schedule segment for h1; viable for every run this tool
// drives.
erhoq_segment schedule_segment(const RunConfig& config);

erhoq_evolve_options evolve_options(const RunConfig& config,
                                    const erhoq_segment* segment);
