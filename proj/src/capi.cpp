#include "erhoq/erhoq.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "dmqmc.hpp"
#include "errors.hpp"
#include "estimator.hpp"
#include "oracle.hpp"
#include "series_io.hpp"
#include "text_format.hpp"

namespace {

thread_local std::string g_last_error;

using namespace erhoq;

erhoq_status set_error(erhoq_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Translates any in-flight exception to a status code + message.
erhoq_status capture() {
    try {
        throw;
    } catch (const PopulationExplosion& e) {
        return set_error(ERHOQ_ERROR_POPULATION_EXPLOSION, e.what());
    } catch (const ZeroTrace& e) {
        return set_error(ERHOQ_ERROR_ZERO_TRACE, e.what());
    } catch (const ParseError& e) {
        return set_error(ERHOQ_ERROR_PARSE, e.what());
    } catch (const DimensionTooLarge& e) {
        return set_error(ERHOQ_ERROR_DIMENSION_TOO_LARGE, e.what());
    } catch (const BranchMismatch& e) {
        return set_error(ERHOQ_ERROR_BRANCH_MISMATCH, e.what());
    } catch (const NonDivisibleTime& e) {
        return set_error(ERHOQ_ERROR_NONDIVISIBLE_TIME, e.what());
    } catch (const DivisionByZeroAtT0& e) {
        return set_error(ERHOQ_ERROR_DIVISION_BY_ZERO_AT_T0, e.what());
    } catch (const IoError& e) {
        return set_error(ERHOQ_ERROR_IO, e.what());
    } catch (const InvalidArgument& e) {
        return set_error(ERHOQ_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return set_error(ERHOQ_ERROR_INTERNAL, e.what());
    } catch (...) {
        return set_error(ERHOQ_ERROR_INTERNAL, "unknown error");
    }
}

void write_file_atomically(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open `" + tmp + "` for writing");
        os << contents;
        os.flush();
        if (!os) throw IoError("failed writing `" + tmp + "`");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("failed to rename `" + tmp + "` to `" + path + "`");
    }
}

EvolutionJob build_job(const PsipPopulation& pop,
                       const erhoq_evolve_options& options) {
    if (options.n_segments < 1 || options.segments == nullptr)
        throw InvalidArgument("evolve options need at least one schedule segment");
    EvolutionJob job;
    job.population = &pop;
    job.lattice = Lattice::periodic_chain(pop.sites());
    for (int i = 0; i < options.n_segments; ++i) {
        const erhoq_segment& s = options.segments[i];
        job.segments.push_back(
            {s.t_start, HamiltonianParams{s.params.j_z, s.params.mu_x, s.params.mu_z}});
    }
    job.grid = TimeGrid::up_to(options.t_max, options.grid_dt);
    job.trotter_dt = options.trotter_dt;
    job.noise.readout_flip = options.noise.readout_flip;
    job.noise.angle_bias_offset = options.noise.angle_bias_offset;
    job.noise.angle_bias_slope = options.noise.angle_bias_slope;
    job.mode = options.shots > 0
                   ? ExecutionMode::sampled(options.shots, options.shot_seed)
                   : ExecutionMode::exact();
    job.per_psip = options.per_psip != 0;
    return job;
}

}  // namespace

extern "C" {

struct erhoq_population {
    erhoq::PsipPopulation impl;
};

struct erhoq_series {
    erhoq::ObservableSeries impl;
};

const char* erhoq_status_name(erhoq_status status) {
    switch (status) {
        case ERHOQ_OK: return "ok";
        case ERHOQ_ERROR_INVALID_ARGUMENT: return "invalid-argument";
        case ERHOQ_ERROR_POPULATION_EXPLOSION: return "population-explosion";
        case ERHOQ_ERROR_ZERO_TRACE: return "zero-trace";
        case ERHOQ_ERROR_PARSE: return "parse-error";
        case ERHOQ_ERROR_DIMENSION_TOO_LARGE: return "dimension-too-large";
        case ERHOQ_ERROR_BRANCH_MISMATCH: return "branch-mismatch";
        case ERHOQ_ERROR_NONDIVISIBLE_TIME: return "non-divisible-time";
        case ERHOQ_ERROR_DIVISION_BY_ZERO_AT_T0: return "division-by-zero-at-t0";
        case ERHOQ_ERROR_IO: return "io-error";
        case ERHOQ_ERROR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* erhoq_last_error(void) { return g_last_error.c_str(); }

const char* erhoq_version(void) { return "0.1.0"; }

erhoq_status erhoq_thermalize(int sites, const erhoq_hamiltonian* h0,
                              const erhoq_dmqmc_options* options,
                              erhoq_population** out) {
    if (!h0 || !options || !out)
        return set_error(ERHOQ_ERROR_INVALID_ARGUMENT, "null argument");
    try {
        DmqmcParams params;
        params.beta = options->beta;
        params.delta_beta = options->delta_beta;
        params.n_initial = options->n_initial;
        params.seed = options->seed;
        if (options->weight_ceiling > 0.0) params.weight_ceiling = options->weight_ceiling;
        const HamiltonianParams h{h0->j_z, h0->mu_x, h0->mu_z};
        const Lattice lat = Lattice::periodic_chain(sites);
        auto* handle = new erhoq_population{run_dmqmc(params, h, lat)};
        *out = handle;
        return ERHOQ_OK;
    } catch (...) {
        return capture();
    }
}

erhoq_status erhoq_population_load(const char* path, erhoq_population** out) {
    if (!path || !out) return set_error(ERHOQ_ERROR_INVALID_ARGUMENT, "null argument");
    try {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw IoError("cannot open population file `" + std::string(path) + "`");
        auto* handle = new erhoq_population{load_population(is)};
        *out = handle;
        return ERHOQ_OK;
    } catch (...) {
        return capture();
    }
}

erhoq_status erhoq_population_save(const erhoq_population* population,
                                   const char* path) {
    if (!population || !path)
        return set_error(ERHOQ_ERROR_INVALID_ARGUMENT, "null argument");
    try {
        write_file_atomically(path, population_to_string(population->impl));
        return ERHOQ_OK;
    } catch (...) {
        return capture();
    }
}

int erhoq_population_sites(const erhoq_population* population) {
    return population ? population->impl.sites() : 0;
}

double erhoq_population_beta(const erhoq_population* population) {
    return population ? population->impl.beta() : 0.0;
}

long long erhoq_population_entries(const erhoq_population* population) {
    return population ? static_cast<long long>(population->impl.entry_count()) : 0;
}

long long erhoq_population_total_weight(const erhoq_population* population) {
    return population ? population->impl.total_absolute_weight() : 0;
}

long long erhoq_population_trace(const erhoq_population* population) {
    if (!population) return 0;
    long long trace = 0;
    for (const auto& [key, w] : population->impl.weights())
        if (key.first == key.second) trace += w;
    return trace;
}

void erhoq_population_free(erhoq_population* population) { delete population; }

erhoq_status erhoq_evolve(const erhoq_population* population,
                          const erhoq_evolve_options* options, erhoq_series** out) {
    if (!population || !options || !out)
        return set_error(ERHOQ_ERROR_INVALID_ARGUMENT, "null argument");
    try {
        const EvolutionJob job = build_job(population->impl, *options);
        ObservableSeries series =
            options->bootstrap_resamples >= 2
                ? bootstrap_series(job, options->bootstrap_resamples,
                                   options->bootstrap_seed)
                : expectation_series(job);

        std::optional<double> calibration;
        if (options->calibrate) {
            const HamiltonianParams h0{options->h0.j_z, options->h0.mu_x,
                                       options->h0.mu_z};
            // Diagonal calibration Hamiltonian: keep only the longitudinal
            // field of the first evolution segment.
            HamiltonianParams h_prime;
            h_prime.mu_z = job.segments.front().params.mu_z;
            const CalibrationResult cal =
                calibrate(job, h_prime, h0, options->rescale != 0);
            calibration = cal.quadrature_average;
        }
        if (options->rescale) series = rescale_by_t0(series);
        if (calibration) {
            series.meta.calibration_quadrature = *calibration;
            for (auto& p : series.points) p.sys_err = *calibration;
        }
        *out = new erhoq_series{std::move(series)};
        return ERHOQ_OK;
    } catch (...) {
        return capture();
    }
}

erhoq_status erhoq_exact_series(int sites, const erhoq_hamiltonian* h0, double beta,
                                const erhoq_evolve_options* options,
                                erhoq_series** out) {
    if (!h0 || !options || !out)
        return set_error(ERHOQ_ERROR_INVALID_ARGUMENT, "null argument");
    try {
        if (options->n_segments < 1 || options->segments == nullptr)
            throw InvalidArgument("evolve options need at least one schedule segment");
        const HamiltonianParams h0p{h0->j_z, h0->mu_x, h0->mu_z};
        const Lattice lat = Lattice::periodic_chain(sites);
        Schedule schedule;
        schedule.initial = h0p;
        for (int i = 0; i < options->n_segments; ++i) {
            const erhoq_segment& s = options->segments[i];
            schedule.segments.push_back(
                {s.t_start,
                 HamiltonianParams{s.params.j_z, s.params.mu_x, s.params.mu_z}});
        }
        schedule.validate();
        const TimeGrid grid = TimeGrid::up_to(options->t_max, options->grid_dt);

        const DenseOperator h_dense = dense_hamiltonian(h0p, lat);
        const DenseOperator rho = thermal_state(h_dense, beta);
        const DenseOperator obs = observable_mx(sites);
        OracleSeries oracle(schedule, lat, rho, obs);

        ObservableSeries series;
        series.meta.source = "exact-oracle";
        series.meta.sites = sites;
        series.meta.beta = beta;
        series.meta.grid_dt = grid.spacing;
        series.meta.trotter_dt = 0.0;
        series.meta.segments = schedule.segments;
        series.points.resize(static_cast<std::size_t>(grid.points));
        for (int k = 0; k < grid.points; ++k) {
            series.points[static_cast<std::size_t>(k)].t = grid.at(k);
            series.points[static_cast<std::size_t>(k)].value =
                oracle.value_at(grid.at(k));
        }
        if (options->rescale) series = rescale_by_t0(series);
        *out = new erhoq_series{std::move(series)};
        return ERHOQ_OK;
    } catch (...) {
        return capture();
    }
}

int erhoq_series_points(const erhoq_series* series) {
    return series ? static_cast<int>(series->impl.points.size()) : 0;
}

erhoq_status erhoq_series_point(const erhoq_series* series, int index, double* t,
                                double* value, double* stat_err, double* sys_err) {
    if (!series || index < 0 ||
        index >= static_cast<int>(series->impl.points.size()))
        return set_error(ERHOQ_ERROR_INVALID_ARGUMENT, "series index out of range");
    const SeriesPoint& p = series->impl.points[static_cast<std::size_t>(index)];
    if (t) *t = p.t;
    if (value) *value = p.value;
    if (stat_err) *stat_err = p.stat_err;
    if (sys_err) *sys_err = p.sys_err;
    return ERHOQ_OK;
}

erhoq_status erhoq_series_save_csv(const erhoq_series* series, const char* path) {
    if (!series || !path)
        return set_error(ERHOQ_ERROR_INVALID_ARGUMENT, "null argument");
    try {
        write_file_atomically(path, series_to_csv(series->impl));
        return ERHOQ_OK;
    } catch (...) {
        return capture();
    }
}

void erhoq_series_free(erhoq_series* series) { delete series; }

}  // extern "C"
