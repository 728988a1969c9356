/*
 * erhoq - hybrid stochastic/quantum-circuit simulator for thermal spin-chain
 * dynamics.
 *
 * The pipeline has two halves joined by a plain-text population file:
 *
 *   1. erhoq_thermalize: sample a sparse signed-walker approximation of the
 *      thermal density matrix exp(-beta*H0) of a periodic Heisenberg-type
 *      chain by stochastic imaginary-time propagation.
 *   2. erhoq_evolve: treat each walker as one or two pure-state programs on a
 *      simulated gate-based backend (trotterized real-time evolution under a
 *      possibly different Hamiltonian H1, optional readout/angle noise, exact
 *      or sampled measurement) and average the programs into the transverse
 *      magnetization m_x(t) with bootstrap errors.
 *
 *   erhoq_exact_series produces the dense exact-diagonalization reference for
 *   the same configuration (up to 12 sites).
 *
 * All functions returning erhoq_status are fallible; on failure they leave
 * output handles untouched and a human-readable message in
 * erhoq_last_error().  Handles are freed with the matching *_free call.
 * Unless noted, functions are thread-safe for distinct handles.
 */

#ifndef ERHOQ_H
#define ERHOQ_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum erhoq_status {
    ERHOQ_OK = 0,
    ERHOQ_ERROR_INVALID_ARGUMENT = 1,
    /* total walker weight crossed the configured ceiling */
    ERHOQ_ERROR_POPULATION_EXPLOSION = 2,
    /* population has zero diagonal weight; expectations undefined */
    ERHOQ_ERROR_ZERO_TRACE = 3,
    /* malformed population file; erhoq_last_error() names the line */
    ERHOQ_ERROR_PARSE = 4,
    /* dense oracle requested beyond 12 sites */
    ERHOQ_ERROR_DIMENSION_TOO_LARGE = 5,
    ERHOQ_ERROR_BRANCH_MISMATCH = 6,
    ERHOQ_ERROR_NONDIVISIBLE_TIME = 7,
    ERHOQ_ERROR_DIVISION_BY_ZERO_AT_T0 = 8,
    ERHOQ_ERROR_IO = 9,
    ERHOQ_ERROR_INTERNAL = 10
} erhoq_status;

/* Stable name of a status code, e.g. "zero-trace". */
const char* erhoq_status_name(erhoq_status status);

/* Message from the most recent failing call on this thread. */
const char* erhoq_last_error(void);

const char* erhoq_version(void);

/* H = -j_z sum_<ij> sz_i sz_j - mu_x sum_i sx_i - mu_z sum_i sz_i on a
 * periodic chain. */
typedef struct erhoq_hamiltonian {
    double j_z;
    double mu_x;
    double mu_z;
} erhoq_hamiltonian;

typedef struct erhoq_dmqmc_options {
    double beta;              /* target inverse temperature, >= 0 */
    double delta_beta;        /* imaginary-time step; beta/delta_beta whole */
    long long n_initial;      /* initial diagonal walkers, >= 1 */
    unsigned long long seed;  /* fixed seed => bit-identical population */
    double weight_ceiling;    /* abort threshold; <= 0 selects the 1e7 default */
} erhoq_dmqmc_options;

/* One piecewise-constant span of the evolution Hamiltonian, holding from
 * t_start until the next segment. */
typedef struct erhoq_segment {
    double t_start;
    erhoq_hamiltonian params;
} erhoq_segment;

typedef struct erhoq_noise {
    double readout_flip;      /* symmetric per-qubit flip probability, < 0.5 */
    double angle_bias_offset; /* every gate angle theta becomes */
    double angle_bias_slope;  /*   theta + offset + slope*theta */
} erhoq_noise;

typedef struct erhoq_evolve_options {
    const erhoq_segment* segments; /* at least one, first at t_start = 0 */
    int n_segments;
    double t_max;      /* grid runs t = 0, grid_dt, ..., t_max */
    double grid_dt;    /* must be a whole number of trotter steps */
    double trotter_dt;
    erhoq_noise noise;
    long long shots;              /* 0 = exact expectation values */
    unsigned long long shot_seed;
    int bootstrap_resamples;      /* 0 = skip error bars */
    unsigned long long bootstrap_seed;
    int rescale;   /* divide the series by its t=0 value */
    int calibrate; /* run the diagonal-Hamiltonian calibration and attach its
                    * quadrature-average as sys_err (needs h0/beta below) */
    int per_psip;  /* one program per walker replica instead of per key */
    erhoq_hamiltonian h0; /* thermal Hamiltonian, used by calibrate */
} erhoq_evolve_options;

typedef struct erhoq_population erhoq_population;
typedef struct erhoq_series erhoq_series;

/* ------------------------------------------------------------------ */
/* population                                                          */
/* ------------------------------------------------------------------ */

erhoq_status erhoq_thermalize(int sites, const erhoq_hamiltonian* h0,
                              const erhoq_dmqmc_options* options,
                              erhoq_population** out);

/* Text format: `N=`, `beta=`, `seed=`, `n_initial=` headers, then one
 * `<row bits> <col bits> <net weight>` line per entry (site 0 first).
 * Save writes to a temp file and renames, and is byte-stable: load followed
 * by save reproduces the input exactly. */
erhoq_status erhoq_population_load(const char* path, erhoq_population** out);
erhoq_status erhoq_population_save(const erhoq_population* population,
                                   const char* path);

int erhoq_population_sites(const erhoq_population* population);
double erhoq_population_beta(const erhoq_population* population);
long long erhoq_population_entries(const erhoq_population* population);
/* Sum of |net weight| over entries. */
long long erhoq_population_total_weight(const erhoq_population* population);
/* Sum of diagonal net weights (may be zero). */
long long erhoq_population_trace(const erhoq_population* population);

void erhoq_population_free(erhoq_population* population);

/* ------------------------------------------------------------------ */
/* observable series                                                   */
/* ------------------------------------------------------------------ */

erhoq_status erhoq_evolve(const erhoq_population* population,
                          const erhoq_evolve_options* options, erhoq_series** out);

/* Dense exact-diagonalization reference on the same grid (sites <= 12). */
erhoq_status erhoq_exact_series(int sites, const erhoq_hamiltonian* h0, double beta,
                                const erhoq_evolve_options* options,
                                erhoq_series** out);

int erhoq_series_points(const erhoq_series* series);
erhoq_status erhoq_series_point(const erhoq_series* series, int index, double* t,
                                double* value, double* stat_err, double* sys_err);

/* CSV `t,m_x,stat_err,sys_err` with `#` metadata comments; temp+rename. */
erhoq_status erhoq_series_save_csv(const erhoq_series* series, const char* path);

void erhoq_series_free(erhoq_series* series);

#ifdef __cplusplus
}
#endif

#endif /* ERHOQ_H */
