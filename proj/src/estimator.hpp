#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "backend.hpp"
#include "dmqmc.hpp"
#include "spin_model.hpp"

namespace erhoq {

// Uniform time grid t_k = k * spacing, k = 0..points-1.
struct TimeGrid {
    double spacing = 0.1;
    int points = 1;

    static TimeGrid up_to(double t_max, double spacing);
    // Snapped to 12 significant digits so accumulated products print as the
    // intended decimals.
    double at(int k) const;
};

// Everything one evolution pass needs: which population, which evolution
// Hamiltonian, the time grid, the trotter step, and how the backend runs.
struct EvolutionJob {
    const PsipPopulation* population = nullptr;
    Lattice lattice;
    std::vector<Schedule::Segment> segments;
    TimeGrid grid;
    double trotter_dt = 0.1;
    NoiseModel noise;
    ExecutionMode mode;
    // Evaluate every psip replica as its own program instead of once per
    // distinct (row, col) key.  Identical in exact mode; in shot mode each
    // replica gets independent shot noise.
    bool per_psip = false;

    void validate() const;
};

struct SeriesPoint {
    double t = 0.0;
    double value = 0.0;
    double stat_err = 0.0;
    double sys_err = 0.0;
};

struct SeriesMetadata {
    int sites = 0;
    std::int64_t trace = 0;
    std::int64_t total_weight = 0;
    std::size_t key_count = 0;
    std::uint64_t population_seed = 0;
    std::uint64_t population_hash = 0;
    std::int64_t shots = 0;
    std::uint64_t shot_seed = 0;
    double readout_flip = 0.0;
    double angle_bias_offset = 0.0;
    double angle_bias_slope = 0.0;
    double grid_dt = 0.0;
    double trotter_dt = 0.0;
    double beta = 0.0;
    std::vector<Schedule::Segment> segments;
    int bootstrap_resamples = 0;
    std::uint64_t bootstrap_seed = 0;
    bool rescaled = false;
    std::optional<double> calibration_quadrature;
    std::string source = "psip-pipeline";
};

struct ObservableSeries {
    std::vector<SeriesPoint> points;
    SeriesMetadata meta;
};

// Cached backend results for one distinct psip key (or one replica in
// per-psip mode): m_x per branch per grid point, plus per-shot outcome
// tallies in shot mode.
struct KeyContribution {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    std::int64_t weight = 0;

    struct BranchSeries {
        std::vector<double> values;
        std::vector<std::vector<std::int64_t>> outcome_counts;  // [t][ones]
    };
    BranchSeries primary;               // diagonal or u branch
    BranchSeries secondary;             // v branch (off-diagonal only)
    bool diagonal() const { return row == col; }

    // Per-unit-weight m_x at grid index k: <a|O|a> for diagonal keys,
    // (u - v)/2 for off-diagonal ones.
    double value_at(std::size_t k) const {
        return diagonal() ? primary.values[k]
                          : 0.5 * (primary.values[k] - secondary.values[k]);
    }
};

// Runs every needed quantum program once (incremental trotter evolution along
// the grid, one pass per key and branch) and caches the results.
std::vector<KeyContribution> evaluate_contributions(const EvolutionJob& job);

// Point estimate at grid index k from cached contributions.
double estimate_at(const std::vector<KeyContribution>& contributions, std::size_t k);

// Trace-normalized psip-sum estimate at a single time (throws ZeroTrace).
double psip_expectation(const EvolutionJob& job, double t);

// Full series, no error bars.
ObservableSeries expectation_series(const EvolutionJob& job);

// Series with bootstrap errors: psips are resampled by key with multiplicity
// |net weight| (signs preserved), the same resample being reused across the
// whole grid; in shot mode the per-program shot outcomes are resampled
// separately and the two error components are combined in quadrature.
ObservableSeries bootstrap_series(const EvolutionJob& job, int n_resamples,
                                  std::uint64_t bootstrap_seed);

// Divides every value and error by the t=0 value (throws DivisionByZeroAtT0).
ObservableSeries rescale_by_t0(const ObservableSeries& series);

// Calibration against a computational-basis-diagonal evolution Hamiltonian
// h_prime (the pipeline is re-run with h_prime; the dense oracle provides the
// exact reference from h0/beta).  When `rescaled` is set both series are
// rescaled by their t=0 values before differencing, matching how the physics
// run is reported.
struct CalibrationResult {
    std::vector<double> differences;  // pipeline - exact, per grid point
    double quadrature_average = 0.0;  // sqrt(mean of squared differences)
};

CalibrationResult calibrate(const EvolutionJob& job, const HamiltonianParams& h_prime,
                            const HamiltonianParams& h0, bool rescaled);

}  // namespace erhoq
