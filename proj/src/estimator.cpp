#include "estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "errors.hpp"
#include "oracle.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "text_format.hpp"

namespace erhoq {

double TimeGrid::at(int k) const {
    const double t = spacing * k;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", t);
    return std::atof(buf);
}

TimeGrid TimeGrid::up_to(double t_max, double spacing) {
    if (!(spacing > 0.0)) throw InvalidArgument("grid spacing must be > 0");
    if (!(t_max >= 0.0)) throw InvalidArgument("t_max must be >= 0");
    const double steps = t_max / spacing;
    if (std::abs(steps - std::round(steps)) > 1e-9)
        throw InvalidArgument("t_max must be a whole number of grid spacings");
    TimeGrid grid;
    grid.spacing = spacing;
    grid.points = static_cast<int>(std::llround(steps)) + 1;
    return grid;
}

void EvolutionJob::validate() const {
    if (!population) throw InvalidArgument("job has no population");
    if (population->sites() != lattice.sites)
        throw InvalidArgument("population and lattice site counts differ");
    if (grid.points < 1) throw InvalidArgument("time grid is empty");
    noise.validate();
    mode.validate();
    Schedule sched;
    sched.segments = segments;
    sched.validate();
    // Grid points and segment switches must sit on whole trotter steps.
    trotter_step_count(grid.spacing, trotter_dt);
    for (const auto& seg : segments) trotter_step_count(seg.t_start, trotter_dt);
}

namespace {

// Trotter blocks laid out step by step across the grid, resolving the
// piecewise-constant schedule to integer step boundaries.
struct StepPlan {
    std::vector<Circuit> blocks;     // one per segment
    std::vector<int> block_of_step;  // total steps = (points-1) * per grid
    int steps_per_grid = 0;
};

StepPlan make_step_plan(const EvolutionJob& job) {
    StepPlan plan;
    plan.steps_per_grid = trotter_step_count(job.grid.spacing, job.trotter_dt);
    const int total_steps = plan.steps_per_grid * (job.grid.points - 1);
    plan.blocks.reserve(job.segments.size());
    std::vector<int> start_step;
    for (const auto& seg : job.segments) {
        plan.blocks.push_back(trotter_step_block(seg.params, job.lattice, job.trotter_dt));
        start_step.push_back(trotter_step_count(seg.t_start, job.trotter_dt));
    }
    plan.block_of_step.resize(static_cast<std::size_t>(total_steps));
    std::size_t seg = 0;
    for (int j = 0; j < total_steps; ++j) {
        while (seg + 1 < start_step.size() && start_step[seg + 1] <= j) ++seg;
        plan.block_of_step[static_cast<std::size_t>(j)] = static_cast<int>(seg);
    }
    return plan;
}

void apply_with_noise(Statevector& state, const Circuit& c, const NoiseModel& noise) {
    if (!noise.biases_angles()) {
        state.apply(c);
        return;
    }
    for (Gate g : c.gates) {
        if (g.parameterized()) g.angle = noise.biased(g.angle);
        state.apply(g);
    }
}

KeyContribution::BranchSeries evaluate_branch(const EvolutionJob& job,
                                              const StepPlan& plan,
                                              const SpinBasisState& row,
                                              const SpinBasisState& col, Branch branch,
                                              std::uint64_t stream_index) {
    KeyContribution::BranchSeries out;
    const Circuit prep = prepare_pure_state(col, row, branch);
    Statevector state(job.lattice.sites);
    apply_with_noise(state, prep, job.noise);

    out.values.resize(static_cast<std::size_t>(job.grid.points));
    if (!job.mode.exact_expectation())
        out.outcome_counts.resize(static_cast<std::size_t>(job.grid.points));

    for (int k = 0; k < job.grid.points; ++k) {
        if (k > 0) {
            const int first = (k - 1) * plan.steps_per_grid;
            for (int j = first; j < first + plan.steps_per_grid; ++j)
                apply_with_noise(
                    state,
                    plan.blocks[static_cast<std::size_t>(
                        plan.block_of_step[static_cast<std::size_t>(j)])],
                    job.noise);
        }
        const MxMeasurement m =
            measure_mx(state, job.noise, job.mode,
                       ShotStream{static_cast<std::uint32_t>(k), stream_index});
        out.values[static_cast<std::size_t>(k)] = m.value;
        if (!job.mode.exact_expectation())
            out.outcome_counts[static_cast<std::size_t>(k)] = m.outcome_counts;
    }
    return out;
}

}  // namespace

std::vector<KeyContribution> evaluate_contributions(const EvolutionJob& job) {
    job.validate();
    const StepPlan plan = make_step_plan(job);
    const int sites = job.lattice.sites;

    std::vector<KeyContribution> contributions;
    if (!job.per_psip) {
        contributions.reserve(job.population->entry_count());
        for (const auto& [key, w] : job.population->weights()) {
            KeyContribution c;
            c.row = key.first;
            c.col = key.second;
            c.weight = w;
            contributions.push_back(c);
        }
    } else {
        // One program (pair of programs off the diagonal) per psip replica.
        contributions.reserve(
            static_cast<std::size_t>(job.population->total_absolute_weight()));
        for (const auto& [key, w] : job.population->weights()) {
            const std::int64_t count = std::llabs(w);
            for (std::int64_t r = 0; r < count; ++r) {
                KeyContribution c;
                c.row = key.first;
                c.col = key.second;
                c.weight = w < 0 ? -1 : +1;
                contributions.push_back(c);
            }
        }
    }

    parallel_for(contributions.size(), [&](std::size_t i) {
        KeyContribution& c = contributions[i];
        const SpinBasisState row(c.row, sites);
        const SpinBasisState col(c.col, sites);
        const std::uint64_t base = static_cast<std::uint64_t>(i) * 4;
        if (c.diagonal()) {
            c.primary = evaluate_branch(job, plan, row, col, Branch::Diagonal, base);
        } else {
            c.primary = evaluate_branch(job, plan, row, col, Branch::U, base);
            c.secondary = evaluate_branch(job, plan, row, col, Branch::V, base + 1);
        }
    });
    return contributions;
}

double estimate_at(const std::vector<KeyContribution>& contributions, std::size_t k) {
    std::int64_t trace = 0;
    double sum = 0.0;
    for (const auto& c : contributions) {
        if (c.diagonal()) trace += c.weight;
        sum += static_cast<double>(c.weight) * c.value_at(k);
    }
    if (trace == 0)
        throw ZeroTrace("population trace is zero; expectation values are undefined");
    return sum / static_cast<double>(trace);
}

double psip_expectation(const EvolutionJob& job, double t) {
    EvolutionJob single = job;
    if (t == 0.0) {
        single.grid = TimeGrid{job.trotter_dt, 1};
    } else {
        single.grid = TimeGrid{t, 2};
    }
    const auto contributions = evaluate_contributions(single);
    return estimate_at(contributions, static_cast<std::size_t>(single.grid.points - 1));
}

namespace {

SeriesMetadata make_metadata(const EvolutionJob& job) {
    SeriesMetadata meta;
    meta.sites = job.population->sites();
    meta.trace = 0;
    for (const auto& [key, w] : job.population->weights())
        if (key.first == key.second) meta.trace += w;
    meta.total_weight = job.population->total_absolute_weight();
    meta.key_count = job.population->entry_count();
    meta.population_seed = job.population->seed();
    meta.population_hash = fnv1a64(population_to_string(*job.population));
    meta.shots = job.mode.shots;
    meta.shot_seed = job.mode.seed;
    meta.readout_flip = job.noise.readout_flip;
    meta.angle_bias_offset = job.noise.angle_bias_offset;
    meta.angle_bias_slope = job.noise.angle_bias_slope;
    meta.grid_dt = job.grid.spacing;
    meta.trotter_dt = job.trotter_dt;
    meta.beta = job.population->beta();
    meta.segments = job.segments;
    return meta;
}

ObservableSeries series_from_values(const EvolutionJob& job,
                                    const std::vector<double>& values) {
    ObservableSeries series;
    series.meta = make_metadata(job);
    series.points.resize(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        series.points[k].t = job.grid.at(static_cast<int>(k));
        series.points[k].value = values[k];
    }
    return series;
}

std::vector<double> values_from_contributions(
    const std::vector<KeyContribution>& contributions, int points) {
    std::vector<double> values(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k)
        values[static_cast<std::size_t>(k)] =
            estimate_at(contributions, static_cast<std::size_t>(k));
    return values;
}

// ---- bootstrap helpers ----------------------------------------------------

// Exact for modest n*p, normal-approximated when n*p*(1-p) is large; the
// bootstrap standard error is insensitive to binomial tail detail.
std::int64_t binomial_draw(std::int64_t n, double p, PhiloxRng& rng) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    if (p > 0.5) return n - binomial_draw(n, 1.0 - p, rng);
    const double np = static_cast<double>(n) * p;
    if (np * (1.0 - p) > 30.0) {
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        const double z = std::sqrt(-2.0 * std::log(1.0 - u1)) *
                         std::cos(2.0 * 3.14159265358979323846 * u2);
        const double mean = np;
        const double sd = std::sqrt(np * (1.0 - p));
        const double draw = std::round(mean + sd * z);
        return std::clamp<std::int64_t>(static_cast<std::int64_t>(draw), 0, n);
    }
    // Geometric-skip count of successes: O(n*p + 1) expected draws.
    const double log_q = std::log1p(-p);
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    while (true) {
        const double u = rng.uniform();
        const double skip = std::floor(std::log1p(-u) / log_q) + 1.0;
        trials += static_cast<std::int64_t>(skip);
        if (trials > n) break;
        ++successes;
    }
    return successes;
}

// Multinomial counts via conditional binomials, in slot order.
void multinomial_draw(std::int64_t n, const std::vector<std::int64_t>& mass,
                      std::vector<std::int64_t>& out, PhiloxRng& rng) {
    out.assign(mass.size(), 0);
    std::int64_t remaining_mass = 0;
    for (std::int64_t m : mass) remaining_mass += m;
    std::int64_t remaining = n;
    for (std::size_t i = 0; i < mass.size() && remaining > 0; ++i) {
        if (mass[i] <= 0) continue;
        if (mass[i] >= remaining_mass) {
            out[i] = remaining;
            remaining = 0;
            break;
        }
        const double p = static_cast<double>(mass[i]) / static_cast<double>(remaining_mass);
        const std::int64_t c = binomial_draw(remaining, p, rng);
        out[i] = c;
        remaining -= c;
        remaining_mass -= mass[i];
    }
}

std::vector<double> stddev_over(const std::vector<std::vector<double>>& rows,
                                std::size_t points) {
    std::vector<double> out(points, 0.0);
    if (rows.size() < 2) return out;
    for (std::size_t k = 0; k < points; ++k) {
        double mean = 0.0;
        for (const auto& r : rows) mean += r[k];
        mean /= static_cast<double>(rows.size());
        double ss = 0.0;
        for (const auto& r : rows) {
            const double d = r[k] - mean;
            ss += d * d;
        }
        out[k] = std::sqrt(ss / static_cast<double>(rows.size() - 1));
    }
    return out;
}

}  // namespace

ObservableSeries expectation_series(const EvolutionJob& job) {
    const auto contributions = evaluate_contributions(job);
    return series_from_values(job,
                              values_from_contributions(contributions, job.grid.points));
}

ObservableSeries bootstrap_series(const EvolutionJob& job, int n_resamples,
                                  std::uint64_t bootstrap_seed) {
    if (n_resamples < 2) throw InvalidArgument("need at least 2 bootstrap resamples");
    const auto contributions = evaluate_contributions(job);
    const std::size_t points = static_cast<std::size_t>(job.grid.points);

    ObservableSeries series =
        series_from_values(job, values_from_contributions(contributions, job.grid.points));
    series.meta.bootstrap_resamples = n_resamples;
    series.meta.bootstrap_seed = bootstrap_seed;

    // Psip-noise component: resample the psip multiset by key.
    std::vector<std::int64_t> mass(contributions.size());
    std::int64_t total = 0;
    for (std::size_t i = 0; i < contributions.size(); ++i) {
        mass[i] = std::llabs(contributions[i].weight);
        total += mass[i];
    }

    std::vector<std::vector<double>> psip_rows(static_cast<std::size_t>(n_resamples));
    parallel_for(psip_rows.size(), [&](std::size_t r) {
        PhiloxRng rng(bootstrap_seed, PhiloxRng::Purpose::Bootstrap, 1,
                      static_cast<std::uint64_t>(r));
        std::vector<std::int64_t> counts;
        multinomial_draw(total, mass, counts, rng);
        std::vector<double> row(points, 0.0);
        std::int64_t trace = 0;
        for (std::size_t i = 0; i < contributions.size(); ++i) {
            if (counts[i] == 0) continue;
            const std::int64_t signed_count =
                contributions[i].weight < 0 ? -counts[i] : counts[i];
            if (contributions[i].diagonal()) trace += signed_count;
            for (std::size_t k = 0; k < points; ++k)
                row[k] += static_cast<double>(signed_count) *
                          contributions[i].value_at(k);
        }
        if (trace == 0) {
            // Degenerate resample (no diagonal mass); reuse the point estimate
            // so it contributes zero spread rather than an undefined ratio.
            for (std::size_t k = 0; k < points; ++k) row[k] = series.points[k].value;
        } else {
            for (std::size_t k = 0; k < points; ++k)
                row[k] /= static_cast<double>(trace);
        }
        psip_rows[r] = std::move(row);
    });
    const std::vector<double> psip_err = stddev_over(psip_rows, points);

    // Shot-noise component: redraw the per-program outcome tallies.
    std::vector<double> shot_err(points, 0.0);
    if (!job.mode.exact_expectation()) {
        std::int64_t base_trace = 0;
        for (const auto& c : contributions)
            if (c.diagonal()) base_trace += c.weight;
        std::vector<std::vector<double>> shot_rows(static_cast<std::size_t>(n_resamples));
        const int sites = job.lattice.sites;
        const std::int64_t shots = job.mode.shots;
        parallel_for(shot_rows.size(), [&](std::size_t r) {
            PhiloxRng rng(bootstrap_seed, PhiloxRng::Purpose::Bootstrap, 2,
                          static_cast<std::uint64_t>(r));
            std::vector<double> row(points, 0.0);
            std::vector<std::int64_t> redraw;
            for (std::size_t k = 0; k < points; ++k) {
                double sum = 0.0;
                for (const auto& c : contributions) {
                    auto resampled_value = [&](const KeyContribution::BranchSeries& b) {
                        multinomial_draw(shots, b.outcome_counts[k], redraw, rng);
                        std::int64_t mag = 0;
                        for (std::size_t level = 0; level < redraw.size(); ++level)
                            mag += redraw[level] *
                                   (sites - 2 * static_cast<std::int64_t>(level));
                        return static_cast<double>(mag) /
                               (static_cast<double>(shots) * sites);
                    };
                    double value;
                    if (c.diagonal()) {
                        value = resampled_value(c.primary);
                    } else {
                        const double u = resampled_value(c.primary);
                        const double v = resampled_value(c.secondary);
                        value = 0.5 * (u - v);
                    }
                    sum += static_cast<double>(c.weight) * value;
                }
                row[k] = sum / static_cast<double>(base_trace);
            }
            shot_rows[r] = std::move(row);
        });
        shot_err = stddev_over(shot_rows, points);
    }

    for (std::size_t k = 0; k < points; ++k)
        series.points[k].stat_err =
            std::hypot(psip_err[k], shot_err[k]);
    return series;
}

ObservableSeries rescale_by_t0(const ObservableSeries& series) {
    if (series.points.empty()) throw InvalidArgument("cannot rescale an empty series");
    const double t0 = series.points.front().value;
    if (t0 == 0.0)
        throw DivisionByZeroAtT0("series value at t=0 is zero; cannot rescale");
    ObservableSeries out = series;
    for (auto& p : out.points) {
        p.value /= t0;
        p.stat_err /= std::abs(t0);
        p.sys_err /= std::abs(t0);
    }
    out.meta.rescaled = true;
    return out;
}

CalibrationResult calibrate(const EvolutionJob& job, const HamiltonianParams& h_prime,
                            const HamiltonianParams& h0, bool rescaled) {
    if (h_prime.mu_x != 0.0)
        throw InvalidArgument(
            "calibration Hamiltonian must be diagonal in the computational basis");
    EvolutionJob cal = job;
    cal.segments = {Schedule::Segment{0.0, h_prime}};
    ObservableSeries pipeline = expectation_series(cal);

    const DenseOperator h0_dense = dense_hamiltonian(h0, job.lattice);
    const DenseOperator rho = thermal_state(h0_dense, job.population->beta());
    const DenseOperator obs = observable_mx(job.lattice.sites);
    OracleSeries oracle(Schedule{h0, cal.segments}, job.lattice, rho, obs);

    std::vector<double> exact(static_cast<std::size_t>(job.grid.points));
    for (int k = 0; k < job.grid.points; ++k)
        exact[static_cast<std::size_t>(k)] = oracle.value_at(job.grid.at(k));

    if (rescaled) {
        pipeline = rescale_by_t0(pipeline);
        const double e0 = exact.front();
        if (e0 == 0.0)
            throw DivisionByZeroAtT0(
                "exact calibration reference is zero at t=0; cannot rescale");
        for (double& e : exact) e /= e0;
    }

    CalibrationResult result;
    result.differences.resize(exact.size());
    double ss = 0.0;
    for (std::size_t k = 0; k < exact.size(); ++k) {
        result.differences[k] = pipeline.points[k].value - exact[k];
        ss += result.differences[k] * result.differences[k];
    }
    result.quadrature_average = std::sqrt(ss / static_cast<double>(exact.size()));
    return result;
}

}  // namespace erhoq
