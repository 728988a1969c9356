// Acceptance suite: end-to-end checks of the full pipeline at the two
// headline configurations plus the supporting correctness properties.  Each
// criterion prints one PASS/FAIL line; the exit code is the failure count.
//
// argv[1] (optional): path to the CLI binary, used by the determinism and
// format checks.  Without it those checks run at the library level only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dmqmc.hpp"
#include "errors.hpp"
#include "estimator.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "series_io.hpp"

using namespace erhoq;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

struct Stats {
    double mean = 0;
    double stddev = 0;
    double sem = 0;
};

Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    s.sem = s.stddev / std::sqrt(static_cast<double>(xs.size()));
    return s;
}

EvolutionJob make_job(const PsipPopulation& pop, const HamiltonianParams& h1,
                      double t_max, double grid_dt, double trotter_dt) {
    EvolutionJob job;
    job.population = &pop;
    job.lattice = Lattice::periodic_chain(pop.sites());
    job.segments = {{0.0, h1}};
    job.grid = TimeGrid::up_to(t_max, grid_dt);
    job.trotter_dt = trotter_dt;
    return job;
}

PsipPopulation integer_population(const DenseOperator& rho, int sites, double scale) {
    PsipPopulation pop(sites, 1.0, 0, 0);
    const int dim = 1 << sites;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const auto w =
                static_cast<std::int64_t>(std::llround(rho(r, c).real() * scale));
            if (w != 0)
                pop.deposit(static_cast<std::uint32_t>(r),
                            static_cast<std::uint32_t>(c), w);
        }
    return pop;
}

// ---------------------------------------------------------------------
// 1. Five-site chain against the exact reference (ideal backend).
// ---------------------------------------------------------------------

// Expected (infinite-population) sampled matrix: the stochastic step is, in
// expectation, the Euler map rho -> rho - (dbeta/2)(H rho + rho H), so with a
// uniform diagonal start the expected weights are (1 - dbeta E_i)^steps in
// the eigenbasis, not exp(-beta E_i).
DenseOperator euler_expected_thermal(const DenseOperator& h, double beta,
                                     double dbeta) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
    const int steps = static_cast<int>(std::llround(beta / dbeta));
    Eigen::VectorXcd w(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w(i) = std::pow(1.0 - dbeta * es.eigenvalues()(i), steps);
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

Criterion criterion_five_site_chain() {
    const double t_start = now_seconds();
    const Lattice lat = Lattice::periodic_chain(5);
    const HamiltonianParams h0{1, 1, 0};
    const HamiltonianParams h1{1, -1, 0};
    const std::vector<Schedule::Segment> segs{{0.0, h1}};
    const DenseOperator rho = thermal_state(dense_hamiltonian(h0, lat), 1.0);
    const DenseOperator obs = observable_mx(5);
    const TimeGrid grid = TimeGrid::up_to(3.0, 0.1);

    std::vector<double> exact(static_cast<std::size_t>(grid.points));
    for (int k = 0; k < grid.points; ++k)
        exact[static_cast<std::size_t>(k)] = exact_observable(segs, rho, obs, lat, grid.at(k));

    DmqmcParams params;
    params.beta = 1.0;
    params.delta_beta = 0.04;
    params.n_initial = 5000;

    int points_total = 0, within_3sigma = 0, within_1sigma = 0;
    double worst_pull = 0, worst_t = 0;
    for (int seed = 1; seed <= 5; ++seed) {
        params.seed = static_cast<std::uint64_t>(seed);
        const PsipPopulation pop = run_dmqmc(params, h0, lat);
        EvolutionJob job = make_job(pop, h1, 3.0, 0.1, 0.1);
        const ObservableSeries series = bootstrap_series(job, 1000, 7000 + seed);
        for (int k = 0; k < grid.points; ++k) {
            const auto& p = series.points[static_cast<std::size_t>(k)];
            const double pull =
                std::abs(p.value - exact[static_cast<std::size_t>(k)]) /
                std::max(p.stat_err, 1e-300);
            ++points_total;
            if (pull <= 3.0) ++within_3sigma;
            if (pull <= 1.0) ++within_1sigma;
            if (pull > worst_pull) {
                worst_pull = pull;
                worst_t = grid.at(k);
            }
        }
    }
    const double runtime = now_seconds() - t_start;
    const double coverage =
        static_cast<double>(within_1sigma) / static_cast<double>(points_total);
    const bool pass = within_3sigma == points_total && coverage >= 0.60 &&
                      runtime < 600.0;

    // Context for the comparison: the deterministic discretization systematic
    // (Euler dbeta bias of the sampler plus trotter dt bias of the backend),
    // independent of any seed.
    const DenseOperator rho_euler =
        euler_expected_thermal(dense_hamiltonian(h0, lat), 1.0, params.delta_beta);
    double max_systematic = 0;
    for (int k = 0; k < grid.points; ++k) {
        const double sim =
            trotterized_observable(segs, rho_euler, obs, lat, grid.at(k), 0.1);
        max_systematic = std::max(
            max_systematic, std::abs(sim - exact[static_cast<std::size_t>(k)]));
    }

    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%d/%d points within 3 bootstrap sigma, %.0f%% within 1 sigma "
                  "(need 100%% and >=60%%), worst |dev|/sigma=%.1f at t=%.1f, "
                  "runtime %.1fs (limit 600s); deterministic dbeta+dt systematic "
                  "reaches %.3f, far above the psip-resampling bootstrap sigma "
                  "(~0.001-0.002)",
                  within_3sigma, points_total, 100.0 * coverage, worst_pull, worst_t,
                  runtime, max_systematic);
    return {1, "five-site chain vs exact reference", pass, buf};
}

// ---------------------------------------------------------------------
// 2. Single spin on the noisy sampled backend, rescaled and calibrated.
// ---------------------------------------------------------------------
Criterion criterion_single_spin_noisy() {
    const Lattice lat = Lattice::periodic_chain(1);
    const HamiltonianParams h0{0, 1, 1};
    const HamiltonianParams h1{0, -1, 1};
    const HamiltonianParams h_prime{0, 0, 1};
    const TimeGrid grid = TimeGrid::up_to(3.0, 0.2);

    std::vector<double> analytic(static_cast<std::size_t>(grid.points));
    for (int k = 0; k < grid.points; ++k)
        analytic[static_cast<std::size_t>(k)] = single_spin_mx(h0, h1, 1.0, grid.at(k));
    const double analytic_t0 = analytic[0];

    DmqmcParams params;
    params.beta = 1.0;
    params.delta_beta = 0.04;
    params.n_initial = 1000;

    bool rescaled_ok = true;
    bool calib_ok = true;
    std::vector<double> raw_t0_values;
    double worst_ratio = 0, worst_t = 0;
    double quad_sum = 0;
    const int seeds = 12;
    for (int seed = 1; seed <= seeds; ++seed) {
        params.seed = static_cast<std::uint64_t>(seed);
        const PsipPopulation pop = run_dmqmc(params, h0, lat);
        EvolutionJob job = make_job(pop, h1, 3.0, 0.2, 0.2);
        job.noise.readout_flip = 0.1;
        job.mode = ExecutionMode::sampled(128, 900 + seed);

        const ObservableSeries raw = bootstrap_series(job, 1000, 500 + seed);
        raw_t0_values.push_back(raw.points[0].value);

        const CalibrationResult cal = calibrate(job, h_prime, h0, true);
        if (!(cal.quadrature_average > 0) ||
            cal.differences.size() != static_cast<std::size_t>(grid.points))
            calib_ok = false;
        quad_sum += cal.quadrature_average;

        const ObservableSeries rescaled = rescale_by_t0(raw);
        for (int k = 0; k < grid.points; ++k) {
            const auto& p = rescaled.points[static_cast<std::size_t>(k)];
            const double combined =
                std::hypot(p.stat_err, cal.quadrature_average);
            const double ratio =
                std::abs(p.value - analytic[static_cast<std::size_t>(k)] / analytic_t0) /
                std::max(combined, 1e-300);
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                worst_t = grid.at(k);
            }
            if (ratio > 3.0) rescaled_ok = false;
        }
    }

    // Readout noise biases the raw series low by roughly (1-2p).
    const Stats raw_t0 = stats_of(raw_t0_values);
    const bool biased_low = raw_t0.mean + 3.0 * raw_t0.sem < analytic_t0;

    const bool pass = biased_low && rescaled_ok && calib_ok;
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "raw t=0 mean %.3f+-%.3f over %d seeds vs analytic %.3f "
                  "(biased low: %s); rescaled worst |dev|/combined=%.2f at t=%.1f "
                  "(need <=3); calibration quadrature avg %.3f",
                  raw_t0.mean, raw_t0.sem, seeds, analytic_t0,
                  biased_low ? "yes" : "no", worst_ratio, worst_t, quad_sum / seeds);
    return {2, "single spin, noisy sampled backend, rescaled + calibrated", pass, buf};
}

// ---------------------------------------------------------------------
// 3. DMQMC correctness: matrix convergence and event frequencies.
// ---------------------------------------------------------------------
Criterion criterion_dmqmc_correctness() {
    const Lattice lat = Lattice::periodic_chain(2);
    const HamiltonianParams h0{1, 1, 0};
    const DenseOperator rho = thermal_state(dense_hamiltonian(h0, lat), 1.0);
    const DenseOperator rho_n = rho / rho.trace().real();

    // Seed-averaged normalized matrix vs the dense thermal state.  The
    // imaginary-time step is refined well below the paper's value so the
    // first-order Euler bias sits inside the 1000-seed error band.
    DmqmcParams params;
    params.beta = 1.0;
    params.delta_beta = 0.002;
    params.n_initial = 1000;
    const int seeds = 1000;
    std::vector<std::vector<double>> entries(16);
    for (int seed = 0; seed < seeds; ++seed) {
        params.seed = static_cast<std::uint64_t>(20000 + seed);
        const PsipPopulation pop = run_dmqmc(params, h0, lat);
        const double trace = static_cast<double>(trace_estimate(pop));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                const auto it = pop.weights().find(
                    {static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)});
                const double w =
                    it == pop.weights().end() ? 0.0 : static_cast<double>(it->second);
                entries[static_cast<std::size_t>(r * 4 + c)].push_back(w / trace);
            }
    }
    bool matrix_ok = true;
    double worst_entry_pull = 0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const Stats s = stats_of(entries[static_cast<std::size_t>(r * 4 + c)]);
            const double pull = std::abs(s.mean - rho_n(r, c).real()) / s.sem;
            worst_entry_pull = std::max(worst_entry_pull, pull);
            if (pull > 3.0) matrix_ok = false;
        }

    // Instrumented event frequencies: single-spin psips under -sx - sz give
    // column/row spawn p = dbeta/2 per psip, clone p = dbeta for (up,up),
    // death p = dbeta for (down,down).
    const Lattice one = Lattice::periodic_chain(1);
    const HamiltonianParams h_events{0, 1, 1};
    DmqmcParams ep;
    ep.beta = 1.0;
    ep.delta_beta = 0.05;
    ep.n_initial = 1;
    ep.seed = 4242;
    const int trials = 100000;
    std::int64_t col_spawns = 0, row_spawns = 0, clones = 0, deaths = 0;
    for (int trial = 0; trial < trials; ++trial) {
        PsipPopulation pop(1, 0.0, ep.seed, 2);
        pop.deposit(0, 0, +1);
        pop.deposit(1, 1, +1);
        StepStats st;
        dmqmc_step(pop, ep, h_events, one, trial, &st);
        col_spawns += st.column_spawns;
        row_spawns += st.row_spawns;
        clones += st.clones;
        deaths += st.deaths;
    }
    // Two psips sample each spawn event; one psip each for clone/death.
    const double p_spawn = 0.5 * ep.delta_beta;
    const double p_dc = ep.delta_beta;
    auto within = [&](std::int64_t count, double n, double p) {
        return std::abs(count - n * p) <= 3.0 * std::sqrt(n * p * (1 - p));
    };
    const bool events_ok = within(col_spawns, 2.0 * trials, p_spawn) &&
                           within(row_spawns, 2.0 * trials, p_spawn) &&
                           within(clones, trials, p_dc) && within(deaths, trials, p_dc);

    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "matrix: worst entry |dev|/sem=%.2f over 16 entries x %d seeds "
                  "(need <=3, dbeta=%.3f); events over %d trials: col=%lld row=%lld "
                  "clone=%lld death=%lld (expected %.0f/%.0f/%.0f/%.0f)",
                  worst_entry_pull, seeds, params.delta_beta, trials,
                  static_cast<long long>(col_spawns), static_cast<long long>(row_spawns),
                  static_cast<long long>(clones), static_cast<long long>(deaths),
                  2.0 * trials * p_spawn, 2.0 * trials * p_spawn, trials * p_dc,
                  trials * p_dc);
    return {3, "DMQMC matrix convergence and event frequencies", matrix_ok && events_ok,
            buf};
}

// ---------------------------------------------------------------------
// 4. First-order trotter scaling through the circuit backend.
// ---------------------------------------------------------------------
Criterion criterion_trotter_scaling() {
    const Lattice lat = Lattice::periodic_chain(2);
    const HamiltonianParams h0{1, 1, 0};
    const HamiltonianParams h1{1, -1, 0};
    const std::vector<Schedule::Segment> segs{{0.0, h1}};
    const DenseOperator rho = thermal_state(dense_hamiltonian(h0, lat), 1.0);
    const DenseOperator obs = observable_mx(2);
    const PsipPopulation pop = integer_population(rho, 2, 1e7);
    const double exact = exact_observable(segs, rho, obs, lat, 1.0);

    std::vector<double> log_dt, log_err;
    std::string table;
    for (const double dt : {0.2, 0.1, 0.05, 0.025}) {
        EvolutionJob job = make_job(pop, h1, 1.0, 1.0, dt);
        const ObservableSeries series = expectation_series(job);
        const double err = std::abs(series.points[1].value - exact);
        log_dt.push_back(std::log(dt));
        log_err.push_back(std::log(err));
        char row[64];
        std::snprintf(row, sizeof(row), " dt=%.3f err=%.2e", dt, err);
        table += row;
    }
    // Least-squares slope of log err vs log dt.
    const std::size_t n = log_dt.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += log_dt[i];
        sy += log_err[i];
        sxx += log_dt[i] * log_dt[i];
        sxy += log_dt[i] * log_err[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool pass = slope >= 0.8 && slope <= 1.2;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "log-log slope %.3f (need within [0.8, 1.2]);%s",
                  slope, table.c_str());
    return {4, "first-order trotter error scaling", pass, buf};
}

// ---------------------------------------------------------------------
// 5. Hermitization identity: circuit u/v evaluation vs dense algebra.
// ---------------------------------------------------------------------
Criterion criterion_hermitization_identity() {
    PhiloxRng rng(2025, PhiloxRng::Purpose::Bootstrap, 11, 11);
    double worst = 0;
    int checked = 0;
    const double t = 0.8, dt = 0.2;
    const HamiltonianParams h1{1, -1, 0.4};
    for (int trial = 0; trial < 100; ++trial) {
        const int sites = 1 + static_cast<int>(rng.next_u64() % 4);  // 1..4
        const Lattice lat = Lattice::periodic_chain(sites);
        const int dim = 1 << sites;
        const auto abits = static_cast<std::uint32_t>(rng.uniform_pow2(sites));
        auto bbits = static_cast<std::uint32_t>(rng.uniform_pow2(sites));
        if (abits == bbits)
            bbits ^= (1u << (rng.next_u64() % static_cast<std::uint64_t>(sites)));

        PsipPopulation pop(sites, 1.0, 0, 1);
        pop.deposit(bbits, abits, +1);
        pop.deposit(abits, abits, +1);
        EvolutionJob job = make_job(pop, h1, t, t, dt);
        const auto contributions = evaluate_contributions(job);
        double uv = 0;
        for (const auto& c : contributions)
            if (!c.diagonal()) uv = c.value_at(1);

        DenseOperator herm = DenseOperator::Zero(dim, dim);
        herm(bbits, abits) += 0.5;
        herm(abits, bbits) += 0.5;
        DenseOperator u = DenseOperator::Identity(dim, dim);
        const DenseOperator block = trotter_step_operator(h1, lat, dt);
        for (int s = 0; s < 4; ++s) u = block * u;
        const double dense =
            ((observable_mx(sites) * u * herm * u.adjoint()).trace()).real();
        worst = std::max(worst, std::abs(uv - dense));
        ++checked;
    }
    const bool pass = worst < 1e-10;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d random off-diagonal pairs, worst |circuit - dense| = %.2e (need < 1e-10)",
                  checked, worst);
    return {5, "hermitization identity (u/v circuits vs dense algebra)", pass, buf};
}

// ---------------------------------------------------------------------
// 6. Readout rescaling exactness.
// ---------------------------------------------------------------------
Criterion criterion_readout_rescaling() {
    const Lattice lat = Lattice::periodic_chain(2);
    const HamiltonianParams h0{1, 1, 0};
    const HamiltonianParams h1{1, -1, 0.3};
    const DenseOperator rho = thermal_state(dense_hamiltonian(h0, lat), 1.0);
    const PsipPopulation pop = integer_population(rho, 2, 1e6);

    EvolutionJob job = make_job(pop, h1, 2.0, 0.2, 0.2);
    const ObservableSeries clean = rescale_by_t0(expectation_series(job));
    double worst = 0;
    for (const double p : {0.05, 0.1, 0.2}) {
        job.noise.readout_flip = p;
        const ObservableSeries noisy = rescale_by_t0(expectation_series(job));
        for (std::size_t k = 0; k < clean.points.size(); ++k)
            worst = std::max(worst,
                             std::abs(noisy.points[k].value - clean.points[k].value));
    }
    const bool pass = worst < 1e-10;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "worst rescaled |noisy - clean| over p in {0.05,0.1,0.2} = %.2e "
                  "(need < 1e-10)",
                  worst);
    return {6, "readout-noise rescaling exactness", pass, buf};
}

// ---------------------------------------------------------------------
// 7. Determinism and file formats (drives the real CLI when available).
// ---------------------------------------------------------------------
std::string slurp(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream oss;
    oss << is.rdbuf();
    return oss.str();
}

Criterion criterion_determinism(const std::string& cli) {
    std::string detail;
    bool pass = true;

    // Library-level: fixed seed, byte-identical population text and CSV.
    {
        const Lattice lat = Lattice::periodic_chain(3);
        DmqmcParams params;
        params.beta = 0.6;
        params.delta_beta = 0.04;
        params.n_initial = 400;
        params.seed = 17;
        const PsipPopulation a = run_dmqmc(params, {1, 1, 0}, lat);
        const PsipPopulation b = run_dmqmc(params, {1, 1, 0}, lat);
        const std::string text = population_to_string(a);
        if (text != population_to_string(b)) {
            pass = false;
            detail += "population text differs across identical runs; ";
        }
        std::istringstream is(text);
        if (population_to_string(load_population(is)) != text) {
            pass = false;
            detail += "population round-trip not byte-identical; ";
        }
        EvolutionJob job = make_job(a, {1, -1, 0}, 1.0, 0.2, 0.1);
        const std::string csv1 = series_to_csv(bootstrap_series(job, 200, 5));
        EvolutionJob job2 = make_job(b, {1, -1, 0}, 1.0, 0.2, 0.1);
        const std::string csv2 = series_to_csv(bootstrap_series(job2, 200, 5));
        if (csv1 != csv2) {
            pass = false;
            detail += "csv differs across identical runs; ";
        }
    }

    if (cli.empty()) {
        detail += "library-level checks only (no CLI path given)";
        return {7, "determinism and file formats", pass, detail};
    }

    const fs::path work = "acceptance_cli_work";
    fs::remove_all(work);
    fs::create_directories(work);
    const fs::path cfg = work / "run.conf";
    {
        std::ofstream os(cfg);
        os << "sites = 2\nh0_j_z = 1\nh0_mu_x = 1\nh0_mu_z = 0\n"
              "h1_j_z = 1\nh1_mu_x = -1\nh1_mu_z = 0\n"
              "beta = 0.2\ndelta_beta = 0.04\nn_initial = 100\nseed = 9\n"
              "t_max = 0.4\ngrid_dt = 0.2\ntrotter_dt = 0.1\n"
              "bootstrap_resamples = 50\nbootstrap_seed = 4\n"
           << "population_file = " << (work / "pop.txt").string() << "\n";
    }
    auto run_cli = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " > " +
                                (work / "cli.log").string() + " 2>&1";
        return std::system(cmd.c_str());
    };
    auto expect_same = [&](const fs::path& x, const fs::path& y, const char* what) {
        if (slurp(x) != slurp(y)) {
            pass = false;
            detail += std::string(what) + " not byte-identical; ";
        }
    };

    const std::string cfg_arg = "--config " + cfg.string();
    if (run_cli("thermalize " + cfg_arg + " --out " + (work / "p1.txt").string()) != 0 ||
        run_cli("thermalize " + cfg_arg + " --out " + (work / "p2.txt").string()) != 0) {
        pass = false;
        detail += "thermalize failed; ";
    } else {
        expect_same(work / "p1.txt", work / "p2.txt", "population files");
        fs::copy_file(work / "p1.txt", work / "pop.txt",
                      fs::copy_options::overwrite_existing);
        if (run_cli("evolve " + cfg_arg + " --out " + (work / "r1.csv").string()) != 0 ||
            run_cli("evolve " + cfg_arg + " --out " + (work / "r2.csv").string()) != 0) {
            pass = false;
            detail += "evolve failed; ";
        } else {
            expect_same(work / "r1.csv", work / "r2.csv", "result CSVs");
        }
        if (run_cli("exact " + cfg_arg + " --out " + (work / "e1.csv").string()) != 0 ||
            run_cli("exact " + cfg_arg + " --out " + (work / "e2.csv").string()) != 0) {
            pass = false;
            detail += "exact failed; ";
        } else {
            expect_same(work / "e1.csv", work / "e2.csv", "reference CSVs");
        }
    }
    if (pass) detail += "population files, CSVs and round-trips byte-identical";
    return {7, "determinism and file formats", pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    std::vector<Criterion> results;
    std::printf("erhoq acceptance suite\n");
    std::printf("----------------------\n");

    results.push_back(criterion_five_site_chain());
    results.push_back(criterion_single_spin_noisy());
    results.push_back(criterion_dmqmc_correctness());
    results.push_back(criterion_trotter_scaling());
    results.push_back(criterion_hermitization_identity());
    results.push_back(criterion_readout_rescaling());
    results.push_back(criterion_determinism(cli));

    int failures = 0;
    for (const Criterion& c : results) {
        std::printf("[%d] %-55s %s\n", c.id, c.name.c_str(), c.pass ? "PASS" : "FAIL");
        std::printf("    %s\n", c.detail.c_str());
        if (!c.pass) ++failures;
    }
    std::printf("----------------------\n");
    std::printf("%zu criteria, %d failed, total %.1fs\n", results.size(), failures,
                now_seconds());
    return failures;
}
