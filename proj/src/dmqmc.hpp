#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "spin_model.hpp"

namespace erhoq {

// One stochastic walker: the basis operator |row><col| carrying sign chi.
struct Psip {
    SpinBasisState row;
    SpinBasisState col;
    int sign = +1;
};

struct DmqmcParams {
    double beta = 1.0;
    double delta_beta = 0.04;
    std::int64_t n_initial = 1000;
    std::uint64_t seed = 0;
    double weight_ceiling = 1e7;

    // Throws InvalidArgument unless beta >= 0, delta_beta > 0, n_initial >= 1
    // and beta/delta_beta is whole to 1e-9.
    void validate() const;
    int step_count() const;
};

// Sparse signed approximation to exp(-beta*H0): net integer weights keyed by
// (row, col) bit patterns.  Coincident opposite-sign psips cancel on insert,
// so no stored entry has weight zero.
class PsipPopulation {
public:
    using Key = std::pair<std::uint32_t, std::uint32_t>;

    PsipPopulation() = default;
    PsipPopulation(int sites, double beta, std::uint64_t seed, std::int64_t n_initial);

    int sites() const { return sites_; }
    double beta() const { return beta_; }
    std::uint64_t seed() const { return seed_; }
    std::int64_t n_initial() const { return n_initial_; }

    const std::map<Key, std::int64_t>& weights() const { return weights_; }
    bool empty() const { return weights_.empty(); }
    std::size_t entry_count() const { return weights_.size(); }

    // Adds `delta` psips at (row, col); erases the entry if the net hits zero.
    void deposit(std::uint32_t row, std::uint32_t col, std::int64_t delta);

    std::int64_t total_absolute_weight() const;
    std::int64_t total_signed_weight() const;

    void set_beta(double beta) { beta_ = beta; }

private:
    std::map<Key, std::int64_t> weights_;
    int sites_ = 0;
    double beta_ = 0.0;
    std::uint64_t seed_ = 0;
    std::int64_t n_initial_ = 0;
};

// Per-step event tally, for instrumented statistical tests.
struct StepStats {
    std::int64_t column_spawns = 0;
    std::int64_t row_spawns = 0;
    std::int64_t deaths = 0;
    std::int64_t clones = 0;
};

// n_initial psips placed uniformly at random on the diagonal, all chi = +1.
PsipPopulation init_population(const DmqmcParams& params, int sites);

// One Euler step of the Bloch equation.  Every psip independently samples,
// from the start-of-step population: a spawn onto |c><col| for each column
// connection c of its row state, a spawn onto |row><c| for each row
// connection c of its column state, and death (positive diagonal sum) or
// cloning (negative).  Event counts use stochastic rounding
// floor(p) + Bernoulli(p - floor(p)); a spawned child's sign is the parent's
// times minus the sign of the connecting element.  Children and clones are
// deposited at the end of the step, which also annihilates coincident
// opposite-sign psips.  Throws PopulationExplosion past the weight ceiling.
void dmqmc_step(PsipPopulation& pop, const DmqmcParams& params,
                const HamiltonianParams& h0, const Lattice& lat, int step_index,
                StepStats* stats = nullptr);

// init_population followed by round(beta/delta_beta) steps.
PsipPopulation run_dmqmc(const DmqmcParams& params, const HamiltonianParams& h0,
                         const Lattice& lat);

// Sum of diagonal net weights; throws ZeroTrace when zero.
std::int64_t trace_estimate(const PsipPopulation& pop);

// --------------------------------------------------------------------------
// Population file: `N=`, `beta=`, `seed=`, `n_initial=` header lines, then
// one `<row bits> <col bits> <net weight>` line per entry, site 0 first,
// entries ordered by (row, col).  This text is the handoff boundary between
// the classical and quantum halves of the pipeline.
// --------------------------------------------------------------------------

void save_population(const PsipPopulation& pop, std::ostream& os);
std::string population_to_string(const PsipPopulation& pop);

// Throws ParseError naming the offending 1-based line.
PsipPopulation load_population(std::istream& is);

}  // namespace erhoq
