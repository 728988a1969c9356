#include "dmqmc.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"
#include "text_format.hpp"

namespace erhoq {

void DmqmcParams::validate() const {
    if (!(beta >= 0.0)) throw InvalidArgument("beta must be >= 0");
    if (!(delta_beta > 0.0)) throw InvalidArgument("delta_beta must be > 0");
    if (n_initial < 1) throw InvalidArgument("n_initial must be >= 1");
    if (!(weight_ceiling > 0.0)) throw InvalidArgument("weight ceiling must be > 0");
    const double steps = beta / delta_beta;
    if (std::abs(steps - std::round(steps)) > 1e-9)
        throw InvalidArgument("beta must be a whole number of delta_beta steps");
}

int DmqmcParams::step_count() const {
    return static_cast<int>(std::llround(beta / delta_beta));
}

PsipPopulation::PsipPopulation(int sites, double beta, std::uint64_t seed,
                               std::int64_t n_initial)
    : sites_(sites), beta_(beta), seed_(seed), n_initial_(n_initial) {
    if (sites < 1 || sites > kMaxSites)
        throw InvalidArgument("site count must be in [1, " + format_int(kMaxSites) + "]");
}

void PsipPopulation::deposit(std::uint32_t row, std::uint32_t col, std::int64_t delta) {
    if (delta == 0) return;
    const Key key{row, col};
    auto it = weights_.find(key);
    if (it == weights_.end()) {
        weights_.emplace(key, delta);
        return;
    }
    it->second += delta;
    if (it->second == 0) weights_.erase(it);
}

std::int64_t PsipPopulation::total_absolute_weight() const {
    std::int64_t total = 0;
    for (const auto& [key, w] : weights_) total += std::llabs(w);
    return total;
}

std::int64_t PsipPopulation::total_signed_weight() const {
    std::int64_t total = 0;
    for (const auto& [key, w] : weights_) total += w;
    return total;
}

PsipPopulation init_population(const DmqmcParams& params, int sites) {
    params.validate();
    PsipPopulation pop(sites, 0.0, params.seed, params.n_initial);
    for (std::int64_t i = 0; i < params.n_initial; ++i) {
        PhiloxRng rng(params.seed, PhiloxRng::Purpose::PopulationInit, 0,
                      static_cast<std::uint64_t>(i));
        const auto site = static_cast<std::uint32_t>(rng.uniform_pow2(sites));
        pop.deposit(site, site, +1);
    }
    return pop;
}

namespace {

// floor(p) + Bernoulli(frac(p)): keeps the expected count exact when
// delta_beta * |H| pushes an event probability past one.
inline std::int64_t stochastic_round(double p, PhiloxRng& rng) {
    const double whole = std::floor(p);
    std::int64_t count = static_cast<std::int64_t>(whole);
    if (rng.uniform() < p - whole) ++count;
    return count;
}

struct KeyWork {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    std::int64_t weight = 0;
    double diag_sum = 0.0;  // <col|H|col> + <row|H|row>
};

}  // namespace

void dmqmc_step(PsipPopulation& pop, const DmqmcParams& params,
                const HamiltonianParams& h0, const Lattice& lat, int step_index,
                StepStats* stats) {
    if (pop.empty()) return;
    if (pop.sites() != lat.sites)
        throw InvalidArgument("population and lattice site counts differ");

    const int sites = lat.sites;
    const double dbeta = params.delta_beta;
    const bool flips = h0.mu_x != 0.0;
    // Single-spin-flip elements are all -mu_x, so the spawn probability and
    // child sign are shared by every connection.  A child's sign is the
    // parent's times minus the sign of the connecting element.
    const double element = -h0.mu_x;
    const double spawn_p = 0.5 * std::abs(element) * dbeta;
    const int child_sign_factor = element < 0.0 ? +1 : -1;

    std::vector<KeyWork> work;
    work.reserve(pop.entry_count());
    for (const auto& [key, w] : pop.weights()) {
        KeyWork kw;
        kw.row = key.first;
        kw.col = key.second;
        kw.weight = w;
        kw.diag_sum = diagonal_element(SpinBasisState(key.second, sites), h0, lat) +
                      diagonal_element(SpinBasisState(key.first, sites), h0, lat);
        work.push_back(kw);
    }

    // Children and deaths are merged only after every psip has sampled from
    // the start-of-step population.
    std::map<PsipPopulation::Key, std::int64_t> delta;
    StepStats tally;

    std::uint64_t psip_index = 0;
    for (const KeyWork& kw : work) {
        const std::int64_t count = std::llabs(kw.weight);
        const int sign = kw.weight < 0 ? -1 : +1;
        const double dc_p = 0.5 * std::abs(kw.diag_sum) * dbeta;
        for (std::int64_t r = 0; r < count; ++r, ++psip_index) {
            PhiloxRng rng(params.seed, PhiloxRng::Purpose::StepEvents,
                          static_cast<std::uint32_t>(step_index), psip_index);
            if (flips) {
                for (int i = 0; i < sites; ++i) {
                    const std::int64_t n = stochastic_round(spawn_p, rng);
                    if (n != 0) {
                        delta[{kw.row ^ (1u << i), kw.col}] += n * sign * child_sign_factor;
                        tally.column_spawns += n;
                    }
                }
                for (int i = 0; i < sites; ++i) {
                    const std::int64_t n = stochastic_round(spawn_p, rng);
                    if (n != 0) {
                        delta[{kw.row, kw.col ^ (1u << i)}] += n * sign * child_sign_factor;
                        tally.row_spawns += n;
                    }
                }
            }
            if (kw.diag_sum > 0.0) {
                const std::int64_t n = stochastic_round(dc_p, rng);
                if (n != 0) {
                    delta[{kw.row, kw.col}] -= n * sign;
                    tally.deaths += n;
                }
            } else if (kw.diag_sum < 0.0) {
                const std::int64_t n = stochastic_round(dc_p, rng);
                if (n != 0) {
                    delta[{kw.row, kw.col}] += n * sign;
                    tally.clones += n;
                }
            }
        }
    }

    for (const auto& [key, d] : delta) pop.deposit(key.first, key.second, d);
    pop.set_beta(pop.beta() + dbeta);

    if (static_cast<double>(pop.total_absolute_weight()) > params.weight_ceiling)
        throw PopulationExplosion(
            "psip population exceeded the weight ceiling of " +
            format_double(params.weight_ceiling) + " at beta=" +
            format_double(pop.beta()));

    if (stats) *stats = tally;
}

PsipPopulation run_dmqmc(const DmqmcParams& params, const HamiltonianParams& h0,
                         const Lattice& lat) {
    params.validate();
    PsipPopulation pop = init_population(params, lat.sites);
    const int steps = params.step_count();
    for (int s = 0; s < steps; ++s) dmqmc_step(pop, params, h0, lat, s);
    pop.set_beta(params.beta);
    return pop;
}

std::int64_t trace_estimate(const PsipPopulation& pop) {
    std::int64_t trace = 0;
    for (const auto& [key, w] : pop.weights())
        if (key.first == key.second) trace += w;
    if (trace == 0)
        throw ZeroTrace("population trace is zero; expectation values are undefined");
    return trace;
}

// ---------------------------------------------------------------------------
// Population file I/O
// ---------------------------------------------------------------------------

void save_population(const PsipPopulation& pop, std::ostream& os) {
    os << "N=" << format_int(pop.sites()) << '\n';
    os << "beta=" << format_double(pop.beta()) << '\n';
    os << "seed=" << format_int(static_cast<std::int64_t>(pop.seed())) << '\n';
    os << "n_initial=" << format_int(pop.n_initial()) << '\n';
    const int sites = pop.sites();
    for (const auto& [key, w] : pop.weights()) {
        os << SpinBasisState(key.first, sites).to_string() << ' '
           << SpinBasisState(key.second, sites).to_string() << ' '
           << format_int(w) << '\n';
    }
}

std::string population_to_string(const PsipPopulation& pop) {
    std::ostringstream oss;
    save_population(pop, oss);
    return oss.str();
}

namespace {

std::string expect_header(std::istream& is, const std::string& name, int& line_no) {
    std::string line;
    if (!std::getline(is, line))
        throw ParseError("population file ended before `" + name + "=` header (line " +
                             format_int(line_no) + ")",
                         line_no);
    if (line.rfind(name + "=", 0) != 0)
        throw ParseError("population file line " + format_int(line_no) +
                             ": expected `" + name + "=<value>`, got `" + line + "`",
                         line_no);
    ++line_no;
    return line.substr(name.size() + 1);
}

}  // namespace

PsipPopulation load_population(std::istream& is) {
    int line_no = 1;

    std::int64_t sites = 0;
    if (!parse_int(expect_header(is, "N", line_no), sites) || sites < 1 ||
        sites > kMaxSites)
        throw ParseError("population file line 1: invalid site count", 1);
    double beta = 0.0;
    if (!parse_double(expect_header(is, "beta", line_no), beta) || !(beta >= 0.0))
        throw ParseError("population file line 2: invalid beta", 2);
    std::int64_t seed = 0;
    if (!parse_int(expect_header(is, "seed", line_no), seed))
        throw ParseError("population file line 3: invalid seed", 3);
    std::int64_t n_initial = 0;
    if (!parse_int(expect_header(is, "n_initial", line_no), n_initial) || n_initial < 0)
        throw ParseError("population file line 4: invalid n_initial", 4);

    PsipPopulation pop(static_cast<int>(sites), beta,
                       static_cast<std::uint64_t>(seed), n_initial);

    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            ++line_no;
            continue;
        }
        std::istringstream fields(line);
        std::string row_text, col_text, weight_text;
        if (!(fields >> row_text >> col_text >> weight_text))
            throw ParseError("population file line " + format_int(line_no) +
                                 ": expected `<row bits> <col bits> <weight>`",
                             line_no);
        std::string extra;
        if (fields >> extra)
            throw ParseError("population file line " + format_int(line_no) +
                                 ": trailing content `" + extra + "`",
                             line_no);
        SpinBasisState row, col;
        try {
            row = SpinBasisState::from_string(row_text);
            col = SpinBasisState::from_string(col_text);
        } catch (const InvalidArgument& e) {
            throw ParseError("population file line " + format_int(line_no) + ": " +
                                 e.what(),
                             line_no);
        }
        std::int64_t weight = 0;
        if (row.sites != sites || col.sites != sites)
            throw ParseError("population file line " + format_int(line_no) +
                                 ": bit string length does not match N",
                             line_no);
        if (!parse_int(weight_text, weight) || weight == 0)
            throw ParseError("population file line " + format_int(line_no) +
                                 ": invalid net weight `" + weight_text + "`",
                             line_no);
        pop.deposit(row.bits, col.bits, weight);
        ++line_no;
    }
    return pop;
}

}  // namespace erhoq
