#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace erhoq {

// Hard cap on the site count: everything this project computes is verified
// against a dense oracle, and statevectors are dense.
constexpr int kMaxSites = 24;

// Computational-basis state of `sites` spins packed into a bit pattern,
// site i at bit i.  Bit 0 means spin up (s = +1), bit 1 spin down (s = -1);
// this mapping is global.
struct SpinBasisState {
    std::uint32_t bits = 0;
    int sites = 0;

    SpinBasisState() = default;
    SpinBasisState(std::uint32_t bit_pattern, int site_count);

    int spin(int site) const { return (bits >> site) & 1u ? -1 : +1; }
    SpinBasisState flipped(int site) const {
        return SpinBasisState(bits ^ (1u << site), sites);
    }

    // "0110..." with site 0 first.
    std::string to_string() const;
    static SpinBasisState from_string(const std::string& text);

    friend bool operator==(const SpinBasisState&, const SpinBasisState&) = default;
};

// Couplings of H = -j_z sum_<ij> sz_i sz_j - mu_x sum_i sx_i - mu_z sum_i sz_i.
struct HamiltonianParams {
    double j_z = 0.0;
    double mu_x = 0.0;
    double mu_z = 0.0;

    friend bool operator==(const HamiltonianParams&, const HamiltonianParams&) = default;
};

// Periodic chain: N bonds for N >= 3, one bond for N = 2, none for N = 1.
struct Lattice {
    int sites = 0;
    std::vector<std::pair<int, int>> bonds;

    static Lattice periodic_chain(int sites);
};

// Piecewise-constant time dependence: `initial` defines the thermal
// Hamiltonian; `segments` define the evolution Hamiltonian for t >= 0, each
// segment holding from its start time until the next.
struct Schedule {
    struct Segment {
        double t_start = 0.0;
        HamiltonianParams params;
    };

    HamiltonianParams initial;
    std::vector<Segment> segments;

    static Schedule constant(const HamiltonianParams& h0, const HamiltonianParams& h1);

    // Throws InvalidArgument unless segments start at t=0 with strictly
    // increasing switch times.
    void validate() const;

    const HamiltonianParams& at(double t) const;
};

// <a|H|a> = -j_z sum_<ij> s_i s_j - mu_z sum_i s_i.  The mu_x term is purely
// off-diagonal.
double diagonal_element(const SpinBasisState& a, const HamiltonianParams& p,
                        const Lattice& lat);

// All states c != b with <c|H|b> != 0, i.e. the single-spin flips of b when
// mu_x != 0; every element equals -mu_x.
std::vector<std::pair<SpinBasisState, double>> column_connections(
    const SpinBasisState& b, const HamiltonianParams& p, const Lattice& lat);

// H = Hx + Hz with Hx = x_coeff * sum_i sx_i,
// Hz = zz_coeff * sum_<ij> sz_i sz_j + z_coeff * sum_i sz_i.
struct TrotterSplit {
    double x_coeff = 0.0;   // -mu_x
    double zz_coeff = 0.0;  // -j_z
    double z_coeff = 0.0;   // -mu_z
};

TrotterSplit trotter_split(const HamiltonianParams& p);

}  // namespace erhoq
