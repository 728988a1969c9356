#include "spin_model.hpp"

#include "errors.hpp"
#include "text_format.hpp"

namespace erhoq {

SpinBasisState::SpinBasisState(std::uint32_t bit_pattern, int site_count)
    : bits(bit_pattern), sites(site_count) {
    if (site_count < 1 || site_count > kMaxSites)
        throw InvalidArgument("site count must be in [1, " +
                              format_int(kMaxSites) + "], got " +
                              format_int(site_count));
    if (site_count < 32 && (bit_pattern >> site_count) != 0)
        throw InvalidArgument("bit pattern has bits beyond site count");
}

std::string SpinBasisState::to_string() const {
    std::string s(static_cast<std::size_t>(sites), '0');
    for (int i = 0; i < sites; ++i)
        if ((bits >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

SpinBasisState SpinBasisState::from_string(const std::string& text) {
    if (text.empty() || text.size() > static_cast<std::size_t>(kMaxSites))
        throw InvalidArgument("basis state string has invalid length");
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1')
            bits |= (1u << i);
        else if (text[i] != '0')
            throw InvalidArgument("basis state string must be 0/1 only");
    }
    return SpinBasisState(bits, static_cast<int>(text.size()));
}

Lattice Lattice::periodic_chain(int sites) {
    if (sites < 1 || sites > kMaxSites)
        throw InvalidArgument("chain length must be in [1, " +
                              format_int(kMaxSites) + "]");
    Lattice lat;
    lat.sites = sites;
    if (sites == 2) {
        lat.bonds.emplace_back(0, 1);
    } else if (sites >= 3) {
        for (int i = 0; i < sites; ++i) lat.bonds.emplace_back(i, (i + 1) % sites);
    }
    return lat;
}

Schedule Schedule::constant(const HamiltonianParams& h0, const HamiltonianParams& h1) {
    Schedule s;
    s.initial = h0;
    s.segments.push_back({0.0, h1});
    return s;
}

void Schedule::validate() const {
    if (segments.empty())
        throw InvalidArgument("schedule needs at least one evolution segment");
    if (segments.front().t_start != 0.0)
        throw InvalidArgument("first schedule segment must start at t=0");
    for (std::size_t i = 1; i < segments.size(); ++i)
        if (!(segments[i].t_start > segments[i - 1].t_start))
            throw InvalidArgument("schedule switch times must be strictly increasing");
}

const HamiltonianParams& Schedule::at(double t) const {
    std::size_t pick = 0;
    for (std::size_t i = 0; i < segments.size(); ++i)
        if (segments[i].t_start <= t) pick = i;
    return segments[pick].params;
}

double diagonal_element(const SpinBasisState& a, const HamiltonianParams& p,
                        const Lattice& lat) {
    double bond_sum = 0.0;
    for (const auto& [i, j] : lat.bonds)
        bond_sum += static_cast<double>(a.spin(i) * a.spin(j));
    double field_sum = 0.0;
    for (int i = 0; i < lat.sites; ++i) field_sum += static_cast<double>(a.spin(i));
    return -p.j_z * bond_sum - p.mu_z * field_sum;
}

std::vector<std::pair<SpinBasisState, double>> column_connections(
    const SpinBasisState& b, const HamiltonianParams& p, const Lattice& lat) {
    std::vector<std::pair<SpinBasisState, double>> out;
    if (p.mu_x == 0.0) return out;
    out.reserve(static_cast<std::size_t>(lat.sites));
    for (int i = 0; i < lat.sites; ++i) out.emplace_back(b.flipped(i), -p.mu_x);
    return out;
}

TrotterSplit trotter_split(const HamiltonianParams& p) {
    return TrotterSplit{-p.mu_x, -p.j_z, -p.mu_z};
}

}  // namespace erhoq
