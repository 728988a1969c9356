#include "circuit.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "errors.hpp"
#include "text_format.hpp"

namespace erhoq {

void Circuit::append(const Gate& g) {
    if (g.q0 < 0 || g.q0 >= sites)
        throw InvalidArgument("gate target out of range");
    if (g.two_qubit()) {
        if (g.q1 < 0 || g.q1 >= sites)
            throw InvalidArgument("gate target out of range");
        if (g.q1 == g.q0)
            throw InvalidArgument("two-qubit gate needs distinct targets");
    }
    gates.push_back(g);
}

void Circuit::append(const Circuit& other) {
    if (other.sites != sites)
        throw InvalidArgument("cannot append a circuit with a different qubit count");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

Circuit prepare_pure_state(const SpinBasisState& a, const SpinBasisState& b,
                           Branch branch) {
    if (a.sites != b.sites)
        throw InvalidArgument("basis states have different site counts");
    if (branch == Branch::Diagonal && a.bits != b.bits)
        throw BranchMismatch("diagonal preparation requires a == b");
    if (branch != Branch::Diagonal && a.bits == b.bits)
        throw BranchMismatch("u/v preparation requires a != b");

    Circuit c(a.sites);
    if (branch == Branch::Diagonal) {
        for (int i = 0; i < a.sites; ++i)
            if ((a.bits >> i) & 1u) c.append(Gate::x(i));
        return c;
    }

    const std::uint32_t shared = a.bits & b.bits;
    const std::uint32_t differing = a.bits ^ b.bits;
    for (int i = 0; i < a.sites; ++i)
        if ((shared >> i) & 1u) c.append(Gate::x(i));

    int pivot = 0;
    while (((differing >> pivot) & 1u) == 0) ++pivot;
    c.append(Gate::h(pivot));
    if (branch == Branch::V) c.append(Gate::z(pivot));
    for (int i = pivot + 1; i < a.sites; ++i)
        if ((differing >> i) & 1u) c.append(Gate::cnot(pivot, i));

    // The component with all differing bits clear must land on |a>:  flip the
    // differing bits a has set.  This keeps the plus sign on |a> because the
    // pivot=0 component carries it.
    for (int i = 0; i < a.sites; ++i)
        if ((differing >> i) & 1u && (a.bits >> i) & 1u) c.append(Gate::x(i));
    return c;
}

Circuit trotter_step_block(const HamiltonianParams& p, const Lattice& lat, double dt) {
    Circuit c(lat.sites);
    const TrotterSplit split = trotter_split(p);
    // exp(-i c sz dt) on each term: rotation angle 2*c*dt.
    if (split.z_coeff != 0.0)
        for (int i = 0; i < lat.sites; ++i)
            c.append(Gate::rz(2.0 * split.z_coeff * dt, i));
    if (split.zz_coeff != 0.0)
        for (const auto& [i, j] : lat.bonds)
            c.append(Gate::zz(2.0 * split.zz_coeff * dt, i, j));
    if (split.x_coeff != 0.0)
        for (int i = 0; i < lat.sites; ++i)
            c.append(Gate::rx(2.0 * split.x_coeff * dt, i));
    return c;
}

int trotter_step_count(double t, double dt) {
    if (!(t >= 0.0)) throw InvalidArgument("evolution time must be >= 0");
    if (!(dt > 0.0)) throw InvalidArgument("trotter dt must be > 0");
    const double steps = t / dt;
    if (std::abs(steps - std::round(steps)) > 1e-9)
        throw NonDivisibleTime("time " + format_double(t) +
                               " is not a whole number of trotter steps of " +
                               format_double(dt));
    return static_cast<int>(std::llround(steps));
}

Circuit trotter_circuit(const HamiltonianParams& p, const Lattice& lat, double t,
                        double dt) {
    const int steps = trotter_step_count(t, dt);
    Circuit block = trotter_step_block(p, lat, dt);
    Circuit c(lat.sites);
    for (int s = 0; s < steps; ++s) c.append(block);
    return c;
}

void dump_circuit(const Circuit& c, std::ostream& os) {
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::X: os << "X " << g.q0; break;
            case GateKind::H: os << "H " << g.q0; break;
            case GateKind::Z: os << "Z " << g.q0; break;
            case GateKind::RX: os << "RX " << format_double(g.angle) << ' ' << g.q0; break;
            case GateKind::RZ: os << "RZ " << format_double(g.angle) << ' ' << g.q0; break;
            case GateKind::ZZ:
                os << "ZZ " << format_double(g.angle) << ' ' << g.q0 << ' ' << g.q1;
                break;
            case GateKind::CNOT: os << "CNOT " << g.q0 << ' ' << g.q1; break;
        }
        os << '\n';
    }
}

std::string circuit_to_string(const Circuit& c) {
    std::ostringstream oss;
    dump_circuit(c, oss);
    return oss.str();
}

}  // namespace erhoq
