#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spin_model.hpp"

namespace erhoq {

enum class GateKind { X, H, Z, RX, RZ, ZZ, CNOT };

// RX(theta) = exp(-i theta sx/2), RZ(theta) = exp(-i theta sz/2),
// ZZ(theta)  = exp(-i theta sz(x)sz/2); X, H, Z, CNOT are the usual constants.
struct Gate {
    GateKind kind = GateKind::X;
    int q0 = 0;
    int q1 = -1;       // second qubit for ZZ / CNOT target
    double angle = 0;  // radians, rotations only

    static Gate x(int q) { return {GateKind::X, q, -1, 0.0}; }
    static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static Gate z(int q) { return {GateKind::Z, q, -1, 0.0}; }
    static Gate rx(double angle, int q) { return {GateKind::RX, q, -1, angle}; }
    static Gate rz(double angle, int q) { return {GateKind::RZ, q, -1, angle}; }
    static Gate zz(double angle, int q0, int q1) { return {GateKind::ZZ, q0, q1, angle}; }
    static Gate cnot(int control, int target) {
        return {GateKind::CNOT, control, target, 0.0};
    }

    bool parameterized() const {
        return kind == GateKind::RX || kind == GateKind::RZ || kind == GateKind::ZZ;
    }
    bool two_qubit() const { return kind == GateKind::ZZ || kind == GateKind::CNOT; }
};

struct Circuit {
    int sites = 0;
    std::vector<Gate> gates;

    explicit Circuit(int site_count = 0) : sites(site_count) {}

    // Throws InvalidArgument on out-of-range or coincident targets.
    void append(const Gate& g);
    void append(const Circuit& other);
};

enum class Branch { U, V, Diagonal };

// Circuit preparing, from |0...0>:  |a>  (diagonal),  (|a>+|b>)/sqrt(2)  (u),
// or  (|a>-|b>)/sqrt(2)  (v), the |a> component always carrying the plus
// sign.  X gates set the bits common to a and b; an H on the lowest differing
// bit (followed by Z for the v branch) opens the superposition; CNOTs fan it
// out to the remaining differing bits; X corrections steer the two components
// onto a and b exactly.  Throws BranchMismatch when the branch does not match
// a == b.
Circuit prepare_pure_state(const SpinBasisState& a, const SpinBasisState& b,
                           Branch branch);

// One first-order step exp(-i Hx dt) exp(-i Hz dt) acting on kets, Hz first:
// RZ(-2 mu_z dt) per site, ZZ(-2 j_z dt) per bond, then RX(-2 mu_x dt) per
// site.  Gate families with exactly zero angle are omitted, so the program
// contains only gates the Hamiltonian actually generates.
Circuit trotter_step_block(const HamiltonianParams& p, const Lattice& lat, double dt);

// (t/dt) repetitions of trotter_step_block.  Throws NonDivisibleTime unless
// t/dt is whole to 1e-9.
Circuit trotter_circuit(const HamiltonianParams& p, const Lattice& lat, double t,
                        double dt);

// Number of whole steps in t, validating divisibility.
int trotter_step_count(double t, double dt);

// One gate per line: `H 0`, `RX 1.5707963 2`, `ZZ 0.2 0 1`, `CNOT 0 3`.
void dump_circuit(const Circuit& c, std::ostream& os);
std::string circuit_to_string(const Circuit& c);

}  // namespace erhoq
