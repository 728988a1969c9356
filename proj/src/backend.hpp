#pragma once

#include <cstdint>
#include <vector>

#include "circuit.hpp"
#include "statevector.hpp"

namespace erhoq {

// The two noise sources of a hardware-like backend: symmetric gate-independent
// readout flips, and a bias eps(theta) = offset + slope*theta added to every
// parameterized gate angle.
struct NoiseModel {
    double readout_flip = 0.0;  // in [0, 0.5)
    double angle_bias_offset = 0.0;
    double angle_bias_slope = 0.0;

    void validate() const;
    bool biases_angles() const {
        return angle_bias_offset != 0.0 || angle_bias_slope != 0.0;
    }
    double biased(double angle) const {
        return angle + angle_bias_offset + angle_bias_slope * angle;
    }
};

// shots == 0 selects exact expectation values from the statevector; otherwise
// `shots` bitstrings are sampled per program, seeded by (seed, stream).
struct ExecutionMode {
    std::int64_t shots = 0;
    std::uint64_t seed = 0;

    static ExecutionMode exact() { return {0, 0}; }
    static ExecutionMode sampled(std::int64_t n, std::uint64_t seed) {
        return {n, seed};
    }
    bool exact_expectation() const { return shots == 0; }
    void validate() const;
};

// Addresses the shot substream of one program execution so that repeated and
// concurrent runs are reproducible: `block` is the time-grid index, `index`
// distinguishes (psip key, branch) or replica.
struct ShotStream {
    std::uint32_t block = 0;
    std::uint64_t index = 0;
};

// Applies the circuit to |0...0>, folding the noise model's angle bias into
// every parameterized gate.
Statevector run_circuit(const Circuit& c, const NoiseModel& noise);

// Per-shot transverse magnetization takes one of sites+1 values
// (sites - 2k)/sites for k measured ones; shot mode can report the count of
// each so that shot noise can be resampled later.
struct MxMeasurement {
    double value = 0.0;
    std::vector<std::int64_t> outcome_counts;  // empty in exact mode
};

// Measures m_x = (1/N) sum_i sx_i on a prepared state: rotates every qubit
// into the X basis with an H layer, then either reads exact probabilities
// (readout flips folded in analytically as a (1-2p) factor per qubit) or
// samples `shots` bitstrings with per-qubit flips applied.
MxMeasurement measure_mx(const Statevector& state, const NoiseModel& noise,
                         const ExecutionMode& mode, const ShotStream& stream);

// Convenience wrapper: run_circuit + measure_mx.
double execute_mx(const Circuit& c, const NoiseModel& noise,
                  const ExecutionMode& mode, const ShotStream& stream = {});

}  // namespace erhoq
