#include "backend.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace erhoq {

void NoiseModel::validate() const {
    if (!(readout_flip >= 0.0 && readout_flip < 0.5))
        throw InvalidArgument("readout flip probability must be in [0, 0.5)");
    if (!std::isfinite(angle_bias_offset) || !std::isfinite(angle_bias_slope))
        throw InvalidArgument("angle bias must be finite");
}

void ExecutionMode::validate() const {
    if (shots < 0) throw InvalidArgument("shot count must be >= 0");
}

Statevector run_circuit(const Circuit& c, const NoiseModel& noise) {
    Statevector state(c.sites);
    if (!noise.biases_angles()) {
        state.apply(c);
        return state;
    }
    for (Gate g : c.gates) {
        if (g.parameterized()) g.angle = noise.biased(g.angle);
        state.apply(g);
    }
    return state;
}

MxMeasurement measure_mx(const Statevector& state, const NoiseModel& noise,
                         const ExecutionMode& mode, const ShotStream& stream) {
    noise.validate();
    mode.validate();
    const int sites = state.sites();

    // X-basis rotation on every qubit.
    Statevector rotated = state;
    for (int q = 0; q < sites; ++q) rotated.apply(Gate::h(q));

    MxMeasurement result;
    if (mode.exact_expectation()) {
        // A symmetric binary readout channel shrinks each <sz> by (1 - 2p).
        const double readout_factor = 1.0 - 2.0 * noise.readout_flip;
        double total = 0.0;
        for (int q = 0; q < sites; ++q) {
            const double p1 = rotated.one_probability(q);
            total += readout_factor * (1.0 - 2.0 * p1);
        }
        result.value = total / sites;
        return result;
    }

    const std::vector<double> probs = rotated.probabilities();
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < probs.size(); ++n) {
        acc += probs[n];
        cdf[n] = acc;
    }

    PhiloxRng rng(mode.seed, PhiloxRng::Purpose::Shots, stream.block, stream.index);
    result.outcome_counts.assign(static_cast<std::size_t>(sites) + 1, 0);
    std::int64_t magnetization_sum = 0;
    for (std::int64_t s = 0; s < mode.shots; ++s) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t outcome = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(),
                                     static_cast<std::ptrdiff_t>(cdf.size()) - 1));
        int ones = 0;
        for (int q = 0; q < sites; ++q) {
            bool bit = (outcome >> q) & 1u;
            if (noise.readout_flip > 0.0 && rng.uniform() < noise.readout_flip)
                bit = !bit;
            if (bit) ++ones;
        }
        ++result.outcome_counts[static_cast<std::size_t>(ones)];
        magnetization_sum += sites - 2 * ones;
    }
    result.value = static_cast<double>(magnetization_sum) /
                   (static_cast<double>(mode.shots) * sites);
    return result;
}

double execute_mx(const Circuit& c, const NoiseModel& noise,
                  const ExecutionMode& mode, const ShotStream& stream) {
    const Statevector state = run_circuit(c, noise);
    return measure_mx(state, noise, mode, stream).value;
}

}  // namespace erhoq
