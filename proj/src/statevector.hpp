#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "circuit.hpp"

namespace erhoq {

// Dense 2^N complex amplitudes, site i at bit i of the index.
class Statevector {
public:
    explicit Statevector(int sites);  // |0...0>

    int sites() const { return sites_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

    std::complex<double> amplitude(std::size_t index) const { return amps_[index]; }
    void set_amplitude(std::size_t index, std::complex<double> value) {
        amps_[index] = value;
    }

    void apply(const Gate& g);
    void apply(const Circuit& c);

    double norm() const;

    // P(bit q = 1).
    double one_probability(int q) const;

    // Probabilities |amp|^2 in index order.
    std::vector<double> probabilities() const;

private:
    int sites_;
    std::vector<std::complex<double>> amps_;
};

}  // namespace erhoq
