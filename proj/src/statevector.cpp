#include "statevector.hpp"

#include <cmath>

#include "errors.hpp"

namespace erhoq {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

Statevector::Statevector(int sites) : sites_(sites) {
    if (sites < 1 || sites > kMaxSites)
        throw InvalidArgument("statevector site count must be in [1, 24]");
    amps_.assign(std::size_t{1} << sites, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

void Statevector::apply(const Gate& g) {
    const std::size_t dim = amps_.size();
    const std::size_t mask0 = std::size_t{1} << g.q0;
    switch (g.kind) {
        case GateKind::X: {
            for (std::size_t n = 0; n < dim; ++n)
                if (!(n & mask0)) std::swap(amps_[n], amps_[n | mask0]);
            break;
        }
        case GateKind::H: {
            for (std::size_t n = 0; n < dim; ++n) {
                if (n & mask0) continue;
                const auto a0 = amps_[n];
                const auto a1 = amps_[n | mask0];
                amps_[n] = kInvSqrt2 * (a0 + a1);
                amps_[n | mask0] = kInvSqrt2 * (a0 - a1);
            }
            break;
        }
        case GateKind::Z: {
            for (std::size_t n = 0; n < dim; ++n)
                if (n & mask0) amps_[n] = -amps_[n];
            break;
        }
        case GateKind::RX: {
            const double c = std::cos(0.5 * g.angle);
            const double s = std::sin(0.5 * g.angle);
            const std::complex<double> mis{0.0, -s};
            for (std::size_t n = 0; n < dim; ++n) {
                if (n & mask0) continue;
                const auto a0 = amps_[n];
                const auto a1 = amps_[n | mask0];
                amps_[n] = c * a0 + mis * a1;
                amps_[n | mask0] = mis * a0 + c * a1;
            }
            break;
        }
        case GateKind::RZ: {
            const std::complex<double> lo{std::cos(0.5 * g.angle), -std::sin(0.5 * g.angle)};
            const std::complex<double> hi = std::conj(lo);
            for (std::size_t n = 0; n < dim; ++n)
                amps_[n] *= (n & mask0) ? hi : lo;
            break;
        }
        case GateKind::ZZ: {
            const std::size_t mask1 = std::size_t{1} << g.q1;
            const std::complex<double> even{std::cos(0.5 * g.angle),
                                            -std::sin(0.5 * g.angle)};
            const std::complex<double> odd = std::conj(even);
            for (std::size_t n = 0; n < dim; ++n) {
                const bool parity = ((n & mask0) != 0) != ((n & mask1) != 0);
                amps_[n] *= parity ? odd : even;
            }
            break;
        }
        case GateKind::CNOT: {
            const std::size_t mask1 = std::size_t{1} << g.q1;
            for (std::size_t n = 0; n < dim; ++n)
                if ((n & mask0) && !(n & mask1)) std::swap(amps_[n], amps_[n | mask1]);
            break;
        }
    }
}

void Statevector::apply(const Circuit& c) {
    if (c.sites != sites_)
        throw InvalidArgument("circuit and statevector site counts differ");
    for (const Gate& g : c.gates) apply(g);
}

double Statevector::norm() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return std::sqrt(total);
}

double Statevector::one_probability(int q) const {
    const std::size_t mask = std::size_t{1} << q;
    double total = 0.0;
    for (std::size_t n = 0; n < amps_.size(); ++n)
        if (n & mask) total += std::norm(amps_[n]);
    return total;
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t n = 0; n < amps_.size(); ++n) p[n] = std::norm(amps_[n]);
    return p;
}

}  // namespace erhoq
