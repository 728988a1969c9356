#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "circuit.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "statevector.hpp"

using namespace erhoq;
using cd = std::complex<double>;

namespace {

// Builds the dense matrix of a gate by applying it to each basis state.
std::vector<std::vector<cd>> gate_matrix(const Gate& g, int sites) {
    const std::size_t dim = std::size_t{1} << sites;
    std::vector<std::vector<cd>> m(dim, std::vector<cd>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        Statevector s(sites);
        s.set_amplitude(0, {0, 0});
        s.set_amplitude(col, {1, 0});
        s.apply(g);
        for (std::size_t row = 0; row < dim; ++row) m[row][col] = s.amplitude(row);
    }
    return m;
}

void check_matrix(const Gate& g, int sites, const std::vector<std::vector<cd>>& want) {
    const auto got = gate_matrix(g, sites);
    for (std::size_t r = 0; r < want.size(); ++r)
        for (std::size_t c = 0; c < want.size(); ++c)
            CHECK(std::abs(got[r][c] - want[r][c]) < 1e-14);
}

}  // namespace

TEST_CASE("single-qubit gate matrices match their textbook forms") {
    const double s2 = 1.0 / std::sqrt(2.0);
    check_matrix(Gate::x(0), 1, {{0, 1}, {1, 0}});
    check_matrix(Gate::z(0), 1, {{1, 0}, {0, -1}});
    check_matrix(Gate::h(0), 1, {{s2, s2}, {s2, -s2}});

    for (const double theta : {0.0, M_PI_2, M_PI}) {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        check_matrix(Gate::rx(theta, 0), 1, {{c, cd(0, -s)}, {cd(0, -s), c}});
        check_matrix(Gate::rz(theta, 0), 1,
                     {{cd(c, -s), 0}, {0, cd(c, s)}});
    }
}

TEST_CASE("two-qubit gate matrices") {
    // Index order: bit 0 = qubit 0, so basis is |q1 q0> = 00, 01, 10, 11
    // reading the integer.  CNOT with control 0, target 1 maps 1 -> 3 -> 1.
    check_matrix(Gate::cnot(0, 1), 2,
                 {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}});
    check_matrix(Gate::cnot(1, 0), 2,
                 {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});

    for (const double theta : {0.0, M_PI_2, M_PI}) {
        const cd even = std::exp(cd(0, -theta / 2));
        const cd odd = std::exp(cd(0, +theta / 2));
        check_matrix(Gate::zz(theta, 0, 1), 2,
                     {{even, 0, 0, 0}, {0, odd, 0, 0}, {0, 0, odd, 0}, {0, 0, 0, even}});
    }
}

TEST_CASE("zz is symmetric in its targets") {
    const auto a = gate_matrix(Gate::zz(0.37, 0, 2), 3);
    const auto b = gate_matrix(Gate::zz(0.37, 2, 0), 3);
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a.size(); ++c)
            CHECK(std::abs(a[r][c] - b[r][c]) < 1e-15);
}

TEST_CASE("norm is preserved by random circuits") {
    PhiloxRng rng(3, PhiloxRng::Purpose::Bootstrap, 1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const int sites = 1 + static_cast<int>(rng.uniform_pow2(2));  // 1..4
        Statevector s(sites);
        for (int g = 0; g < 60; ++g) {
            const int q = static_cast<int>(rng.next_u64() % sites);
            const double angle = (rng.uniform() - 0.5) * 8.0;
            switch (rng.next_u64() % 7) {
                case 0: s.apply(Gate::x(q)); break;
                case 1: s.apply(Gate::h(q)); break;
                case 2: s.apply(Gate::z(q)); break;
                case 3: s.apply(Gate::rx(angle, q)); break;
                case 4: s.apply(Gate::rz(angle, q)); break;
                case 5:
                    if (sites > 1) s.apply(Gate::zz(angle, q, (q + 1) % sites));
                    break;
                default:
                    if (sites > 1) s.apply(Gate::cnot(q, (q + 1) % sites));
                    break;
            }
        }
        CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("one_probability and probabilities agree") {
    Statevector s(3);
    s.apply(Gate::h(0));
    s.apply(Gate::cnot(0, 2));
    s.apply(Gate::rx(0.7, 1));
    const auto probs = s.probabilities();
    for (int q = 0; q < 3; ++q) {
        double p1 = 0;
        for (std::size_t n = 0; n < probs.size(); ++n)
            if ((n >> q) & 1u) p1 += probs[n];
        CHECK(s.one_probability(q) == doctest::Approx(p1).epsilon(1e-14));
    }
}

TEST_CASE("site count bounds") {
    CHECK_THROWS_AS(Statevector(0), InvalidArgument);
    CHECK_THROWS_AS(Statevector(25), InvalidArgument);
    Statevector ok(2);
    Circuit wrong(3);
    wrong.append(Gate::x(2));
    CHECK_THROWS_AS(ok.apply(wrong), InvalidArgument);
}
