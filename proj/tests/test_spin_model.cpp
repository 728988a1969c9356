#include "doctest.h"
#include "errors.hpp"
#include "spin_model.hpp"

using namespace erhoq;

TEST_CASE("basis state encoding: bit 0 is spin up") {
    const SpinBasisState up(0, 1);
    const SpinBasisState down(1, 1);
    CHECK(up.spin(0) == +1);
    CHECK(down.spin(0) == -1);
    CHECK(SpinBasisState::from_string("01").spin(0) == +1);
    CHECK(SpinBasisState::from_string("01").spin(1) == -1);
    CHECK(SpinBasisState(0b10, 2).to_string() == "01");  // site 0 first
    CHECK_THROWS_AS(SpinBasisState(0, 0), InvalidArgument);
    CHECK_THROWS_AS(SpinBasisState(0, 25), InvalidArgument);
    CHECK_THROWS_AS(SpinBasisState(0b100, 2), InvalidArgument);
    CHECK_THROWS_AS(SpinBasisState::from_string("0a1"), InvalidArgument);
}

TEST_CASE("periodic chain bond conventions") {
    CHECK(Lattice::periodic_chain(1).bonds.empty());
    const auto two = Lattice::periodic_chain(2);
    REQUIRE(two.bonds.size() == 1);  // no double counting
    CHECK(two.bonds[0] == std::pair<int, int>{0, 1});
    const auto five = Lattice::periodic_chain(5);
    CHECK(five.bonds.size() == 5);
    CHECK(five.bonds.back() == std::pair<int, int>{4, 0});
}

TEST_CASE("diagonal elements") {
    // Single spin, mu_z = 1, no bonds: <up|H|up> = -1.
    const Lattice one = Lattice::periodic_chain(1);
    CHECK(diagonal_element(SpinBasisState(0, 1), {5.0, 0.0, 1.0}, one) ==
          doctest::Approx(-1.0).epsilon(1e-15));

    // N=3 all-up, J=1, mu_z=0: three bonds each +1 -> -3.
    const Lattice three = Lattice::periodic_chain(3);
    CHECK(diagonal_element(SpinBasisState(0, 3), {1.0, 0.0, 0.0}, three) ==
          doctest::Approx(-3.0).epsilon(1e-15));

    // N=2 |up,down>, J=1, mu_z=1: bond -1 -> +1; field term 0.
    const Lattice two = Lattice::periodic_chain(2);
    CHECK(diagonal_element(SpinBasisState(0b10, 2), {1.0, 0.0, 1.0}, two) ==
          doctest::Approx(+1.0).epsilon(1e-15));
}

TEST_CASE("column connections are the single spin flips") {
    const Lattice two = Lattice::periodic_chain(2);
    const auto conns = column_connections(SpinBasisState(0, 2), {1.0, 1.0, 0.0}, two);
    REQUIRE(conns.size() == 2);
    CHECK(conns[0].first.bits == 0b01);
    CHECK(conns[0].second == doctest::Approx(-1.0));
    CHECK(conns[1].first.bits == 0b10);
    CHECK(conns[1].second == doctest::Approx(-1.0));

    CHECK(column_connections(SpinBasisState(0b11, 2), {1.0, 0.0, 1.0}, two).empty());

    // Sign of -mu_x.
    const Lattice one = Lattice::periodic_chain(1);
    const auto neg = column_connections(SpinBasisState(1, 1), {0.0, -1.0, 0.0}, one);
    REQUIRE(neg.size() == 1);
    CHECK(neg[0].first.bits == 0);
    CHECK(neg[0].second == doctest::Approx(+1.0));
}

TEST_CASE("hermiticity of connections") {
    const Lattice lat = Lattice::periodic_chain(4);
    const HamiltonianParams p{0.7, -0.3, 0.2};
    for (std::uint32_t b = 0; b < 16; ++b) {
        for (const auto& [c, element] : column_connections(SpinBasisState(b, 4), p, lat)) {
            bool found = false;
            for (const auto& [back, element_back] : column_connections(c, p, lat)) {
                if (back.bits == b) {
                    CHECK(element_back == doctest::Approx(element));
                    found = true;
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("trotter split coefficients") {
    const TrotterSplit split = trotter_split({1.0, -1.0, 0.0});
    CHECK(split.x_coeff == doctest::Approx(+1.0));
    CHECK(split.zz_coeff == doctest::Approx(-1.0));
    CHECK(split.z_coeff == doctest::Approx(0.0));

    const TrotterSplit only_z = trotter_split({0.0, 0.0, 1.0});
    CHECK(only_z.x_coeff == 0.0);
    CHECK(only_z.zz_coeff == 0.0);
    CHECK(only_z.z_coeff == doctest::Approx(-1.0));
}

TEST_CASE("schedule lookup") {
    Schedule s;
    s.segments = {{0.0, {1, 1, 0}}, {1.0, {1, -1, 0}}};
    s.validate();
    CHECK(s.at(0.0).mu_x == 1.0);
    CHECK(s.at(0.5).mu_x == 1.0);
    CHECK(s.at(1.0).mu_x == -1.0);
    CHECK(s.at(2.0).mu_x == -1.0);

    Schedule bad;
    bad.segments = {{0.5, {1, 1, 0}}};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}
