#include "doctest.h"

#include "dunkl/errors.hpp"
#include "dunkl/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace dunkl;

namespace {

std::size_t factorial(int n) { return n <= 1 ? 1 : std::size_t(n) * factorial(n - 1); }

struct Counts {
    std::size_t pos, weyl;
    int orbits;
};

Counts expected(Family f, int m) {
    switch (f) {
    case Family::A: return {std::size_t(m * (m - 1) / 2), factorial(m), 1};
    case Family::B: return {std::size_t(m * m), (std::size_t(1) << m) * factorial(m), m == 1 ? 1 : 2};
    case Family::C: return {std::size_t(m * m), (std::size_t(1) << m) * factorial(m), m == 1 ? 1 : 2};
    case Family::D: return {std::size_t(m * (m - 1)), (std::size_t(1) << (m - 1)) * factorial(m), m == 2 ? 2 : 1};
    case Family::BC: return {std::size_t(m * m + m), (std::size_t(1) << m) * factorial(m), m == 1 ? 2 : 3};
    }
    return {};
}

} // namespace

TEST_CASE("root systems are closed under their reflections") {
    for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::BC})
        for (int m = (f == Family::A || f == Family::D) ? 2 : 1; m <= 5; ++m) {
            auto rs = RootSystem::build(f, m);
            CAPTURE(rs.name());
            std::set<Root> R(rs.roots().begin(), rs.roots().end());
            for (const Root& a : rs.roots()) {
                std::set<Root> image;
                for (const Root& b : rs.roots()) image.insert(rs.reflect(a, b));
                CHECK(image == R);
            }
        }
}

TEST_CASE("positive roots, simple roots, orbits and Weyl orders") {
    for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::BC})
        for (int m = (f == Family::A || f == Family::D) ? 2 : 1; m <= 5; ++m) {
            auto rs = RootSystem::build(f, m);
            CAPTURE(rs.name());
            Counts c = expected(f, m);
            CHECK(rs.positive().size() == c.pos);
            CHECK(rs.roots().size() == 2 * c.pos);
            CHECK(rs.weyl_order() == c.weyl);
            CHECK(rs.num_orbits() == c.orbits);
            CHECK(int(rs.simple().size()) == (f == Family::A ? m - 1 : m));
            for (const Root& a : rs.positive()) {
                auto co = rs.simple_coefficients(a);
                CHECK(std::all_of(co.begin(), co.end(), [](int v) { return v >= 0; }));
                CHECK(rs.is_positive(a));
                Root neg(a);
                for (int& v : neg) v = -v;
                CHECK_FALSE(rs.is_positive(neg));
            }
        }
}

TEST_CASE("reflections are isometric involutions on vectors") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> N;
    auto rs = RootSystem::build(Family::BC, 3);
    for (const Root& a : rs.roots()) {
        Vec x{N(gen), N(gen), N(gen)};
        Vec y = rs.reflect(a, x);
        CHECK(dot(y, y) == doctest::Approx(dot(x, x)));
        CHECK(dot(a, y) == doctest::Approx(-dot(a, x)));
        Vec z = rs.reflect(a, y);
        for (int i = 0; i < 3; ++i) CHECK(z[i] == doctest::Approx(x[i]));
    }
}

TEST_CASE("chamber and alcove distances") {
    auto b2 = RootSystem::build(Family::B, 2);
    CHECK(b2.chamber_distance({2, 1}) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(b2.chamber_distance({2, 0.5}) == doctest::Approx(0.5));
    CHECK(b2.chamber_distance({1, 2}) < 0);
    auto [d, w] = b2.nearest_wall({2, 0.5}, false);
    CHECK(d == doctest::Approx(0.5));
    CHECK(b2.simple()[std::size_t(w)] == unit(2, 1));

    auto c2 = RootSystem::build(Family::C, 2);
    // alcove of C_2: walls phi_1 = phi_2, phi_2 = 0 and 2 phi_1 = pi
    CHECK(c2.highest() == unit(2, 0, 2));
    CHECK(c2.alcove_distance({1.0, 0.5}) == doctest::Approx(0.5 / std::sqrt(2.0)));
    auto [da, wa] = c2.nearest_wall({1.5, 0.7}, true);
    CHECK(da == doctest::Approx(std::acos(-1.0) / 2 - 1.5));
    CHECK(wa == int(c2.simple().size()));
    CHECK_THROWS_AS(b2.alcove_distance({1, 0.5}), Unsupported);
}

TEST_CASE("multiplicities are W-invariant and keyed by representatives") {
    auto rs = RootSystem::build(Family::BC, 3);
    auto k = Multiplicity::BC(rs, 0.3, 0.8, 0.5);
    CHECK(k.of(rs, unit(3, 2)) == 0.3);
    CHECK(k.of(rs, unit(3, 1, 2)) == doctest::Approx(0.4));
    CHECK(k.of(rs, sum(3, 0, 2)) == 0.5);
    for (const Root& a : rs.roots())
        for (const Root& b : rs.roots()) CHECK(k.of(rs, rs.reflect(a, b)) == k.of(rs, b));
    auto b2 = RootSystem::build(Family::B, 2);
    auto kb = Multiplicity::B(b2, 0.25, 0.75);
    CHECK(kb.gamma(b2) == doctest::Approx(2 * 0.25 + 2 * 0.75));
    auto l = kb.index();
    CHECK(std::count(l.begin(), l.end(), -0.25) == 1);
    CHECK_THROWS_AS(Multiplicity(b2, {0.5}), InvalidArgument);
    CHECK_THROWS_AS(Multiplicity::A(b2, 1.0), InvalidArgument);
    CHECK_THROWS_AS(RootSystem::build(Family::D, 1), Unsupported);
    CHECK(family_from_string("BC") == Family::BC);
    CHECK_THROWS_AS(family_from_string("E"), InvalidArgument);
}
