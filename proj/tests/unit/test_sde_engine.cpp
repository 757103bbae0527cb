#include "doctest.h"

#include "dunkl/errors.hpp"
#include "dunkl/jacobi.hpp"
#include "dunkl/rng.hpp"
#include "dunkl/sde.hpp"
#include "dunkl/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numeric>
#include <random>

using namespace dunkl;

namespace {
std::shared_ptr<const RootSystem> shared(Family f, int m) {
    return std::make_shared<const RootSystem>(RootSystem::build(f, m));
}
} // namespace

TEST_CASE("Philox4x32-10 known answers") {
    auto z = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(z == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    auto o = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    CHECK(o == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    auto p = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    CHECK(p == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("normal streams are addressable and look Gaussian") {
    NormalStream ns(42);
    double a[6], b[6];
    ns.fill(a, 6, 3, 1, 77, 0);
    ns.fill(b, 6, 3, 1, 77, 0);
    CHECK(std::equal(a, a + 6, b));
    ns.fill(b, 6, 4, 1, 77, 0);
    CHECK_FALSE(std::equal(a, a + 6, b));
    std::vector<double> v(200000);
    for (std::size_t i = 0; i < v.size(); i += 2) ns.fill(&v[i], 2, 0, 0, i, 0);
    auto ms = mean_se(v);
    CHECK(std::abs(ms.mean) < 4 * ms.se);
    double var = 0;
    for (double x : v) var += x * x;
    CHECK(var / double(v.size()) == doctest::Approx(1.0).epsilon(0.01));
    std::mt19937_64 gen(1);
    std::normal_distribution<double> N;
    std::vector<double> ref(20000);
    for (double& x : ref) x = N(gen);
    CHECK(ks_two_sample(std::vector<double>(v.begin(), v.begin() + 20000), ref).p_value > 1e-3);
}

TEST_CASE("Kolmogorov-Smirnov test") {
    CHECK(kolmogorov_q(0.0) == doctest::Approx(1.0));
    CHECK(kolmogorov_q(1.36) == doctest::Approx(0.0494).epsilon(0.01));
    std::vector<double> a(500), b(500);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = double(i) / 500;
        b[i] = double(i) / 500 + 0.5;
    }
    auto r = ks_two_sample(a, b);
    CHECK(r.statistic == doctest::Approx(0.5).epsilon(0.01));
    CHECK(r.p_value < 1e-10);
}

TEST_CASE("explicit and root-sum drifts agree") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> U(0.1, 1.0);
    for (auto f : {Family::A, Family::B, Family::C, Family::D, Family::BC}) {
        auto rs = shared(f, 3);
        std::vector<double> kv(std::size_t(rs->num_orbits()));
        for (double& v : kv) v = U(gen);
        auto spec = radial_dunkl(rs, Multiplicity(*rs, kv), {3.0, 1.7, 0.6}, 1, 1e-3, 1);
        Vec x{2.5, 1.1, 0.4};
        auto a = drift(spec, x);
        spec.route = DriftRoute::RootSum;
        auto b = drift(spec, x);
        for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
    auto lag = beta_laguerre(3, 1.5, 4.0, {3.0, 2.0, 0.5}, 1, 1e-3, 1);
    Vec l{2.4, 1.3, 0.2};
    auto a = drift(lag, l);
    lag.route = DriftRoute::RootSum;
    auto b = drift(lag, l);
    for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    auto jac = beta_jacobi(2, 2.0, 3.0, 2.5, {1.0, 0.4}, 1, 1e-3, 1);
    a = drift(jac, {1.1, 0.3});
    jac.route = DriftRoute::RootSum;
    b = drift(jac, {1.1, 0.3});
    for (int i = 0; i < 2; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("wall multiplicities decide attainability") {
    auto b2 = shared(Family::B, 2);
    auto spec = radial_dunkl(b2, Multiplicity::B(*b2, 0.25, 0.75), {2, 1}, 1, 1e-3, 1);
    CHECK(wall_multiplicity(spec, 0) == 0.75);   // e1 - e2
    CHECK(wall_multiplicity(spec, 1) == 0.25);   // e2
    auto [d, w] = boundary_margin(spec, {2, 0.3});
    CHECK(d == doctest::Approx(0.3));
    CHECK(w == 1);
    auto jac = beta_jacobi(2, 2.0, 3.0, 2.5, {1.0, 0.4}, 1, 1e-3, 1);
    JacobiParams jp{2, 2.0, 3.0, 2.5};
    CHECK(wall_multiplicity(jac, 0) == doctest::Approx(jp.k2()));
    CHECK(wall_multiplicity(jac, 1) == doctest::Approx(jp.k0() + jp.k1() / 2));
    CHECK(wall_multiplicity(jac, 2) == doctest::Approx(jp.k1() / 2));
}

TEST_CASE("spec validation") {
    auto b2 = shared(Family::B, 2);
    auto spec = radial_dunkl(b2, Multiplicity::B(*b2, 0.5, 0.5), {2, 1}, 1, 1e-3, 1);
    CHECK_NOTHROW(validate(spec));
    spec.start = {1, 2};
    CHECK_THROWS_AS(validate(spec), DomainError);
    spec.start = {2, 1};
    spec.dt = -1;
    CHECK_THROWS_AS(validate(spec), InvalidArgument);
    spec.dt = 1e-3;
    spec.stream = 64;
    CHECK_THROWS_AS(validate(spec), InvalidArgument);
    spec.stream = 0;
    spec.T = 1.00049;
    CHECK_THROWS_AS(simulate(spec), InvalidArgument);   // T must be a multiple of dt for trajectories
}

TEST_CASE("trajectories are reproducible and independent of thread count") {
    auto a3 = shared(Family::A, 3);
    auto spec = radial_dunkl(a3, Multiplicity::A(*a3, 0.5), {1.0, 0.0, -1.0}, 0.2, 1e-3, 11);
    auto t1 = simulate(spec, 5), t2 = simulate(spec, 5), t3 = simulate(spec, 6);
    CHECK(t1.states == t2.states);
    CHECK(t1.states != t3.states);
    CHECK(t1.times.size() == 201);
    auto b2 = shared(Family::B, 2);
    auto hs = radial_dunkl(b2, Multiplicity::B(*b2, 0.25, 0.75), {1.0, 0.5}, 1, 2e-3, 3);
    auto c1 = hitting_time_mc(hs, 400, {0.5, 1.0}, 1);
    auto c4 = hitting_time_mc(hs, 400, {0.5, 1.0}, 4);
    CHECK(c1.survival == c4.survival);
    CHECK(c1.hits == c4.hits);
    CHECK(c1.hits > 0);
}

TEST_CASE("refined runs share the coarse Brownian path") {
    // with no drift (k = 0) the path is the Brownian motion itself
    auto b1 = shared(Family::B, 1);
    auto spec = radial_dunkl(b1, Multiplicity::B(*b1, 0.0, 1.0), {50.0}, 0.1, 1e-2, 4);
    auto coarse = simulate(spec, 2);
    spec.dt = 5e-3;
    spec.refinement = 1;
    auto fine = simulate(spec, 2);
    for (std::size_t i = 0; i < coarse.states.size(); ++i)
        CHECK(coarse.states[i][0] == doctest::Approx(fine.states[2 * i][0]).epsilon(1e-14));
}

TEST_CASE("drift flow without noise") {
    // B_1: dx = k0/x dt  =>  x(t)^2 = x0^2 + 2 k0 t
    auto b1 = shared(Family::B, 1);
    auto spec = radial_dunkl(b1, Multiplicity::B(*b1, 0.75, 1.0), {1.0}, 1.0, 1e-4, 1);
    spec.noise = false;
    auto tr = simulate(spec);
    CHECK(tr.states.back()[0] == doctest::Approx(std::sqrt(2.5)).epsilon(1e-4));
}

TEST_CASE("second moment of the rank-one process") {
    // E X_T^2 = x^2 + (2 k0 + 1) T
    auto b1 = shared(Family::B, 1);
    auto spec = radial_dunkl(b1, Multiplicity::B(*b1, 0.75, 1.0), {1.0}, 1.0, 2e-3, 21);
    auto ms = expectation_mc(spec, 20000, [](const Vec& x) { return x[0] * x[0]; }, 1);
    CHECK(std::abs(ms.mean - 3.5) < 4 * ms.se);
}

TEST_CASE("rank-one hitting times match the Gamma law") {
    // x^2 / 2 T0 ~ Gamma(1/2 - k0)
    auto b1 = shared(Family::B, 1);
    for (double k0 : {0.15, 0.4}) {
        auto spec = radial_dunkl(b1, Multiplicity::B(*b1, k0, 1.0), {1.0}, 1.0, 2e-3, 8);
        auto c = hitting_time_mc(spec, 20000, {0.25, 0.5, 1.0}, 1);
        CHECK(c.collapses == 0);
        for (std::size_t i = 0; i < c.times.size(); ++i)
            CHECK(std::abs(c.survival[i] - boost::math::gamma_p(0.5 - k0, 1 / (2 * c.times[i]))) < 4 * c.se[i]);
    }
}
