#include "doctest.h"

#include "dunkl/errors.hpp"
#include "dunkl/laws.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/quadrature.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace dunkl;

namespace {
constexpr double kPi = std::numbers::pi;
double gauss(double u, double t) { return std::exp(-u * u / (2 * t)) / std::sqrt(2 * kPi * t); }
} // namespace

TEST_CASE("Macdonald-Mehta constants") {
    for (auto [f, m] : {std::pair{Family::A, 3}, std::pair{Family::B, 2}, std::pair{Family::D, 3}}) {
        auto rs = RootSystem::build(f, m);
        Multiplicity zero(rs, std::vector<double>(std::size_t(rs.num_orbits()), 0.0));
        CHECK(macdonald_mehta(rs, zero) == doctest::Approx(std::pow(2 * kPi, m / 2.0)).epsilon(1e-12));
    }
    auto b1 = RootSystem::build(Family::B, 1);
    for (double k0 : {0.25, 1.0, 2.5})
        CHECK(macdonald_mehta(b1, Multiplicity::B(b1, k0, 1.0)) ==
              doctest::Approx(std::pow(2.0, k0 + 0.5) * std::tgamma(k0 + 0.5)).epsilon(1e-12));
    // A_1 in R^2: rotate to u = (y1 - y2)/sqrt2; the u-integral carries |u|^{3/2}
    auto a = RootSystem::build(Family::A, 2);
    auto q = gauss_jacobi(40, 0.0, 12.0, 0.0, 1.5);
    double s = 0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::exp(-q.nodes[i] * q.nodes[i] / 2);
    s *= 2 * std::pow(2.0, 0.75) * std::sqrt(2 * kPi);
    CHECK(macdonald_mehta(a, Multiplicity::A(a, 0.75)) == doctest::Approx(s).epsilon(1e-10));
    // importance-sampled value, B_2 with k0 = k1 = 1
    auto b2 = RootSystem::build(Family::B, 2);
    auto k = Multiplicity::B(b2, 1.0, 1.0);
    auto mc = macdonald_mehta_mc(b2, k, 200000, 5, 1);
    CHECK(std::abs(mc.mean - macdonald_mehta(b2, k)) < 4 * mc.se);
    auto nc = norm_constants(b2, k);
    CHECK(nc.g0 == doctest::Approx(macdonald_mehta(b2, Multiplicity::B(b2, 0.5, 0.5)) / 8));
}

TEST_CASE("rank-one semigroup density is the Bessel-3 transition density") {
    auto b1 = RootSystem::build(Family::B, 1);
    auto k = Multiplicity::B(b1, 1.0, 1.0);
    for (double t : {0.3, 1.7})
        for (double y : {0.2, 1.1, 2.5}) {
            double x = 0.8;
            double want = y / x * (gauss(y - x, t) - gauss(y + x, t));
            CHECK(semigroup_density(b1, k, t, {x}, {y}) == doctest::Approx(want).epsilon(1e-10));
        }
}

TEST_CASE("semigroup density: normalisation, symmetry, Chapman-Kolmogorov") {
    auto b2 = RootSystem::build(Family::B, 2);
    auto k = Multiplicity::B(b2, 0.8, 0.6);
    auto zero = Multiplicity::B(b2, 0.0, 0.0);
    // total mass: the tail quadrature with no h-transform integrates the density itself
    CHECK(tail_quadrature(b2, k, zero, {2.0, 1.0}, 0.5) == doctest::Approx(1.0).epsilon(1e-8));
    auto a = RootSystem::build(Family::A, 2);
    CHECK(tail_quadrature(a, Multiplicity::A(a, 1.3), Multiplicity::A(a, 0.0), {0.5, -0.2}, 0.8) ==
          doctest::Approx(1.0).epsilon(1e-8));

    // p(x,y) / w(y) is symmetric in (x, y)
    auto w = [&](const Vec& y) {
        double r = 1;
        auto kp = k.on_positive(b2);
        for (std::size_t i = 0; i < kp.size(); ++i) r *= std::pow(dot(b2.positive()[i], y), 2 * kp[i]);
        return r;
    };
    Vec x{1.7, 0.4}, y{1.1, 0.9};
    CHECK(semigroup_density(b2, k, 0.6, x, y) / w(y) ==
          doctest::Approx(semigroup_density(b2, k, 0.6, y, x) / w(x)).epsilon(1e-10));

    // Chapman-Kolmogorov in rank one by quadrature
    auto b1 = RootSystem::build(Family::B, 1);
    auto k1 = Multiplicity::B(b1, 0.35, 1.0);
    SeriesOptions opt;
    opt.max_degree = 200;
    opt.eps = 1e-15;
    auto q = gauss_jacobi(30, 0.0, 0.5, 0.0, 0.7);   // carries z^{2k0} near 0
    auto q2 = gauss_legendre_composite(12, 40, 0.5, 8.0);
    double s = 0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        s += q.weights[i] / std::pow(q.nodes[i], 0.7) * semigroup_density(b1, k1, 0.4, {1.0}, {q.nodes[i]}, opt) *
             semigroup_density(b1, k1, 0.5, {q.nodes[i]}, {1.3}, opt);
    for (std::size_t i = 0; i < q2.nodes.size(); ++i)
        s += q2.weights[i] * semigroup_density(b1, k1, 0.4, {1.0}, {q2.nodes[i]}, opt) *
             semigroup_density(b1, k1, 0.5, {q2.nodes[i]}, {1.3}, opt);
    CHECK(s == doctest::Approx(semigroup_density(b1, k1, 0.9, {1.0}, {1.3}, opt)).epsilon(1e-9));
}

TEST_CASE("determinantal densities") {
    // m = 1: Brownian motion killed at 0, conditioned by y/x
    CHECK(grabiner_density(Family::B, 1, 0.5, {1.0}, {0.7}) ==
          doctest::Approx(0.7 * (gauss(-0.3, 0.5) - gauss(1.7, 0.5))).epsilon(1e-13));
    auto b2 = RootSystem::build(Family::B, 2);
    SeriesOptions opt;
    opt.max_degree = 120;
    opt.eps = 1e-15;
    Vec x{2, 1}, y{1.5, 0.5};
    CHECK(semigroup_density(b2, Multiplicity::B(b2, 1, 1), 0.7, x, y, opt) ==
          doctest::Approx(grabiner_density(Family::B, 2, 0.7, x, y)).epsilon(1e-10));
    auto d2 = RootSystem::build(Family::D, 2);
    Vec yd{1.5, -0.5};
    CHECK(semigroup_density(d2, Multiplicity::D(d2, 1), 0.7, x, yd, opt) ==
          doctest::Approx(grabiner_density(Family::D, 2, 0.7, x, yd)).epsilon(1e-10));
    // swapping two coordinates of y flips both the determinant and h(y)
    Vec ys{0.5, 1.5};
    CHECK(grabiner_density(Family::B, 2, 0.7, x, ys) == doctest::Approx(grabiner_density(Family::B, 2, 0.7, x, y)));
}

TEST_CASE("Laguerre density is the B-type density in square-root coordinates") {
    int m = 2;
    double beta = 2, delta = 2.5;
    double k0 = (beta * (delta - m + 1) - 1) / 2, k1 = beta / 2;
    auto b2 = RootSystem::build(Family::B, 2);
    Vec x{3.0, 1.2}, y{2.2, 0.6};
    double t = 0.8;
    double lag = laguerre_semigroup_density(m, beta, delta, t, x, y);
    double p = semigroup_density(b2, Multiplicity::B(b2, k0, k1), t, {std::sqrt(x[0]), std::sqrt(x[1])},
                                 {std::sqrt(y[0]), std::sqrt(y[1])});
    CHECK(lag == doctest::Approx(p / std::sqrt(4 * y[0] * 4 * y[1])).epsilon(1e-12));
}

TEST_CASE("hitting-time tails") {
    // rank one: x^2 / 2 T0 is Gamma(1/2 - k0) distributed for the process with k0 < 1/2
    for (double k0 : {0.1, 0.3})
        for (double t : {0.1, 0.7, 3.0}) {
            TailSpec s;
            s.family = Family::B;
            s.m = 1;
            s.k0 = k0;
            s.k1 = 1;
            s.tag = TailCase::K0LtHalf;
            s.x = {1.2};
            s.t = t;
            CHECK(tail_distribution(s).value ==
                  doctest::Approx(boost::math::gamma_p(0.5 - k0, 1.44 / (2 * t))).epsilon(1e-9));
            s.k0 = 1 - k0;
            s.tag = TailCase::BothGeHalf;
            CHECK(tail_distribution(s).value ==
                  doctest::Approx(boost::math::gamma_p(0.5 - k0, 1.44 / (2 * t))).epsilon(1e-9));
        }
    // A_1 in R^2 reduces to rank one along x1 - x2
    TailSpec a;
    a.family = Family::A;
    a.m = 2;
    a.k1 = 0.75;
    a.tag = TailCase::AType;
    a.x = {1.0, -0.5};
    a.t = 0.6;
    double Y = 1.5 / std::sqrt(2.0);
    auto av = tail_distribution(a);
    CHECK(av.value == doctest::Approx(boost::math::gamma_p(0.25, Y * Y / (2 * a.t))).epsilon(1e-8));
    CHECK(av.method == "quadrature");

    // B_2: the 1F1 form is exact in the k0 < 1/2 case and must agree with the quadrature
    TailSpec b;
    b.family = Family::B;
    b.m = 2;
    b.k0 = 0.25;
    b.k1 = 0.75;
    b.tag = classify_tail(Family::B, b.k0, b.k1);
    CHECK(b.tag == TailCase::K0LtHalf);
    b.x = {2.0, 1.0};
    auto b2 = RootSystem::build(Family::B, 2);
    for (double t : {0.2, 0.6}) {
        b.t = t;
        auto v = tail_distribution(b);
        CHECK(v.method == "closed_form");
        CHECK(v.value == doctest::Approx(tail_quadrature(b2, Multiplicity::B(b2, 0.75, 0.75),
                                                         Multiplicity::B(b2, 0.25, 0.0), b.x, t))
                             .epsilon(1e-8));
    }
    // every case: inside [0,1], nonincreasing in t, close to 1 for small t
    for (auto [k0, k1] : {std::pair{0.25, 0.75}, std::pair{0.75, 0.25}, std::pair{0.75, 0.75}}) {
        b.k0 = k0;
        b.k1 = k1;
        b.tag = classify_tail(Family::B, k0, k1);
        double prev = 1.0;
        for (double t : {0.005, 0.1, 0.3, 0.9}) {
            b.t = t;
            double v = tail_distribution(b).value;
            CHECK(v >= 0);
            CHECK(v <= prev + 1e-9);
            if (t == 0.005) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
            prev = v;
        }
    }
    CHECK_THROWS_AS(classify_tail(Family::B, 0.2, 0.3), Unsupported);
}

TEST_CASE("beta-Jacobi transition density") {
    JacobiParams jp{2, 2.0, 2.5, 2.5};   // r = s = 1/2
    Vec theta{0.7, 0.2}, lam{0.6, 0.35};
    double series = jacobi_semigroup_density(jp, 0.8, theta, lam);
    CHECK(series == doctest::Approx(jacobi_density_km(jp, 0.8, theta, lam)).epsilon(1e-10));
    CHECK(jacobi_semigroup_density(jp, 40.0, theta, lam) ==
          doctest::Approx(jacobi_stationary_density(jp, lam)).epsilon(1e-12));
    // beta != 2 runs through the Gram-Schmidt basis
    JacobiParams jq{2, 1.0, 4.0, 3.5};
    CHECK(jacobi_semigroup_density(jq, 30.0, theta, lam) ==
          doctest::Approx(jacobi_stationary_density(jq, lam)).epsilon(1e-9));
    CHECK(jacobi_semigroup_density(jq, 0.5, theta, lam) > 0);
    CHECK_THROWS_AS(jacobi_density_km(jq, 0.5, theta, lam), InvalidArgument);
}

TEST_CASE("Gaussian chamber transform is an eigenfunction of the Jacobi-type operator (B_2)") {
    auto b2 = RootSystem::build(Family::B, 2);
    for (double k : {0.5, 1.0}) {
        auto kk = Multiplicity::B(b2, k, k);
        ChamberGaussTransform g(b2, kk);
        OperatorSpec op;
        op.kind = OperatorKind::JK;
        op.rs = &b2;
        op.k = kk;
        op.h = 2e-3;
        Vec x{1.1, 0.5};
        double lhs = apply_operator(op, [&](const Vec& v) { return g(v); }, x);
        CHECK(lhs / g(x) == doctest::Approx(6.0).epsilon(1e-4));   // m + |R+|
        CHECK(g({1e-9, 5e-10}) == doctest::Approx(norm_constants(b2, kk).g0).epsilon(1e-6));
    }
}
