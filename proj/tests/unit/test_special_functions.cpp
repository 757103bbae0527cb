#include "doctest.h"

#include "dunkl/bessel.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/jacobi.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/quadrature.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/jacobi.hpp>

#include <cmath>
#include <random>

using namespace dunkl;

namespace {
SeriesOptions tight() {
    SeriesOptions o;
    o.max_degree = 80;
    o.eps = 1e-15;
    return o;
}
} // namespace

TEST_CASE("rank-one Bessel functions are hyperbolic") {
    auto b1 = RootSystem::build(Family::B, 1);
    // k0 = 1: sinh(xy)/(xy); k0 = 0: cosh(xy)
    for (double xy : {0.1, 1.0, 3.0}) {
        CHECK(generalized_bessel(b1, Multiplicity::B(b1, 1.0, 1.0), {xy}, {1.0}, tight()) ==
              doctest::Approx(std::sinh(xy) / xy).epsilon(1e-12));
        CHECK(generalized_bessel(b1, Multiplicity::B(b1, 0.0, 1.0), {1.0}, {xy}, tight()) ==
              doctest::Approx(std::cosh(xy)).epsilon(1e-12));
    }
}

TEST_CASE("A-type Bessel function at k = 1 is a Harish-Chandra determinant ratio") {
    // A_1 in R^2, k = 1:  (1/2!) D(x,y) = 0F0^{(1)}(x,y) = (e^{x1y1+x2y2} - e^{x1y2+x2y1}) / ((x1-x2)(y1-y2))
    auto a = RootSystem::build(Family::A, 2);
    Vec x{0.9, -0.3}, y{1.2, 0.4};
    double hc = (std::exp(x[0] * y[0] + x[1] * y[1]) - std::exp(x[0] * y[1] + x[1] * y[0])) /
                ((x[0] - x[1]) * (y[0] - y[1]));
    CHECK(generalized_bessel(a, Multiplicity::A(a, 1.0), x, y, tight()) == doctest::Approx(hc).epsilon(1e-12));
}

TEST_CASE("Bessel functions solve the Dunkl-Laplacian eigen-equation") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> U(0.2, 1.2);
    struct Case {
        Family f;
        int m;
        std::vector<double> k;
    };
    for (const Case& c : {Case{Family::A, 3, {0.6}}, Case{Family::B, 2, {0.3, 0.8}}, Case{Family::D, 2, {0.7, 0.7}},
                          Case{Family::D, 3, {0.6}}}) {
        auto rs = RootSystem::build(c.f, c.m);
        Multiplicity k(rs, c.k);
        CAPTURE(rs.name());
        for (int rep = 0; rep < 3; ++rep) {
            Vec x(c.m), y(c.m);
            // strictly decreasing positive coordinates lie in every chamber used here
            double ax = 3.0, ay = 3.0;
            for (int i = 0; i < c.m; ++i) {
                ax -= U(gen);
                ay -= U(gen) * 0.8;
                x[i] = ax;
                y[i] = ay;
            }
            if (c.f == Family::D && y[c.m - 1] < 0) y[c.m - 1] = -y[c.m - 1] * 0.1;
            OperatorSpec op;
            op.kind = OperatorKind::DUNKL_LAPLACIAN_WINV;
            op.rs = &rs;
            op.k = k;
            op.h = 1e-3;
            auto F = [&](const Vec& yy) { return generalized_bessel(rs, k, x, yy, tight()); };
            double lhs = apply_operator(op, F, y);
            CHECK(lhs == doctest::Approx(dot(x, x) * F(y)).epsilon(1e-6));
        }
    }
}

TEST_CASE("finite differences are exact on low-degree polynomials") {
    auto f = [](const Vec& x) { return x[0] * x[0] * x[1] + 3 * x[1] * x[1] * x[1] - x[0]; };
    auto d = fd_derivatives(f, {0.5, -0.7}, 1e-2, true);
    CHECK(d.grad[0] == doctest::Approx(2 * 0.5 * -0.7 - 1).epsilon(1e-10));
    CHECK(d.grad[1] == doctest::Approx(0.25 + 9 * 0.49).epsilon(1e-10));
    CHECK(d.diag2[0] == doctest::Approx(-1.4).epsilon(1e-9));
    CHECK(d.diag2[1] == doctest::Approx(18 * -0.7).epsilon(1e-9));
}

TEST_CASE("Gauss quadrature") {
    auto gl = gauss_legendre(6, -1.0, 2.0);
    double s = 0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 11);
    CHECK(s == doctest::Approx((std::pow(2.0, 12) - 1) / 12).epsilon(1e-13));
    auto comp = gauss_legendre_composite(8, 10, 0.0, std::acos(-1.0));
    s = 0;
    for (std::size_t i = 0; i < comp.nodes.size(); ++i) s += comp.weights[i] * std::sin(comp.nodes[i]);
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    // int_0^1 (1-x)^a x^b dx = B(b+1, a+1)
    auto gj = gauss_jacobi(5, 0.0, 1.0, 0.3, -0.4);
    s = 0;
    for (double w : gj.weights) s += w;
    CHECK(s == doctest::Approx(boost::math::beta(0.6, 1.3)).epsilon(1e-13));
}

TEST_CASE("classical Jacobi polynomials") {
    for (int n = 0; n <= 6; ++n)
        for (double x : {-0.8, 0.1, 0.95})
            CHECK(jacobi_poly(n, 0.5, -0.3, x) ==
                  doctest::Approx(boost::math::jacobi(unsigned(n), 0.5, -0.3, x)).epsilon(1e-12));
    // orthonormality on (0,1) by quadrature
    double r = 0.7, s = 1.3;
    auto q = gauss_jacobi(30, 0.0, 1.0, s, r);
    double B = boost::math::beta(r + 1, s + 1);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) {
            double acc = 0;
            for (std::size_t i = 0; i < q.nodes.size(); ++i)
                acc += q.weights[i] * jacobi_orthonormal(a, r, s, q.nodes[i]) * jacobi_orthonormal(b, r, s, q.nodes[i]);
            CHECK(acc / B == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-11));
        }
}

TEST_CASE("Selberg integral") {
    // m = 1 is the Beta function
    CHECK(std::exp(log_selberg(1, 1.5, 2.5, 0.7)) == doctest::Approx(boost::math::beta(1.5, 2.5)).epsilon(1e-13));
    // m = 2, g = 1 against tensor quadrature of u^{a-1}(1-u)^{b-1} v^{a-1}(1-v)^{b-1} (u-v)^2
    double a = 1.5, b = 2.0;
    auto q = gauss_jacobi(20, 0.0, 1.0, b - 1, a - 1);
    double s = 0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        for (std::size_t j = 0; j < q.nodes.size(); ++j)
            s += q.weights[i] * q.weights[j] * std::pow(q.nodes[i] - q.nodes[j], 2);
    CHECK(std::exp(log_selberg(2, a, b, 1.0)) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("multivariate Jacobi bases") {
    JacobiParams jp{2, 2.0, 3.0, 2.5};
    JacobiBasis det(jp, JacobiBasisKind::Determinantal, 4);
    JacobiBasis gs(jp, JacobiBasisKind::GramSchmidt, 4);
    REQUIRE(det.partitions() == gs.partitions());
    Vec lam{0.8, 0.3};
    auto a = det.values(lam), b = gs.values(lam);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-8));
    // P_tau are eigenfunctions of the lambda-coordinate generator
    OperatorSpec op;
    op.kind = OperatorKind::BETA_JACOBI_GEN;
    op.beta = jp.beta;
    op.p = jp.p;
    op.q = jp.q;
    op.h = 1e-3;
    for (const Partition& tau : det.partitions()) {
        auto f = [&](const Vec& l) { return det.value(tau, l); };
        CHECK(apply_operator(op, f, lam) == doctest::Approx(-jacobi_eigenvalue(tau, jp) * f(lam)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(JacobiBasis(JacobiParams{2, 1.0, 3.0, 2.5}, JacobiBasisKind::Determinantal, 3), Unsupported);
}
