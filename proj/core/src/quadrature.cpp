#include "dunkl/quadrature.hpp"
#include "dunkl/errors.hpp"

#include <gsl/gsl_integration.h>

namespace dunkl {

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw InvalidArgument("need at least one node");
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(std::size_t(n));
    if (!t) throw Error("gauss-legendre table allocation failed");
    QuadratureRule r;
    for (int i = 0; i < n; ++i) {
        double x, w;
        gsl_integration_glfixed_point(a, b, std::size_t(i), &x, &w, t);
        r.nodes.push_back(x);
        r.weights.push_back(w);
    }
    gsl_integration_glfixed_table_free(t);
    return r;
}

QuadratureRule gauss_legendre_composite(int n, int panels, double a, double b) {
    QuadratureRule r;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        auto q = gauss_legendre(n, a + p * h, a + (p + 1) * h);
        r.nodes.insert(r.nodes.end(), q.nodes.begin(), q.nodes.end());
        r.weights.insert(r.weights.end(), q.weights.begin(), q.weights.end());
    }
    return r;
}

QuadratureRule gauss_jacobi(int n, double a, double b, double alpha, double beta) {
    if (n < 1) throw InvalidArgument("need at least one node");
    if (!(alpha > -1 && beta > -1)) throw InvalidArgument("Jacobi weight exponents must exceed -1");
    gsl_integration_fixed_workspace* w =
        gsl_integration_fixed_alloc(gsl_integration_fixed_jacobi, std::size_t(n), a, b, alpha, beta);
    if (!w) throw Error("gauss-jacobi workspace allocation failed");
    QuadratureRule r;
    const double* x = gsl_integration_fixed_nodes(w);
    const double* wt = gsl_integration_fixed_weights(w);
    r.nodes.assign(x, x + n);
    r.weights.assign(wt, wt + n);
    gsl_integration_fixed_free(w);
    return r;
}

} // namespace dunkl
