#pragma once
#include <vector>

namespace dunkl {

struct QuadratureRule {
    std::vector<double> nodes, weights;
};

QuadratureRule gauss_legendre(int n, double a, double b);
// composite Gauss-Legendre: `panels` equal subintervals with n nodes each
QuadratureRule gauss_legendre_composite(int n, int panels, double a, double b);
// nodes/weights for  int_a^b (b-x)^alpha (x-a)^beta f(x) dx
QuadratureRule gauss_jacobi(int n, double a, double b, double alpha, double beta);

} // namespace dunkl
