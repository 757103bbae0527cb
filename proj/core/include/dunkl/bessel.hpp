#pragma once
#include "dunkl/hypergeometric.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

struct SeriesOptions {
    int max_degree = 30;
    double eps = 1e-10;
    bool fixed_degree = false;
};

// (1/|W|) D_k^W(x, y) for families A, B and D.
//   A:  0F0(x, y)
//   B:  0F1(k0 + (m-1)k1 + 1/2; x^2/2, y^2/2)
//   D:  0F1(q - 1/2; x^2/2, y^2/2) + K prod(x_i y_i) 0F1(q + 1/2; x^2/2, y^2/2),
//       q = 1 + (m-1)k, K = prod_{j<m} 1/(1 + 2jk)
// all with Jack parameter 1/k_1.
double generalized_bessel(const RootSystem& rs, const Multiplicity& k, const Vec& x, const Vec& y,
                          const SeriesOptions& opt = {});

} // namespace dunkl
