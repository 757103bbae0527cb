#pragma once
#include "dunkl/root_system.hpp"

#include <vector>

namespace dunkl {

// pFq with Jack parameter alpha. The one-argument series is
//   sum_tau  prod(a)_tau / prod(b)_tau * alpha^|tau| / j'_tau * J... (C-normalised zonal form)
// which in P-normalisation reads  prod(a)/prod(b) * alpha^n * P_tau(x) / hook_upper(tau);
// the two-argument series carries an extra P_tau(y)/P_tau(1).
struct SeriesSpec {
    double alpha = 1.0;
    std::vector<double> upper, lower;
    int max_degree = 30;
    double eps = 1e-10;
    bool fixed_degree = false;  // sum exactly to max_degree, never throw NotConverged
};

struct SeriesValue {
    double value = 0;
    double remainder = 0;   // magnitude of the last shell summed
    int degree = 0;
};

SeriesValue hyperg_multi(const SeriesSpec& spec, const Vec& x);
SeriesValue hyperg_multi(const SeriesSpec& spec, const Vec& x, const Vec& y);

// Per-shell coefficients of the two-argument series:
// F(x,y) = sum_n sum_t c[n][t] P_t(x) P_t(y) with P in the table's basis order.
std::vector<std::vector<long double>> two_arg_coefficients(const SeriesSpec& spec, int nvars, int degree);

// Classical scalar pFq; 2F1 requires |z| < 1.
double hyperg_uni(const std::vector<double>& upper, const std::vector<double>& lower, double z,
                  double eps = 1e-16, int max_terms = 200000);

} // namespace dunkl
