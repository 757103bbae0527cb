#pragma once
#include <vector>

namespace dunkl {

// Kolmogorov limiting survival Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2)
double kolmogorov_q(double x);

struct KSResult {
    double statistic = 0;
    double p_value = 1;
};
// Two-sample Kolmogorov-Smirnov test, asymptotic p-value with the usual small-sample correction.
KSResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct MeanSE {
    double mean = 0, se = 0;
};
MeanSE mean_se(const std::vector<double>& v);

} // namespace dunkl
