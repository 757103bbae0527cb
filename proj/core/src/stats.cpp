#include "dunkl/stats.hpp"
#include "dunkl/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dunkl {

double kolmogorov_q(double x) {
    if (x <= 0) return 1;
    if (x < 0.27) return 1;  // series is numerically 1 below this
    double s = 0;
    for (int j = 1; j <= 100; ++j) {
        double t = std::exp(-2.0 * j * j * x * x);
        s += (j % 2 ? t : -t);
        if (t < 1e-17) break;
    }
    return std::clamp(2 * s, 0.0, 1.0);
}

KSResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InvalidArgument("empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = double(a.size()), nb = double(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

MeanSE mean_se(const std::vector<double>& v) {
    if (v.empty()) return {};
    double m = 0;
    for (double x : v) m += x;
    m /= double(v.size());
    double s2 = 0;
    for (double x : v) s2 += (x - m) * (x - m);
    double n = double(v.size());
    return {m, n > 1 ? std::sqrt(s2 / (n - 1) / n) : 0.0};
}

} // namespace dunkl
