#include "dunkl/hypergeometric.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/jack.hpp"

#include <cmath>
#include <sstream>

namespace dunkl {

namespace {

long double shell_coefficient(const SeriesSpec& spec, const Partition& tau, int n, double hook_up) {
    const long double k = 1.0L / spec.alpha;
    long double c = std::pow((long double)spec.alpha, n) / hook_up;
    for (double a : spec.upper) {
        long double v = gen_pochhammer_l(a, tau, k);
        if (v == 0) return 0;
        c *= v;
    }
    for (double b : spec.lower) {
        long double v = gen_pochhammer_l(b, tau, k);
        if (v == 0) {
            std::ostringstream os;
            os << "generalised Pochhammer (" << b << ")_tau vanishes in a denominator";
            throw PochhammerZero(os.str());
        }
        c /= v;
    }
    return c;
}

SeriesValue run(const SeriesSpec& spec, const Vec& x, const Vec* y) {
    if (!(spec.alpha > 0)) throw InvalidArgument("Jack parameter must be positive");
    if (y && y->size() != x.size()) throw InvalidArgument("dimension mismatch");
    if (x.empty()) throw InvalidArgument("empty argument");
    auto table = JackTable::get(spec.alpha, int(x.size()));
    long double total = 0;
    int small = 0;
    SeriesValue out;
    for (int n = 0; n <= spec.max_degree; ++n) {
        const auto& sh = table->shell(n);
        auto px = jackP_shell_values(*table, n, x);
        std::vector<long double> py;
        if (y) py = jackP_shell_values(*table, n, *y);
        long double s = 0;
        for (std::size_t t = 0; t < sh.basis.size(); ++t) {
            if (px[t] == 0) continue;
            long double c = shell_coefficient(spec, sh.basis[t], n, sh.hook_upper[t]);
            if (c == 0) continue;
            long double term = c * px[t];
            if (y) term *= py[t] / (long double)sh.at_ones[t];
            s += term;
        }
        total += s;
        out.degree = n;
        out.remainder = double(std::fabs(s));
        if (spec.fixed_degree) continue;
        long double scale = std::fabs(total) > 0 ? std::fabs(total) : 1.0L;
        small = (n > 0 && std::fabs(s) < spec.eps * scale) ? small + 1 : 0;
        if (small >= 3) break;
    }
    out.value = double(total);
    if (!std::isfinite(out.value)) throw NotConverged("series overflowed");
    if (!spec.fixed_degree && small < 3) {
        std::ostringstream os;
        os << "series not converged at degree " << spec.max_degree << " (last shell " << out.remainder
           << ", sum " << out.value << ")";
        throw NotConverged(os.str());
    }
    return out;
}

} // namespace

SeriesValue hyperg_multi(const SeriesSpec& spec, const Vec& x) { return run(spec, x, nullptr); }
SeriesValue hyperg_multi(const SeriesSpec& spec, const Vec& x, const Vec& y) { return run(spec, x, &y); }

std::vector<std::vector<long double>> two_arg_coefficients(const SeriesSpec& spec, int nvars, int degree) {
    auto table = JackTable::get(spec.alpha, nvars);
    std::vector<std::vector<long double>> c(degree + 1);
    for (int n = 0; n <= degree; ++n) {
        const auto& sh = table->shell(n);
        for (std::size_t t = 0; t < sh.basis.size(); ++t)
            c[n].push_back(shell_coefficient(spec, sh.basis[t], n, sh.hook_upper[t]) / sh.at_ones[t]);
    }
    return c;
}

double hyperg_uni(const std::vector<double>& upper, const std::vector<double>& lower, double z, double eps,
                  int max_terms) {
    if (upper.size() == lower.size() + 1 && !(std::fabs(z) < 1))
        throw DomainError("series outside its disc of convergence");
    if (upper.size() > lower.size() + 1) throw Unsupported("divergent pFq (p > q+1)");
    long double term = 1, sum = 1;
    int small = 0;
    for (int n = 0; n < max_terms; ++n) {
        for (double a : upper) term *= (long double)a + n;
        for (double b : lower) {
            long double d = (long double)b + n;
            if (d == 0) throw PochhammerZero("pole of a lower parameter");
            term /= d;
        }
        term *= (long double)z / (n + 1);
        sum += term;
        if (term == 0) return double(sum);
        small = std::fabs(term) < eps * std::fabs(sum) ? small + 1 : 0;
        if (small >= 2) return double(sum);
    }
    throw NotConverged("scalar hypergeometric series did not converge");
}

} // namespace dunkl
