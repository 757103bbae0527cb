#include "dunkl/bessel.hpp"
#include "dunkl/errors.hpp"

namespace dunkl {

namespace {
Vec half_squares(const Vec& x) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = 0.5 * x[i] * x[i];
    return z;
}
SeriesSpec make(double alpha, std::vector<double> lower, const SeriesOptions& o) {
    SeriesSpec s;
    s.alpha = alpha;
    s.lower = std::move(lower);
    s.max_degree = o.max_degree;
    s.eps = o.eps;
    s.fixed_degree = o.fixed_degree;
    return s;
}
} // namespace

double generalized_bessel(const RootSystem& rs, const Multiplicity& k, const Vec& x, const Vec& y,
                          const SeriesOptions& opt) {
    const int m = rs.rank();
    if (int(x.size()) != m || int(y.size()) != m) throw InvalidArgument("dimension mismatch");
    switch (rs.family()) {
    case Family::A: {
        double k1 = k.values()[0];
        if (!(k1 > 0)) throw Unsupported("A-type Bessel function needs k > 0");
        return hyperg_multi(make(1.0 / k1, {}, opt), x, y).value;
    }
    case Family::B: {
        double k0 = k.of(rs, unit(m, 0));
        double k1 = m > 1 ? k.of(rs, diff(m, 0, 1)) : 1.0;  // irrelevant in rank one
        if (!(k1 > 0)) throw Unsupported("B-type Bessel function needs k1 > 0");
        double c = k0 + (m - 1) * k1 + 0.5;
        return hyperg_multi(make(1.0 / k1, {c}, opt), half_squares(x), half_squares(y)).value;
    }
    case Family::D: {
        double k1 = k.of(rs, diff(m, 0, 1));
        if (k.of(rs, sum(m, 0, 1)) != k1) throw InvalidArgument("D multiplicity must be constant");
        if (!(k1 > 0)) throw Unsupported("D-type Bessel function needs k > 0");
        double q = 1 + (m - 1) * k1;
        Vec X = half_squares(x), Y = half_squares(y);
        double even = hyperg_multi(make(1.0 / k1, {q - 0.5}, opt), X, Y).value;
        double K = 1, prod = 1;
        for (int j = 0; j < m; ++j) {
            K /= 1 + 2 * j * k1;
            prod *= x[j] * y[j];
        }
        if (prod == 0) return even;
        double odd = hyperg_multi(make(1.0 / k1, {q + 0.5}, opt), X, Y).value;
        return even + K * prod * odd;
    }
    default: throw Unsupported("generalized Bessel function not available for " + rs.name());
    }
}

} // namespace dunkl
