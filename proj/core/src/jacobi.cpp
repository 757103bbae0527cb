#include "dunkl/jacobi.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/jack.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

namespace dunkl {

double jacobi_poly(int n, double r, double s, double x) {
    if (n < 0) throw InvalidArgument("negative degree");
    const double u = (1 - x) / 2;
    double term = 1, sum = 1;
    for (int j = 0; j < n; ++j) {
        term *= (j - n) * (n + r + s + 1 + j) / ((r + 1 + j) * (j + 1.0)) * u;
        sum += term;
    }
    double lead = 1;
    for (int j = 0; j < n; ++j) lead *= (r + 1 + j) / (j + 1.0);
    return lead * sum;
}

namespace {
double log_norm2(int n, double r, double s) {
    if (n == 0) return 0;
    // h_n / (2^{r+s+1} B(r+1, s+1))
    double lh = -std::log(2.0 * n + r + s + 1) + std::lgamma(n + r + 1) + std::lgamma(n + s + 1) -
                std::lgamma(n + r + s + 1) - std::lgamma(n + 1.0);
    double lb = std::lgamma(r + 1) + std::lgamma(s + 1) - std::lgamma(r + s + 2);
    return lh - lb;
}
} // namespace

double jacobi_orthonormal(int n, double r, double s, double u) {
    return jacobi_poly(n, r, s, 1 - 2 * u) * std::exp(-0.5 * log_norm2(n, r, s));
}

double jacobi_eigenvalue(const Partition& tau, const JacobiParams& jp) {
    double acc = 0;
    for (std::size_t i = 0; i < tau.size(); ++i) acc += tau[i] * (tau[i] - 1 - jp.beta * double(i));
    acc += weight(tau) * (jp.r() + jp.s() + jp.beta * (jp.m - 1) + 2);
    return 2 * acc;
}

double log_selberg(int m, double a, double b, double g) {
    double s = 0;
    for (int j = 0; j < m; ++j)
        s += std::lgamma(a + j * g) + std::lgamma(b + j * g) + std::lgamma(1 + (j + 1) * g) -
             std::lgamma(a + b + (m + j - 1) * g) - std::lgamma(1 + g);
    return s;
}

namespace {
double log_ordered_norm(const JacobiParams& jp) {
    return log_selberg(jp.m, jp.r() + 1, jp.s() + 1, jp.beta / 2) - std::lgamma(jp.m + 1.0);
}
double vandermonde(const Vec& l) {
    double v = 1;
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = i + 1; j < l.size(); ++j) v *= l[i] - l[j];
    return v;
}

// Full polynomials in m <= 3 variables, keyed by exponent vector.
using Poly = std::map<std::vector<int>, long double>;

void add_monomial(Poly& p, const Partition& mu, double c, int m) {
    std::vector<int> e(std::size_t(m), 0);
    for (std::size_t i = 0; i < mu.size(); ++i) e[i] = mu[i];
    std::sort(e.begin(), e.end());
    do p[e] += c;
    while (std::next_permutation(e.begin(), e.end()));
}

Poly multiply(const Poly& a, const Poly& b) {
    Poly r;
    std::vector<int> e;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r[e] += ca * cb;
        }
    return r;
}

// Normalised integral of P_nu against the Selberg weight l^r (1-l)^s |V|^beta (Kadell):
//   P_nu(1) prod_i (a + (m-i) g)_{nu_i} / (a + b + (2m-i-1) g)_{nu_i},  a = r+1, b = s+1, g = beta/2
long double kadell(const Partition& nu, double at_ones, const JacobiParams& jp) {
    const double a = jp.r() + 1, b = jp.s() + 1, g = jp.beta / 2;
    long double v = at_ones;
    for (int i = 1; i <= jp.m; ++i) {
        int ni = i <= int(nu.size()) ? nu[std::size_t(i - 1)] : 0;
        for (int j = 0; j < ni; ++j) v *= (a + (jp.m - i) * g + j) / (a + b + (2 * jp.m - i - 1) * g + j);
    }
    return v;
}

// P-normalised Jack coefficients on the monomial basis, degree shells built on demand.
struct PShells {
    double alpha;
    int m;
    std::map<int, JackTable::Shell> cache;
    const JackTable::Shell& operator()(int n) {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        auto js = jack_shell<double>(n, alpha, m);
        JackTable::Shell sh;
        sh.basis = js.basis;
        sh.P = js.J;
        for (std::size_t t = 0; t < sh.basis.size(); ++t) {
            double lead = js.J[t][t];
            for (auto& v : sh.P[t]) v /= lead;
            sh.at_ones.push_back(jack_at_ones(sh.basis[t], alpha, m) / lead);
        }
        return cache.emplace(n, std::move(sh)).first->second;
    }
};

// Integral of a symmetric polynomial: expand it in Jack P (leading term first) and sum moments.
long double jack_moment(PShells& table, const JacobiParams& jp, const Poly& f) {
    std::map<int, std::map<Partition, long double>> by_degree;   // monomial coefficients per shell
    for (const auto& [e, c] : f) {
        if (!std::is_sorted(e.rbegin(), e.rend())) continue;
        Partition mu;
        for (int v : e)
            if (v > 0) mu.push_back(v);
        std::sort(mu.rbegin(), mu.rend());
        by_degree[weight(mu)][mu] = c;
    }
    long double total = 0;
    for (auto& [n, coef] : by_degree) {
        const auto& sh = table(n);
        std::vector<std::size_t> order(sh.basis.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sh.basis[y] < sh.basis[x]; });
        for (std::size_t t : order) {
            auto it = coef.find(sh.basis[t]);
            long double d = it == coef.end() ? 0.0L : it->second;
            if (d == 0) continue;
            for (std::size_t j = 0; j < sh.basis.size(); ++j)
                if (sh.P[t][j] != 0) coef[sh.basis[j]] -= d * sh.P[t][j];
            total += d * kadell(sh.basis[t], sh.at_ones[t], jp);
        }
    }
    return total;
}
} // namespace

double jacobi_stationary_density(const JacobiParams& jp, const Vec& l) {
    if (int(l.size()) != jp.m) throw InvalidArgument("dimension mismatch");
    double lg = 0;
    for (double v : l) {
        if (!(v > 0 && v < 1)) return 0;
        lg += jp.r() * std::log(v) + jp.s() * std::log1p(-v);
    }
    double V = std::fabs(vandermonde(l));
    if (V == 0) return 0;
    lg += jp.beta * std::log(V);
    return std::exp(lg - log_ordered_norm(jp));
}

JacobiBasis::JacobiBasis(const JacobiParams& jp, JacobiBasisKind kind, int max_degree)
    : jp_(jp), kind_(kind), max_degree_(max_degree) {
    if (jp.m < 1 || !(jp.beta > 0)) throw InvalidArgument("bad beta-Jacobi parameters");
    if (!(jp.r() > -1 && jp.s() > -1)) throw InvalidArgument("Jacobi weight exponents r, s must exceed -1");
    for (int n = 0; n <= max_degree; ++n) {
        auto ps = partitions_of(n, jp.m);
        std::reverse(ps.begin(), ps.end());  // increasing lex extends dominance
        parts_.insert(parts_.end(), ps.begin(), ps.end());
    }
    if (kind == JacobiBasisKind::Determinantal) {
        if (jp.beta != 2) throw Unsupported("determinantal Jacobi basis needs beta = 2");
        double lb = std::lgamma(jp.r() + 1) + std::lgamma(jp.s() + 1) - std::lgamma(jp.r() + jp.s() + 2);
        log_det_norm_ = 0.5 * (log_ordered_norm(jp) - jp.m * lb);
        return;
    }
    if (jp.m > 3) throw Unsupported("Gram-Schmidt Jacobi basis limited to m <= 3");
    const double alpha = 2 / jp.beta;
    PShells table{alpha, jp.m, {}};
    const std::size_t N = parts_.size();
    std::vector<Poly> P(N);
    for (std::size_t i = 0; i < N; ++i) {
        const auto& sh = table(weight(parts_[i]));
        auto t = std::size_t(std::find(sh.basis.begin(), sh.basis.end(), parts_[i]) - sh.basis.begin());
        for (std::size_t j = 0; j < sh.basis.size(); ++j)
            if (sh.P[t][j] != 0) add_monomial(P[i], sh.basis[j], sh.P[t][j], jp.m);
    }
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> G(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j <= i; ++j) G(i, j) = G(j, i) = jack_moment(table, jp, multiply(P[i], P[j]));
    Eigen::LLT<Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>> llt(G);
    if (llt.info() != Eigen::Success) throw NotConverged("Gram matrix not positive definite (degree too high)");
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> Li =
        llt.matrixL().solve(Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>::Identity(N, N));
    Linv_.assign(N, std::vector<double>(N, 0));
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b <= a; ++b) Linv_[a][b] = double(Li(a, b));
}

std::vector<double> JacobiBasis::values(const Vec& l) const {
    const int m = jp_.m;
    if (int(l.size()) != m) throw InvalidArgument("dimension mismatch");
    const std::size_t N = parts_.size();
    std::vector<double> out(N, 0);
    if (kind_ == JacobiBasisKind::Determinantal) {
        double V = vandermonde(l);
        if (V == 0) throw DomainError("coincident coordinates");
        const int top = max_degree_ + m;
        std::vector<std::vector<double>> p(top, std::vector<double>(m));
        for (int n = 0; n < top; ++n)
            for (int j = 0; j < m; ++j) p[n][j] = jacobi_orthonormal(n, jp_.r(), jp_.s(), l[j]);
        const double c = std::exp(log_det_norm_);
        Eigen::MatrixXd M(m, m);
        for (std::size_t t = 0; t < N; ++t) {
            const auto& tau = parts_[t];
            int sign = 1;
            for (int i = 0; i < m; ++i) {
                int ni = (i < int(tau.size()) ? tau[i] : 0) + m - 1 - i;
                if (ni % 2) sign = -sign;
                for (int j = 0; j < m; ++j) M(i, j) = p[ni][j];
            }
            out[t] = sign * c * M.determinant() / V;
        }
        return out;
    }
    auto table = JackTable::get(2 / jp_.beta, m);
    std::vector<double> J(N);
    std::size_t pos = 0;
    for (int n = 0; n <= max_degree_; ++n) {
        auto vals = jackP_shell_values(*table, n, l);
        for (std::size_t t = vals.size(); t-- > 0;) J[pos++] = double(vals[t]);
    }
    for (std::size_t a = 0; a < N; ++a) {
        double s = 0;
        for (std::size_t b = 0; b <= a; ++b) s += Linv_[a][b] * J[b];
        out[a] = s;
    }
    return out;
}

double JacobiBasis::value(const Partition& tau, const Vec& l) const {
    auto it = std::find(parts_.begin(), parts_.end(), tau);
    if (it == parts_.end()) throw InvalidArgument("partition outside the basis");
    return values(l)[std::size_t(it - parts_.begin())];
}

double multivariate_jacobi(const Partition& tau, const JacobiParams& jp, const Vec& l, JacobiBasisKind kind) {
    JacobiBasis b(jp, kind, weight(tau));
    return b.value(tau, l);
}

} // namespace dunkl
