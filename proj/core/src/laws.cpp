#include "dunkl/laws.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/hypergeometric.hpp"
#include "dunkl/jack.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/rng.hpp"
#include "dunkl/sde.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace dunkl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2 = std::numbers::ln2;

// log c for B_m with (k0 on e_i, k1 on e_i +- e_j)
double log_mehta_B(int m, double k0, double k1) {
    double s = (m * (k0 + 0.5) + k1 * m * (m - 1)) * kLog2;
    for (int j = 0; j < m; ++j)
        s += std::lgamma(k0 + 0.5 + j * k1) + std::lgamma(1 + (j + 1) * k1) - std::lgamma(1 + k1);
    return s;
}

double log_mehta_A(int m, double k) {
    double s = 0.5 * m * std::log(2 * kPi);
    for (int j = 1; j <= m; ++j) s += std::lgamma(1 + j * k) - std::lgamma(1 + k);
    return s;
}

double mid_k(const RootSystem& rs, const Multiplicity& k) {
    int m = rs.rank();
    return m > 1 ? k.of(rs, diff(m, 0, 1)) : 0.0;
}

double log_mehta(const RootSystem& rs, const Multiplicity& k) {
    const int m = rs.rank();
    for (double v : k.values())
        if (v < 0) throw InvalidArgument("Macdonald-Mehta closed form needs k >= 0");
    switch (rs.family()) {
    case Family::A: return log_mehta_A(m, m > 1 ? k.values()[0] : 0.0);
    case Family::B: return log_mehta_B(m, k.of(rs, unit(m, 0)), mid_k(rs, k));
    case Family::C: {
        double kl = k.of(rs, unit(m, 0, 2));
        return 2 * m * kl * kLog2 + log_mehta_B(m, kl, mid_k(rs, k));
    }
    case Family::D: {
        double k1 = k.of(rs, diff(m, 0, 1));
        if (k.of(rs, sum(m, 0, 1)) != k1) throw Unsupported("D closed form needs a constant multiplicity");
        return log_mehta_B(m, 0.0, k1);
    }
    case Family::BC: {
        double ke = k.of(rs, unit(m, 0)), k2e = k.of(rs, unit(m, 0, 2));
        return 2 * m * k2e * kLog2 + log_mehta_B(m, ke + k2e, mid_k(rs, k));
    }
    }
    throw Unsupported("unknown family");
}

double log_h(const RootSystem& rs, const std::vector<double>& kpos, const Vec& y, double power_scale) {
    double s = 0;
    for (std::size_t i = 0; i < rs.positive().size(); ++i) {
        double e = power_scale * kpos[i];
        if (e == 0) continue;
        double ip = dot(rs.positive()[i], y);
        if (!(ip > 0)) return -INFINITY;
        s += e * std::log(ip);
    }
    return s;
}

} // namespace

double macdonald_mehta(const RootSystem& rs, const Multiplicity& k) { return std::exp(log_mehta(rs, k)); }

MeanSE macdonald_mehta_mc(const RootSystem& rs, const Multiplicity& k, std::size_t samples, std::uint64_t seed,
                          unsigned threads) {
    require(samples > 1, "need samples");
    const int m = rs.rank();
    auto kpos = k.on_positive(rs);
    NormalStream ns(seed);
    constexpr std::size_t block = 4096;
    std::size_t nblocks = (samples + block - 1) / block;
    std::vector<double> vals(samples);
    parallel_for(nblocks, threads, [&](std::size_t b) {
        Vec y(m);
        for (std::size_t i = b * block; i < std::min(samples, (b + 1) * block); ++i) {
            ns.fill(y.data(), m, std::uint32_t(b), 200, i - b * block, 0);
            double lw = 0;
            for (std::size_t a = 0; a < kpos.size(); ++a)
                if (kpos[a] != 0) lw += 2 * kpos[a] * std::log(std::abs(dot(rs.positive()[a], y)));
            vals[i] = std::exp(lw);
        }
    });
    MeanSE r = mean_se(vals);
    double f = std::pow(2 * kPi, 0.5 * m);
    return {r.mean * f, r.se * f};
}

NormConstants norm_constants(const RootSystem& rs, const Multiplicity& k, std::size_t mc_samples,
                             std::uint64_t seed) {
    NormConstants nc;
    nc.c_k = macdonald_mehta(rs, k);
    std::vector<double> half(rs.num_orbits(), 0.5);
    nc.g0 = macdonald_mehta(rs, Multiplicity(rs, half)) / double(rs.weyl_order());
    if (mc_samples > 0) {
        MeanSE r = macdonald_mehta_mc(rs, k, mc_samples, seed);
        nc.c_k_mc = r.mean;
        nc.c_k_mc_se = r.se;
        if (r.se > 0.01 * r.mean) throw NotConverged("Monte Carlo estimate of c_k above 1% relative error");
    }
    return nc;
}

double semigroup_density(const RootSystem& rs, const Multiplicity& k, double t, const Vec& x, const Vec& y,
                         const SeriesOptions& opt) {
    require(t > 0, "t must be positive");
    const int m = rs.rank();
    require(int(x.size()) == m && int(y.size()) == m, "dimension mismatch");
    if (rs.chamber_distance(x) < 0 || rs.chamber_distance(y) < 0)
        throw DomainError("density arguments must lie in the closed chamber");
    auto kpos = k.on_positive(rs);
    double lh = log_h(rs, kpos, y, 2.0);
    if (lh == -INFINITY) return 0.0;
    double gamma = k.gamma(rs);
    double st = std::sqrt(t), nx = 0, ny = 0;
    Vec xs(m), ys(m);
    for (int i = 0; i < m; ++i) {
        xs[i] = x[i] / st;
        ys[i] = y[i] / st;
        nx += x[i] * x[i];
        ny += y[i] * y[i];
    }
    double F = generalized_bessel(rs, k, xs, ys, opt);
    if (!(F > 0)) throw NotConverged("generalized Bessel series lost positivity");
    double lg = std::log(double(rs.weyl_order())) - log_mehta(rs, k) - (gamma + 0.5 * m) * std::log(t) -
                (nx + ny) / (2 * t) + std::log(F) + lh;
    double v = std::exp(lg);
    if (!std::isfinite(v)) throw RangeViolation("density overflow");
    return v;
}

double grabiner_density(Family family, int m, double t, const Vec& x, const Vec& y) {
    require(family == Family::B || family == Family::D, "Grabiner density is implemented for B and D");
    require(t > 0 && m >= 1, "bad arguments");
    require(int(x.size()) == m && int(y.size()) == m, "dimension mismatch");
    require(family == Family::B || m >= 2, "D needs m >= 2");
    auto N = [t](double u) { return std::exp(-u * u / (2 * t)) / std::sqrt(2 * kPi * t); };
    Eigen::MatrixXd minus(m, m), plus(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double a = N(y[j] - x[i]), b = N(y[j] + x[i]);
            minus(i, j) = a - b;
            plus(i, j) = a + b;
        }
    auto h = [&](const Vec& v) {
        double p = 1;
        if (family == Family::B)
            for (double c : v) p *= c;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) p *= (v[i] - v[j]) * (v[i] + v[j]);
        return p;
    };
    double hx = h(x);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (x[i] == x[j] || y[i] == y[j]) throw DomainError("coincident coordinates");
    if (hx == 0) throw DomainError("start point on a wall");
    double det = family == Family::B ? minus.determinant() : 0.5 * (minus.determinant() + plus.determinant());
    return h(y) / hx * det;
}

// ---------------------------------------------------------------------------
// hitting-time tails

std::string to_string(TailCase c) {
    switch (c) {
    case TailCase::BothGeHalf: return "both_ge_half";
    case TailCase::K0LtHalf: return "k0_lt_half";
    case TailCase::K1LtHalf: return "k1_lt_half";
    case TailCase::AType: return "a_type";
    }
    return "?";
}

TailCase classify_tail(Family family, double k0, double k1) {
    if (family == Family::A) {
        require(k1 >= 0.5, "A-type tail needs k >= 1/2 (the index-flipped process 1 - k hits)");
        return TailCase::AType;
    }
    require(family == Family::B, "tails are implemented for A and B");
    if (k0 >= 0.5 && k1 >= 0.5) return TailCase::BothGeHalf;
    if (k0 < 0.5 && k1 >= 0.5) return TailCase::K0LtHalf;
    if (k0 >= 0.5 && k1 < 0.5) return TailCase::K1LtHalf;
    throw Unsupported("no tail formula when both multiplicities are below 1/2");
}

Multiplicity simulated_multiplicity(const RootSystem& rs, const TailSpec& s) {
    switch (s.tag) {
    case TailCase::BothGeHalf: return Multiplicity::B(rs, 1 - s.k0, 1 - s.k1);
    case TailCase::K0LtHalf:
    case TailCase::K1LtHalf: return Multiplicity::B(rs, s.k0, s.k1);
    case TailCase::AType: return Multiplicity::A(rs, 1 - s.k1);
    }
    throw Unsupported("unknown tail case");
}

namespace {

struct Poch {
    std::vector<long double> lg;   // log|(a)_n|
    std::vector<int> sg;
    Poch(long double a, int N) : lg(N + 1), sg(N + 1) {
        lg[0] = 0;
        sg[0] = 1;
        for (int n = 1; n <= N; ++n) {
            long double v = a + n - 1;
            sg[n] = v == 0 ? 0 : (v < 0 ? -sg[n - 1] : sg[n - 1]);
            lg[n] = lg[n - 1] + (v == 0 ? 0 : std::log(std::fabs(v)));
        }
    }
};

// log of the two-variable 2F1^{(1/k)}(e, b; c; z1, z2), positive arguments in (0,1).
long double log_2f1_two(double e, double b, double c, double k, long double z1, long double z2, int N,
                        int* used) {
    Poch pe(e, N), pe2(e - k, N), pb(b, N), pb2(b - k, N), pc(c, N), pc2(c - k, N);
    // P_(j)(z1,z2) = u_j / w_j, u the coefficients of (1 - z1 s)^-k (1 - z2 s)^-k
    std::vector<long double> logP(N + 1);
    {
        long double u0 = 1, u1 = k * (z1 + z2), scale = 0;  // u_j = exp(scale) * cur
        long double lw = 0;                                  // log w_j, w_j = (k)_j / j!
        logP[0] = 0;
        if (N >= 1) logP[1] = std::log(u1) - std::log((long double)k);
        long double prev = u0, cur = u1;
        lw = std::log((long double)k);
        for (int j = 1; j < N; ++j) {
            long double nxt = ((z1 + z2) * (j + k) * cur - z1 * z2 * (j - 1 + 2 * k) * prev) / (j + 1);
            prev = cur;
            cur = nxt;
            long double r = std::fabs(cur);
            if (r > 1e100L || (r < 1e-100L && r > 0)) {
                long double ls = std::log(r);
                scale += ls;
                prev /= r;
                cur /= r;
            }
            lw += std::log((k + j) / (j + 1));
            logP[j + 1] = scale + std::log(cur) - lw;
        }
    }
    const long double lz12 = std::log(z1 * z2);
    const long double ik = k;  // 1/alpha
    long double total = 0, lref = 0;
    bool init = false;
    int small = 0, n = 0;
    for (n = 0; n <= N; ++n) {
        long double shell = 0;
        for (int q = 0; 2 * q <= n; ++q) {
            int p = n - q;
            int sg = pe.sg[p] * pe2.sg[q] * pb.sg[p] * pb2.sg[q] * pc.sg[p] * pc2.sg[q];
            if (pc.sg[p] == 0 || pc2.sg[q] == 0) throw PochhammerZero("lower parameter hits a pole");
            if (sg == 0) continue;
            long double lt = pe.lg[p] + pe2.lg[q] + pb.lg[p] + pb2.lg[q] - pc.lg[p] - pc2.lg[q];
            lt -= std::lgamma((long double)(p - q + 1)) + std::lgamma((long double)(q + 1)) +
                  std::lgamma(p + 1 + ik) - std::lgamma(p - q + 1 + ik);
            lt += q * lz12 + logP[p - q];
            if (!init) {
                lref = lt;
                init = true;
            }
            shell += sg * std::exp(lt - lref);
        }
        total += shell;
        if (std::fabs(total) > 1e300L) {
            // rescale
            long double l = std::log(std::fabs(total));
            lref += l;
            total /= std::exp(l);
        }
        small = (n > 2 * b && std::fabs(shell) < 1e-19L * std::fabs(total)) ? small + 1 : 0;
        if (small >= 5) break;
    }
    if (n > N) throw NotConverged("2F1 series in the A-type tail did not converge");
    if (used) *used = std::max(*used, n);
    if (!(total > 0)) throw NotConverged("2F1 series lost positivity");
    return lref + std::log(total);
}

} // namespace

namespace {

// nodes on [lo, hi] in panels of width <= pw; when lo == 0 and sing != 0 the first panel is
// Gauss-Jacobi with weight x^sing and the weights are divided by node^sing, so that a
// plain weighted sum of an integrand behaving like x^sing stays accurate.
QuadratureRule axis_rule(double lo, double hi, double pw, int n, double sing) {
    QuadratureRule r;
    int panels = std::max(1, int(std::ceil((hi - lo) / pw)));
    double w = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = lo + p * w, b = a + w;
        QuadratureRule q = (p == 0 && lo == 0 && sing != 0) ? gauss_jacobi(n, a, b, 0.0, sing) : gauss_legendre(n, a, b);
        for (std::size_t i = 0; i < q.nodes.size(); ++i) {
            double wt = q.weights[i];
            if (p == 0 && lo == 0 && sing != 0) wt /= std::pow(q.nodes[i], sing);
            r.nodes.push_back(q.nodes[i]);
            r.weights.push_back(wt);
        }
    }
    return r;
}

} // namespace

namespace {

// Two-variable Jack series  sum_tau coef(tau) P_tau(X) P_tau(Y) / P_tau(1,1)  with X fixed, via
// P_(p,q)(z) = (z1 z2)^q P_(p-q)(z) and the one-row P_(j) = u_j / w_j, where u_j are the
// coefficients of (1 - z1 s)^-k (1 - z2 s)^-k and w_j = (k)_j / j!.
class Kernel2 {
public:
    Kernel2(double alpha, const std::vector<double>& lower, const Vec& X, int dmax) : k_(1.0L / alpha), dmax_(dmax) {
        auto rowX = one_row(X[0], X[1]);
        const long double x12 = (long double)X[0] * X[1], k = k_;
        C_.resize(dmax + 1);
        for (int n = 0; n <= dmax; ++n) {
            C_[n].resize(n / 2 + 1);
            long double xq = 1;
            for (int q = 0; 2 * q <= n; ++q, xq *= x12) {
                int p = n - q, j = p - q;
                // alpha^n / hook_upper for the two-row partition (p, q)
                long double c = std::exp(-(std::lgamma((long double)(j + 1)) + std::lgamma((long double)(q + 1)) +
                                           std::lgamma(p + 1 + k) - std::lgamma(j + 1 + k)));
                for (double b : lower) {
                    long double v = poch(b, p) * poch(b - k, q);
                    if (v == 0) throw PochhammerZero("lower parameter hits a pole");
                    c /= v;
                }
                c *= poch(k, j) / poch(2 * k, j);   // 1 / P_tau(1,1)
                C_[n][q] = c * xq * rowX[j];
            }
        }
    }

    long double operator()(const Vec& Y) const {
        auto row = one_row(Y[0], Y[1]);
        const long double y12 = (long double)Y[0] * Y[1];
        long double total = 0;
        int small = 0;
        for (int n = 0; n <= dmax_; ++n) {
            long double shell = 0, yq = 1;
            for (int q = 0; 2 * q <= n; ++q, yq *= y12) shell += C_[n][q] * yq * row[n - 2 * q];
            total += shell;
            small = (n > 8 && std::fabs(shell) <= 1e-18L * std::fabs(total)) ? small + 1 : 0;
            if (small >= 3) return total;
        }
        throw NotConverged("two-variable series did not converge within the degree budget");
    }

private:
    static long double poch(long double a, int n) {
        long double r = 1;
        for (int i = 0; i < n; ++i) r *= a + i;
        return r;
    }
    std::vector<long double> one_row(long double z1, long double z2) const {
        const long double k = k_;
        std::vector<long double> P(dmax_ + 1);
        long double prev = 1, cur = k * (z1 + z2), w = k;
        P[0] = 1;
        P[1] = z1 + z2;
        for (int j = 1; j < dmax_; ++j) {
            long double nxt = ((z1 + z2) * (j + k) * cur - z1 * z2 * (j - 1 + 2 * k) * prev) / (j + 1);
            prev = cur;
            cur = nxt;
            w *= (k + j) / (j + 1);
            P[j + 1] = cur / w;
        }
        return P;
    }

    long double k_;
    int dmax_;
    std::vector<std::vector<long double>> C_;
};

} // namespace

double tail_quadrature(const RootSystem& rs, const Multiplicity& kappa, const Multiplicity& s, const Vec& x,
                       double t) {
    const int m = rs.rank();
    require(t > 0, "t must be positive");
    require(int(x.size()) == m, "dimension mismatch");
    const bool isB = rs.family() == Family::B;
    require((isB && m <= 2) || (rs.family() == Family::A && m == 2),
            "tail quadrature implemented for B_1, B_2 and A_1 (ambient 2)");
    if (!(rs.chamber_distance(x) > 0)) throw DomainError("x must lie in the open chamber");
    auto kp = kappa.on_positive(rs), sp = s.on_positive(rs);
    const double st = std::sqrt(t);
    double nx = 0;
    for (double v : x) nx += v * v;
    // the y-independent part of log[ p_t(x,y) prod (<a,x>/<a,y>)^{2s} ]
    double lconst = std::log(double(rs.weyl_order())) - log_mehta(rs, kappa) -
                    (kappa.gamma(rs) + 0.5 * m) * std::log(t) - nx / (2 * t);
    for (std::size_t a = 0; a < kp.size(); ++a) lconst += 2 * sp[a] * std::log(dot(rs.positive()[a], x));

    double k1 = 0, c = 0;
    if (isB) {
        k1 = m > 1 ? kappa.of(rs, diff(m, 0, 1)) : 1.0;
        c = kappa.of(rs, unit(m, 0)) + (m - 1) * k1 + 0.5;
    } else {
        k1 = kappa.values()[0];
    }
    require(k1 > 0, "tail quadrature needs a positive multiplicity on the long roots");
    auto scaled = [&](const Vec& v) {
        Vec z(m);
        for (int i = 0; i < m; ++i) z[i] = isB ? 0.5 * v[i] * v[i] / t : v[i] / st;
        return z;
    };
    const Vec X = scaled(x);
    std::unique_ptr<Kernel2> K2;
    if (m == 2) K2 = std::make_unique<Kernel2>(1 / k1, isB ? std::vector<double>{c} : std::vector<double>{}, X, 800);

    auto integrand = [&](const Vec& y) {
        double ly = lconst, ny = 0;
        for (double v : y) ny += v * v;
        ly -= ny / (2 * t);
        for (std::size_t a = 0; a < kp.size(); ++a) ly += 2 * (kp[a] - sp[a]) * std::log(dot(rs.positive()[a], y));
        const Vec Y = scaled(y);
        long double F = m == 2 ? (*K2)(Y) : (long double)hyperg_uni({}, {c}, X[0] * Y[0], 1e-17, 100000);
        return double(std::exp((long double)ly) * F);
    };
    const double R = 9 * st, pw = 2 * st;
    const int n = 10;
    double total = 0;
    if (m == 1) {
        double e0 = 2 * (kp[0] - sp[0]);
        auto q = axis_rule(std::max(0.0, x[0] - R), x[0] + R, pw, n, e0);
        for (std::size_t i = 0; i < q.nodes.size(); ++i) total += q.weights[i] * integrand({q.nodes[i]});
        return total;
    }
    // y2 = g2, y1 = g1 + g2
    double e_gap = 0, e_low = 0;
    for (std::size_t a = 0; a < kp.size(); ++a) {
        const Root& al = rs.positive()[a];
        if (al == diff(2, 0, 1)) e_gap = 2 * (kp[a] - sp[a]);
        if (isB && al == unit(2, 1)) e_low = 2 * (kp[a] - sp[a]);
    }
    double lo2 = isB ? std::max(0.0, x[1] - R) : x[1] - R;
    auto q2 = axis_rule(lo2, x[1] + R, pw, n, isB ? e_low : 0.0);
    auto q1 = axis_rule(std::max(0.0, x[0] - x[1] - 2 * R), x[0] - x[1] + 2 * R, pw, n, e_gap);
    Vec y(2);
    for (std::size_t j = 0; j < q2.nodes.size(); ++j) {
        double acc = 0;
        for (std::size_t i = 0; i < q1.nodes.size(); ++i) {
            y[1] = q2.nodes[j];
            y[0] = q1.nodes[i] + y[1];
            double dx0 = y[0] - x[0], dx1 = y[1] - x[1];
            if (dx0 * dx0 + dx1 * dx1 > R * R) continue;   // Gaussian factor below e^-40
            acc += q1.weights[i] * integrand(y);
        }
        total += q2.weights[j] * acc;
    }
    return total;
}

constexpr double kShortTime = 36.0;

TailValue tail_distribution(const TailSpec& s) {
    require(s.t > 0, "t must be positive");
    TailValue out;
    const int m = s.m;
    require(int(s.x.size()) == m, "x has the wrong dimension");
    {
        // Short times: the start is many standard deviations from every wall, and the
        // chance of having reached one is below the Gaussian tail e^{-d^2/2t} (~1e-16);
        // the series behind both routes would need degrees in the thousands here.
        double d = INFINITY;
        for (int i = 0; i < m; ++i) {
            if (s.family == Family::B) d = std::min(d, s.x[i]);
            if (i + 1 < m) d = std::min(d, (s.x[i] - s.x[i + 1]) / std::sqrt(2.0));
        }
        if (d > 0 && d * d / (2 * s.t) > kShortTime) {
            out.value = 1.0;
            out.closed_form = NAN;
            out.method = "short_time";
            return out;
        }
    }
    if (s.tag == TailCase::AType) {
        require(s.family == Family::A, "A-type tail needs family A");
        require(m == 2, "A-type tail is implemented for ambient dimension 2");
        double k = s.k1;
        require(k >= 0.5, "A-type tail needs k >= 1/2");
        require(s.x[0] > s.x[1], "x must lie in the chamber");
        const double st = std::sqrt(s.t);
        double u1 = s.x[0] / st, u2 = s.x[1] / st;
        double lc = log_mehta_A(2, 0.5) - log_mehta_A(2, k);
        double lpref = lc + (2 * k - 1) * std::log(u1 - u2) - 0.5 * (u1 * u1 + u2 * u2);
        const double e = 1.5;
        const double bs[3] = {50, 100, 200};
        try {
            for (int i = 0; i < 3; ++i) {
                double b = bs[i];
                double c = b / 2 + k * 0.5 + 1.25;
                double sb = std::sqrt(b);
                if (std::max(std::abs(u1), std::abs(u2)) > 0.95 * sb)
                    throw NotConverged("x / sqrt(t) too large for the finite-b evaluation");
                long double z1 = (1 - u1 / sb) / 2, z2 = (1 - u2 / sb) / 2;
                int N = int(60 * b);
                long double lg = log_2f1_two(e, b, c, k, z1, z2, N, &out.degree) -
                                 log_2f1_two(e, b, c, k, 0.5L, 0.5L, N, &out.degree);
                out.at_b[i] = double(std::exp((long double)lpref + lg));
            }
            out.closed_form = 2 * out.at_b[2] - out.at_b[1];
            out.spread = std::abs(out.at_b[2] - out.at_b[1]);
        } catch (const Error&) {
            out.closed_form = NAN;
            out.at_b = {NAN, NAN, NAN};
            out.spread = NAN;
        }
        auto rs = RootSystem::build(Family::A, 2);
        out.value = tail_quadrature(rs, Multiplicity::A(rs, k), Multiplicity::A(rs, k - 0.5), s.x, s.t);
        out.method = "quadrature";
    } else {
        require(s.family == Family::B, "B-type tail cases need family B");
        double K0, K1, S0 = 0, S1 = 0, a;
        switch (s.tag) {
        case TailCase::BothGeHalf:
            require(s.k0 >= 0.5 && s.k1 >= 0.5, "case needs k0, k1 >= 1/2");
            K0 = s.k0;
            K1 = s.k1;
            S0 = s.k0 - 0.5;
            S1 = s.k1 - 0.5;
            a = (m + 1) / 2.0;
            break;
        case TailCase::K0LtHalf:
            require(s.k0 < 0.5 && s.k1 >= 0.5, "case needs k0 < 1/2 <= k1");
            K0 = 1 - s.k0;
            K1 = s.k1;
            S0 = 0.5 - s.k0;
            a = 1 + (m - 1) * s.k1;
            break;
        case TailCase::K1LtHalf:
            require(m >= 2, "k1 case needs m >= 2");
            require(s.k1 < 0.5 && s.k0 >= 0.5, "case needs k1 < 1/2 <= k0");
            K0 = s.k0;
            K1 = 1 - s.k1;
            S1 = 0.5 - s.k1;
            a = s.k0 + m / 2.0;
            break;
        default: throw Unsupported("unknown tail case");
        }
        Vec X(m);
        for (int i = 0; i < m; ++i) {
            require(s.x[i] > 0 && (i == 0 || s.x[i - 1] > s.x[i]), "x must lie in the open chamber");
            X[i] = s.x[i] * s.x[i] / (2 * s.t);
        }
        double lC = (m * S0 + m * (m - 1) * S1) * kLog2 + log_mehta_B(m, K0 - S0, K1 - S1) - log_mehta_B(m, K0, K1);
        double lp = lC;
        for (int i = 0; i < m; ++i) {
            lp += S0 * std::log(X[i]) - X[i];
            for (int j = i + 1; j < m; ++j) lp += 2 * S1 * std::log(X[i] - X[j]);
        }
        SeriesSpec sp;
        sp.alpha = m > 1 ? 1 / K1 : 1.0;
        sp.upper = {a};
        sp.lower = {K0 + (m - 1) * K1 + 0.5};
        sp.max_degree = 400;
        sp.eps = 1e-15;
        try {
            SeriesValue F = hyperg_multi(sp, X);
            out.degree = F.degree;
            out.closed_form = std::exp(lp) * F.value;
            if (!std::isfinite(out.closed_form)) out.closed_form = NAN;
        } catch (const NotConverged&) {
            out.closed_form = NAN;
        }
        // The 1F1 form is exact when the Vandermonde weight left after the h-transform
        // carries exponent 2 kappa_1, i.e. s1 = 0 (or in rank one).
        bool exact = m == 1 || S1 == 0;
        if (exact && std::isfinite(out.closed_form)) {
            out.value = out.closed_form;
            out.method = "closed_form";
        } else {
            auto rs = RootSystem::build(Family::B, m);
            out.value = tail_quadrature(rs, Multiplicity::B(rs, K0, K1), Multiplicity::B(rs, S0, S1), s.x, s.t);
            out.method = "quadrature";
        }
    }
    if (!(out.value > -1e-6 && out.value < 1 + 1e-6))
        throw RangeViolation("tail value " + std::to_string(out.value) + " outside [0,1]");
    out.value = std::clamp(out.value, 0.0, 1.0);
    return out;
}

// ---------------------------------------------------------------------------

double laguerre_semigroup_density(int m, double beta, double delta, double t, const Vec& x, const Vec& y,
                                  const SeriesOptions& opt) {
    require(t > 0 && beta > 0 && delta > 0, "bad Laguerre parameters");
    require(int(x.size()) == m && int(y.size()) == m, "dimension mismatch");
    double k0 = (beta * (delta - m + 1) - 1) / 2, k1 = beta / 2;
    require(k0 > 0, "Laguerre density needs k0 = (beta(delta-m+1)-1)/2 > 0");
    for (int i = 0; i < m; ++i) {
        if (x[i] < 0 || (i > 0 && x[i - 1] < x[i])) throw DomainError("x must be ordered and nonnegative");
        if (y[i] < 0 || (i > 0 && y[i - 1] < y[i])) throw DomainError("y must be ordered and nonnegative");
    }
    double ly = 0, sx = 0, sy = 0;
    for (int i = 0; i < m; ++i) {
        if (y[i] == 0) return 0;
        ly += (k0 - 0.5) * std::log(y[i]);
        sx += x[i];
        sy += y[i];
        for (int j = i + 1; j < m; ++j) {
            if (y[i] == y[j]) return 0;
            ly += 2 * k1 * std::log(y[i] - y[j]);
        }
    }
    double gamma = m * k0 + m * (m - 1) * k1;
    SeriesSpec sp;
    sp.alpha = 2 / beta;
    sp.lower = {beta * delta / 2};
    sp.max_degree = opt.max_degree;
    sp.eps = opt.eps;
    sp.fixed_degree = opt.fixed_degree;
    Vec X(m), Y(m);
    for (int i = 0; i < m; ++i) {
        X[i] = x[i] / (2 * t);
        Y[i] = y[i] / (2 * t);
    }
    double F = hyperg_multi(sp, X, Y).value;
    double lW = m * kLog2 + std::lgamma(m + 1.0);
    double lg = lW - m * kLog2 - log_mehta_B(m, k0, k1) - (gamma + 0.5 * m) * std::log(t) - (sx + sy) / (2 * t) +
                std::log(F) + ly;
    return std::exp(lg);
}

// ---------------------------------------------------------------------------
// beta-Jacobi

double jacobi_semigroup_density(const JacobiBasis& basis, double t, const Vec& theta, const Vec& lambda,
                                const JacobiDensityOptions& opt) {
    require(t > 0, "t must be positive");
    const JacobiParams& jp = basis.params();
    const auto& parts = basis.partitions();
    double worst = 0;
    for (const auto& tau : parts)
        if (weight(tau) == basis.max_degree()) worst = std::max(worst, std::exp(-jacobi_eigenvalue(tau, jp) * t));
    if (basis.max_degree() > 0 && worst > opt.eps)
        throw NotConverged("Jacobi expansion truncated too early for this t");
    auto a = basis.values(theta), b = basis.values(lambda);
    double s = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) s += std::exp(-jacobi_eigenvalue(parts[i], jp) * t) * a[i] * b[i];
    return s * jacobi_stationary_density(jp, lambda);
}

double jacobi_semigroup_density(const JacobiParams& jp, double t, const Vec& theta, const Vec& lambda,
                                const JacobiDensityOptions& opt) {
    require(t > 0, "t must be positive");
    int deg = 0;
    for (;; ++deg) {
        if (deg > opt.max_degree) throw NotConverged("Jacobi expansion needs more than max_degree shells");
        double worst = 0;
        for (const auto& tau : partitions_of(deg + 1, jp.m))
            worst = std::max(worst, std::exp(-jacobi_eigenvalue(tau, jp) * t));
        if (worst < opt.eps) break;
    }
    auto kind = jp.beta == 2 ? JacobiBasisKind::Determinantal : JacobiBasisKind::GramSchmidt;
    JacobiBasis basis(jp, kind, deg);
    JacobiDensityOptions o = opt;
    o.eps = 1.0;  // degree already chosen so that shell deg+1 is negligible
    return jacobi_semigroup_density(basis, t, theta, lambda, o);
}

double jacobi_density_km(const JacobiParams& jp, double t, const Vec& theta, const Vec& lambda,
                         const JacobiDensityOptions& opt) {
    require(jp.beta == 2, "Karlin-McGregor form needs beta = 2");
    require(t > 0, "t must be positive");
    const int m = jp.m;
    require(int(theta.size()) == m && int(lambda.size()) == m, "dimension mismatch");
    const double r = jp.r(), s = jp.s();
    double shift = 0;
    for (int i = 1; i <= m; ++i) shift += double(m - i) * (m - i + r + s + 1);
    shift *= 2 * t;
    int N = 0;
    while (-2.0 * N * (N + r + s + 1) * t + shift > std::log(opt.eps) || N < m) {
        if (++N > 5000) throw NotConverged("Karlin-McGregor series needs too many terms");
    }
    const double lB = std::lgamma(r + 1) + std::lgamma(s + 1) - std::lgamma(r + s + 2);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
    for (int n = 0; n <= N; ++n) {
        double en = std::exp(-2.0 * n * (n + r + s + 1) * t + shift / m);
        std::vector<double> pt(m), pl(m);
        for (int i = 0; i < m; ++i) {
            pt[i] = jacobi_orthonormal(n, r, s, theta[i]);
            pl[i] = jacobi_orthonormal(n, r, s, lambda[i]);
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) M(i, j) += en * pt[i] * pl[j];
    }
    double V = 1, Vt = 1;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            V *= lambda[i] - lambda[j];
            Vt *= theta[i] - theta[j];
        }
    if (Vt == 0) throw DomainError("coincident theta coordinates");
    double w = 1;
    for (int j = 0; j < m; ++j) {
        if (!(lambda[j] > 0 && lambda[j] < 1)) return 0;
        w *= std::exp(r * std::log(lambda[j]) + s * std::log1p(-lambda[j]) - lB);
    }
    return V / Vt * M.determinant() * w;
}

// ---------------------------------------------------------------------------

ChamberGaussTransform::ChamberGaussTransform(const RootSystem& rs, const Multiplicity& k, int degree,
                                             int nodes_per_panel, int panels)
    : family_(rs.family()), m_(rs.rank()), degree_(degree) {
    const int m = m_;
    SeriesSpec sp;
    int gaps = 0;
    if (family_ == Family::A) {
        require(m == 2 || m == 3, "A-type transform for ambient dimension 2 or 3");
        double kk = k.values()[0];
        require(kk > 0, "k must be positive");
        sp.alpha = 1 / kk;
        gaps = m - 1;
    } else if (family_ == Family::B) {
        require(m == 1 || m == 2, "B-type transform for m = 1, 2");
        double k0 = k.of(rs, unit(m, 0)), k1 = mid_k(rs, k);
        require(m == 1 || k1 > 0, "k1 must be positive");
        sp.alpha = m > 1 ? 1 / k1 : 1.0;
        sp.lower = {k0 + (m - 1) * k1 + 0.5};
        gaps = m;
    } else {
        throw Unsupported("chamber transform implemented for A and B");
    }
    alpha_ = sp.alpha;
    auto coef = two_arg_coefficients(sp, m, degree);
    auto table = JackTable::get(sp.alpha, m);

    QuadratureRule q1 = gauss_legendre_composite(nodes_per_panel, panels, 0.0, 8.0);
    const std::size_t nq = q1.nodes.size();
    std::size_t total = 1;
    for (int g = 0; g < gaps; ++g) total *= nq;

    integrals_.assign(degree + 1, {});
    for (int n = 0; n <= degree; ++n) integrals_[n].assign(coef[n].size(), 0.0);

    std::vector<std::size_t> idx(gaps);
    Vec y(m), Y(m);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t f = flat;
        double w = 1;
        std::vector<double> g(gaps);
        for (int d = 0; d < gaps; ++d) {
            idx[d] = f % nq;
            f /= nq;
            g[d] = q1.nodes[idx[d]];
            w *= q1.weights[idx[d]];
        }
        if (family_ == Family::A) {
            // y_i - y_{i+1} = g_i, sum y = 0
            y[m - 1] = 0;
            for (int i = m - 2; i >= 0; --i) y[i] = y[i + 1] + g[i];
            double mean = 0;
            for (double v : y) mean += v;
            mean /= m;
            for (double& v : y) v -= mean;
            Y = y;
        } else {
            y[m - 1] = g[m - 1];
            for (int i = m - 2; i >= 0; --i) y[i] = y[i + 1] + g[i];
            for (int i = 0; i < m; ++i) Y[i] = 0.5 * y[i] * y[i];
        }
        double r2 = 0, h = 1;
        for (double v : y) r2 += v * v;
        for (const Root& a : rs.positive()) h *= dot(a, y);
        double base = w * std::exp(-0.5 * r2) * h;
        if (base == 0) continue;
        for (int n = 0; n <= degree; ++n) {
            auto pv = jackP_shell_values(*table, n, Y);
            for (std::size_t t = 0; t < pv.size(); ++t) integrals_[n][t] += base * double(coef[n][t] * pv[t]);
        }
    }
}

double ChamberGaussTransform::operator()(const Vec& x) const {
    require(int(x.size()) == m_, "dimension mismatch");
    auto table = JackTable::get(alpha_, m_);
    Vec X(m_);
    double factor = 1;
    if (family_ == Family::A) {
        X = x;
        double s = 0;
        for (double v : x) s += v;
        factor = std::sqrt(2 * kPi / m_) * std::exp(s * s / (2 * m_));
    } else {
        for (int i = 0; i < m_; ++i) X[i] = 0.5 * x[i] * x[i];
    }
    long double acc = 0;
    for (int n = 0; n <= degree_; ++n) {
        auto pv = jackP_shell_values(*table, n, X);
        for (std::size_t t = 0; t < pv.size(); ++t) acc += (long double)integrals_[n][t] * pv[t];
    }
    return factor * double(acc);
}

} // namespace dunkl
