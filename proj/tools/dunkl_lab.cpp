// dunkl-lab: simulation and verification front end.
//
// Exit codes: 0 ok, 1 an experiment assertion failed, 2 bad configuration,
// 3 numerical failure (series not converged, step collapse, value out of range).
#include "dunkl/bessel.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/hypergeometric.hpp"
#include "dunkl/jacobi.hpp"
#include "dunkl/laws.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/root_system.hpp"
#include "dunkl/sde.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace dunkl;
using json = nlohmann::json;

namespace {

constexpr int kExitAssert = 1, kExitConfig = 2, kExitNumeric = 3;

struct AssertionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// output

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Csv {
public:
    explicit Csv(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_.open(path, std::ios::binary);
        if (!file_) throw InvalidArgument("cannot open output file " + path);
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out() << (i ? "," : "") << cells[i];
        out() << '\n';
    }

private:
    std::ofstream file_;
};

struct Series {
    std::string name;
    std::vector<double> x, y;
};

// Bare polyline chart; enough to eyeball a survival curve or a density slice.
void write_svg(const std::string& path, const std::string& title, const std::string& xlabel,
               const std::vector<Series>& series) {
    if (path.empty()) return;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot open SVG file " + path);
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    if (!(x1 > x0)) x1 = x0 + 1;
    if (!(y1 > y0)) y1 = y0 + 1;
    const double W = 640, H = 400, L = 60, R = 20, T = 40, B = 50;
    auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">" << title
      << "</text>\n"
      << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << xlabel << "</text>\n";
    for (double v : {y0, y1})
        f << "<text x=\"" << L - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << num(v)
          << "</text>\n";
    for (double v : {x0, x1})
        f << "<text x=\"" << px(v) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
          << num(v) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        f << "<polyline fill=\"none\" stroke=\"" << colors[k % 4] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) f << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        f << "\"/>\n<text x=\"" << W - R - 4 << "\" y=\"" << T + 16 * (k + 1) << "\" text-anchor=\"end\" fill=\""
          << colors[k % 4] << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
    }
    f << "</svg>\n";
}

// ---------------------------------------------------------------------------
// options shared by the subcommands

struct Common {
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out, svg;
};

std::uint64_t env_seed() {
    if (const char* s = std::getenv("DUNKL_LAB_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end == s || *end != '\0') throw InvalidArgument("DUNKL_LAB_SEED must be an unsigned integer");
        return v;
    }
    return 1;
}

void add_common(CLI::App* sc, Common& c, bool stochastic) {
    sc->add_option("--out,-o", c.out, "CSV output file (default stdout)");
    if (stochastic) {
        sc->add_option("--seed", c.seed, "RNG seed (fallback: DUNKL_LAB_SEED, then 1)");
        sc->add_option("--threads", c.threads, "worker threads (default: available parallelism)");
    }
}

struct ProcessArgs {
    std::string process = "dunkl", family = "B";
    int m = 2;
    double k0 = 0.5, k1 = 0.5, k2 = 0.5, beta = 2, delta = 0, p = 0, q = 0;
    std::vector<double> x;
    double T = 1, dt = 1e-3;
};

void add_process(CLI::App* sc, ProcessArgs& a) {
    sc->add_option("--process", a.process, "dunkl | laguerre | jacobi")
        ->check(CLI::IsMember({"dunkl", "laguerre", "jacobi"}));
    sc->add_option("--family", a.family, "root system family: A B C D BC");
    sc->add_option("--m", a.m, "rank (A: ambient dimension)");
    sc->add_option("--k0", a.k0, "multiplicity on short roots e_i (B, BC)");
    sc->add_option("--k1", a.k1, "multiplicity on e_i +- e_j (A, B, D; BC: on 2e_i)");
    sc->add_option("--k2", a.k2, "BC: multiplicity on e_i +- e_j");
    sc->add_option("--beta", a.beta, "beta (Laguerre, Jacobi)");
    sc->add_option("--delta", a.delta, "delta (Laguerre)");
    sc->add_option("--p", a.p, "p (Jacobi)");
    sc->add_option("--q", a.q, "q (Jacobi)");
    sc->add_option("--x", a.x, "start point, comma separated")->delimiter(',');
    sc->add_option("--T", a.T, "horizon");
    sc->add_option("--dt", a.dt, "base time step");
}

Multiplicity multiplicity_for(const RootSystem& rs, const ProcessArgs& a) {
    switch (rs.family()) {
    case Family::A: return Multiplicity::A(rs, a.k1);
    case Family::B: return Multiplicity::B(rs, a.k0, a.k1);
    case Family::C: return Multiplicity::C(rs, a.k0, a.k1);
    case Family::D: return Multiplicity::D(rs, a.k1);
    case Family::BC: return Multiplicity::BC(rs, a.k0, a.k1, a.k2);
    }
    throw InvalidArgument("unknown family");
}

ProcessSpec build_process(const ProcessArgs& a, std::uint64_t seed) {
    if (a.x.empty()) throw InvalidArgument("--x (start point) is required");
    ProcessSpec s;
    if (a.process == "dunkl") {
        auto rs = std::make_shared<const RootSystem>(RootSystem::build(family_from_string(a.family), a.m));
        s = radial_dunkl(rs, multiplicity_for(*rs, a), a.x, a.T, a.dt, seed);
    } else if (a.process == "laguerre") {
        s = beta_laguerre(a.m, a.beta, a.delta, a.x, a.T, a.dt, seed);
    } else {
        s = beta_jacobi(a.m, a.beta, a.p, a.q, a.x, a.T, a.dt, seed);
    }
    validate(s);
    return s;
}

std::vector<double> default_grid(double T, int n) {
    std::vector<double> g;
    for (int i = 1; i <= n; ++i) g.push_back(T * i / n);
    return g;
}

// ---------------------------------------------------------------------------
// subcommands

int run_simulate(const Common& c, const ProcessArgs& a, std::uint32_t path) {
    auto spec = build_process(a, c.seed);
    auto tr = simulate(spec, path);
    Csv csv(c.out);
    std::vector<std::string> head{"t"};
    for (std::size_t i = 0; i < spec.start.size(); ++i) head.push_back("x" + std::to_string(i + 1));
    head.insert(head.end(), {"hit_wall", "hit_time"});
    csv.row(head);
    std::vector<Series> plot(spec.start.size());
    for (std::size_t i = 0; i < plot.size(); ++i) plot[i].name = "x" + std::to_string(i + 1);
    for (std::size_t r = 0; r < tr.times.size(); ++r) {
        std::vector<std::string> row{num(tr.times[r])};
        for (std::size_t i = 0; i < tr.states[r].size(); ++i) {
            row.push_back(num(tr.states[r][i]));
            plot[i].x.push_back(tr.times[r]);
            plot[i].y.push_back(tr.states[r][i]);
        }
        bool last = r + 1 == tr.times.size();
        if (last && tr.hit) {
            row.push_back(std::to_string(tr.hit->first));
            row.push_back(num(tr.hit->second));
        } else {
            row.push_back("-1");
            row.push_back("nan");
        }
        csv.row(row);
    }
    write_svg(c.svg, "trajectory", "t", plot);
    return 0;
}

struct TailArgs {
    std::vector<double> times;
    std::size_t paths = 100000;
    double z_max = 4;
};

int run_hitting_tail(const Common& c, ProcessArgs a, const TailArgs& ta) {
    TailSpec ts;
    ts.family = family_from_string(a.family);
    ts.m = a.m;
    ts.k0 = a.k0;
    ts.k1 = a.k1;
    ts.tag = classify_tail(ts.family, a.k0, a.k1);
    ts.x = a.x;
    if (ts.x.empty()) throw InvalidArgument("--x (start point) is required");
    auto times = ta.times.empty() ? default_grid(a.T, 5) : ta.times;
    if (!std::is_sorted(times.begin(), times.end()) || times.front() <= 0)
        throw InvalidArgument("--times must be positive and increasing");
    auto rs = std::make_shared<const RootSystem>(RootSystem::build(ts.family, ts.m));
    auto spec = radial_dunkl(rs, simulated_multiplicity(*rs, ts), ts.x, times.back(), a.dt, c.seed);
    validate(spec);
    auto curve = hitting_time_mc(spec, ta.paths, times, c.threads);
    if (curve.collapses * 1000 >= curve.paths)
        throw StepCollapse("step collapse on " + std::to_string(curve.collapses) + " paths (limit 0.1%)");

    Csv csv(c.out);
    csv.row({"t", "mc_tail", "mc_se", "analytic_tail", "z_score"});
    Series mc{"Monte Carlo", {}, {}}, an{"analytic (" + to_string(ts.tag) + ")", {}, {}};
    bool ok = true;
    for (std::size_t i = 0; i < times.size(); ++i) {
        ts.t = times[i];
        double v = tail_distribution(ts).value;
        double z = curve.se[i] > 0 ? (curve.survival[i] - v) / curve.se[i] : (curve.survival[i] == v ? 0.0 : INFINITY);
        ok = ok && std::abs(z) <= ta.z_max;
        csv.row({num(times[i]), num(curve.survival[i]), num(curve.se[i]), num(v), num(z)});
        mc.x.push_back(times[i]);
        mc.y.push_back(curve.survival[i]);
        an.x.push_back(times[i]);
        an.y.push_back(v);
    }
    std::fprintf(stderr, "# dt=%s hit_eps=%s hit_threshold=%s paths=%zu hits=%zu collapses=%zu\n", num(curve.dt).c_str(),
                 num(spec.hit_eps).c_str(), num(curve.hit_threshold).c_str(), curve.paths, curve.hits,
                 curve.collapses);
    write_svg(c.svg, "P(T0 > t)", "t", {mc, an});
    if (!ok) throw AssertionFailed("|z| exceeds " + num(ta.z_max));
    return 0;
}

struct SliceArgs {
    std::string kind = "grabiner";
    double t = 0.7, lo = 0.2, hi = 3.0, tol = 1e-6;
    int points = 25;
    std::vector<double> x, y;   // y: the fixed coordinates; y[0] is swept
};

int run_density_check(const Common& c, const ProcessArgs& a, const SliceArgs& sa) {
    if (sa.points < 2) throw InvalidArgument("--points must be at least 2");
    Csv csv(c.out);
    csv.row({"coord", "value_series", "value_determinantal", "rel_err"});
    Series s1{"series", {}, {}}, s2{"determinantal", {}, {}};
    bool ok = true;
    auto emit = [&](double u, double vs, double vd) {
        double e = std::abs(vs - vd) / std::max({std::abs(vs), std::abs(vd), 1e-300});
        ok = ok && e <= sa.tol;
        csv.row({num(u), num(vs), num(vd), num(e)});
        s1.x.push_back(u);
        s1.y.push_back(vs);
        s2.x.push_back(u);
        s2.y.push_back(vd);
    };
    if (sa.kind == "grabiner") {
        Family f = family_from_string(a.family);
        if (f != Family::B && f != Family::D) throw InvalidArgument("grabiner slice needs family B or D");
        auto rs = RootSystem::build(f, a.m);
        Multiplicity k = f == Family::B ? Multiplicity::B(rs, 1, 1) : Multiplicity::D(rs, 1);
        Vec x = sa.x.empty() ? Vec(a.x) : Vec(sa.x);
        if (int(x.size()) != a.m) throw InvalidArgument("--x must have m coordinates");
        Vec y = sa.y.empty() ? x : Vec(sa.y);
        if (int(y.size()) != a.m) throw InvalidArgument("--y must have m coordinates");
        SeriesOptions so;
        so.max_degree = 150;
        so.eps = 1e-16;
        for (int i = 0; i < sa.points; ++i) {
            y[0] = sa.lo + (sa.hi - sa.lo) * i / (sa.points - 1);
            if (!(rs.chamber_distance(y) > 0)) continue;
            emit(y[0], semigroup_density(rs, k, sa.t, x, y, so), grabiner_density(f, a.m, sa.t, x, y));
        }
    } else if (sa.kind == "jacobi") {
        JacobiParams jp{a.m, a.beta, a.p, a.q};
        if (jp.beta != 2) throw InvalidArgument("the determinantal Jacobi density needs --beta 2");
        Vec th = sa.x.empty() ? Vec(a.x) : Vec(sa.x);
        Vec la = sa.y.empty() ? th : Vec(sa.y);
        if (int(th.size()) != a.m || int(la.size()) != a.m) throw InvalidArgument("--x/--y must have m coordinates");
        for (int i = 0; i < sa.points; ++i) {
            la[0] = sa.lo + (sa.hi - sa.lo) * i / (sa.points - 1);
            if (!(la[0] < 1 && (a.m == 1 || la[0] > la[1]))) continue;
            emit(la[0], jacobi_semigroup_density(jp, sa.t, th, la), jacobi_density_km(jp, sa.t, th, la));
        }
    } else {
        throw InvalidArgument("--kind must be grabiner or jacobi");
    }
    write_svg(c.svg, "density slice", "y1", {s1, s2});
    if (!ok) throw AssertionFailed("relative error above " + num(sa.tol));
    return 0;
}

// density slice for any beta, next to the stationary density
int run_jacobi_density(const Common& c, const ProcessArgs& a, const SliceArgs& sa) {
    JacobiParams jp{a.m, a.beta, a.p, a.q};
    Vec th = sa.x.empty() ? Vec(a.x) : Vec(sa.x);
    Vec la = sa.y.empty() ? th : Vec(sa.y);
    if (int(th.size()) != a.m || int(la.size()) != a.m) throw InvalidArgument("--x/--y must have m coordinates");
    Csv csv(c.out);
    csv.row({"coord", "value_series", "value_stationary"});
    Series s1{"p_t", {}, {}}, s2{"stationary", {}, {}};
    for (int i = 0; i < sa.points; ++i) {
        la[0] = sa.lo + (sa.hi - sa.lo) * i / std::max(1, sa.points - 1);
        if (!(la[0] < 1 && (a.m == 1 || la[0] > la[1]))) continue;
        double v = jacobi_semigroup_density(jp, sa.t, th, la), w = jacobi_stationary_density(jp, la);
        csv.row({num(la[0]), num(v), num(w)});
        s1.x.push_back(la[0]);
        s1.y.push_back(v);
        s2.x.push_back(la[0]);
        s2.y.push_back(w);
    }
    write_svg(c.svg, "beta-Jacobi density", "lambda1", {s1, s2});
    return 0;
}

int run_laguerre_map(const Common& c, const ProcessArgs& a, std::size_t paths) {
    if (a.x.empty()) throw InvalidArgument("--x (start eigenvalues) is required");
    auto r = laguerre_consistency(a.m, a.beta, a.delta, a.x, a.T, a.dt, paths, c.seed, c.threads);
    Csv csv(c.out);
    csv.row({"component", "ks_statistic", "p_value"});
    for (std::size_t i = 0; i < r.ks.size(); ++i)
        csv.row({std::to_string(i + 1), num(r.ks[i].statistic), num(r.ks[i].p_value)});
    if (!(r.min_p > 1e-3)) throw AssertionFailed("KS p-value below 1e-3");
    return 0;
}

// ---------------------------------------------------------------------------
// verify: quick deterministic suites

struct Check {
    std::string name;
    double err, tol;
};

std::vector<Check> suite_roots() {
    std::vector<Check> out;
    for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::BC})
        for (int m = (f == Family::A || f == Family::D) ? 2 : 1; m <= 5; ++m) {
            auto rs = RootSystem::build(f, m);
            std::set<Root> R(rs.roots().begin(), rs.roots().end());
            double bad = 0;
            for (const Root& a : rs.roots()) {
                std::set<Root> img;
                for (const Root& b : rs.roots()) img.insert(rs.reflect(a, b));
                bad += img != R;
            }
            out.push_back({rs.name() + " closed under reflections", bad, 0});
        }
    return out;
}

std::vector<Check> suite_hypergeometric() {
    std::vector<Check> out;
    double w1 = 0, w2 = 0;
    for (int i = 0; i <= 100; ++i) {
        double z = 1e-3 * std::pow(1e4, i / 100.0), r = 2 * std::sqrt(z);
        w1 = std::max(w1, std::abs(hyperg_uni({}, {1.5}, z) / (std::sinh(r) / r) - 1));
        w2 = std::max(w2, std::abs(hyperg_uni({}, {0.5}, z) / std::cosh(r) - 1));
    }
    out.push_back({"0F1(3/2; z) = sinh(2 sqrt z)/(2 sqrt z)", w1, 1e-12});
    out.push_back({"0F1(1/2; z) = cosh(2 sqrt z)", w2, 1e-12});
    SeriesSpec s;
    s.alpha = 0.8;
    s.max_degree = 60;
    s.eps = 1e-15;
    out.push_back({"0F0(x) = exp(sum x)", std::abs(hyperg_multi(s, {0.3, -0.2, 0.1}).value / std::exp(0.2) - 1), 1e-12});
    return out;
}

std::vector<Check> suite_operators() {
    std::vector<Check> out;
    SeriesOptions so;
    so.max_degree = 60;
    so.eps = 1e-16;
    struct Case {
        Family f;
        int m;
        std::vector<double> k;
        Vec x, y;
    };
    for (const Case& c : {Case{Family::A, 3, {0.6}, {1.0, 0.2, -0.5}, {0.8, 0.1, -0.4}},
                          Case{Family::B, 2, {0.3, 0.8}, {1.3, 0.5}, {1.1, 0.4}},
                          Case{Family::D, 2, {0.7, 0.7}, {1.2, 0.3}, {1.0, -0.2}},
                          Case{Family::D, 3, {0.6}, {1.5, 0.9, 0.3}, {1.2, 0.7, -0.2}}}) {
        auto rs = RootSystem::build(c.f, c.m);
        Multiplicity k(rs, c.k);
        OperatorSpec op;
        op.kind = OperatorKind::DUNKL_LAPLACIAN_WINV;
        op.rs = &rs;
        op.k = k;
        op.h = 1e-3;
        auto F = [&](const Vec& y) { return generalized_bessel(rs, k, c.x, y, so); };
        double lhs = apply_operator(op, F, c.y), rhs = dot(c.x, c.x) * F(c.y);
        out.push_back({rs.name() + " Bessel: Delta_k F = |x|^2 F", std::abs(lhs - rhs) / std::abs(rhs), 1e-6});
    }
    for (double k : {0.5, 1.0}) {
        auto b2 = RootSystem::build(Family::B, 2);
        auto kk = Multiplicity::B(b2, k, k);
        ChamberGaussTransform g(b2, kk);
        OperatorSpec op;
        op.kind = OperatorKind::JK;
        op.rs = &b2;
        op.k = kk;
        op.h = 2e-3;
        Vec x{1.1, 0.5};
        double lhs = apply_operator(op, [&](const Vec& v) { return g(v); }, x);
        out.push_back({"B2 k=" + num(k) + " Gauss transform: -J g = 6 g", std::abs(lhs / g(x) / 6 - 1), 1e-4});
    }
    JacobiParams jp{2, 2.0, 3.0, 2.5};
    JacobiBasis basis(jp, JacobiBasisKind::Determinantal, 3);
    OperatorSpec op;
    op.kind = OperatorKind::BETA_JACOBI_GEN;
    op.beta = jp.beta;
    op.p = jp.p;
    op.q = jp.q;
    op.h = 1e-3;
    Vec lam{0.8, 0.3};
    double worst = 0;
    for (const Partition& tau : basis.partitions()) {
        auto f = [&](const Vec& l) { return basis.value(tau, l); };
        double v = f(lam);
        worst = std::max(worst, std::abs(apply_operator(op, f, lam) + jacobi_eigenvalue(tau, jp) * v) /
                                    std::max(1.0, std::abs(jacobi_eigenvalue(tau, jp) * v)));
    }
    out.push_back({"beta-Jacobi generator eigenfunctions (degree <= 3)", worst, 1e-6});
    return out;
}

int run_verify(const std::string& suite) {
    std::vector<std::pair<std::string, std::vector<Check> (*)()>> suites{
        {"roots", suite_roots}, {"hypergeometric", suite_hypergeometric}, {"operators", suite_operators}};
    bool any = false, ok = true;
    std::printf("%-6s %-52s %-12s %s\n", "result", "check", "error", "tolerance");
    for (auto& [name, fn] : suites) {
        if (suite != "all" && suite != name) continue;
        any = true;
        for (const Check& c : fn()) {
            bool pass = c.err <= c.tol;
            ok = ok && pass;
            std::printf("%-6s %-52s %-12.3e %.1e\n", pass ? "PASS" : "FAIL", c.name.c_str(), c.err, c.tol);
        }
    }
    if (!any) throw InvalidArgument("unknown suite '" + suite + "' (roots, hypergeometric, operators, all)");
    if (!ok) throw AssertionFailed("verification failed");
    return 0;
}

// ---------------------------------------------------------------------------
// JSON config: every key becomes "--key value" unless the flag was given explicitly

std::vector<std::string> merge_config(const std::vector<std::string>& argv) {
    std::string path;
    for (std::size_t i = 0; i < argv.size(); ++i) {
        if (argv[i] == "--config" && i + 1 < argv.size()) path = argv[i + 1];
        if (argv[i].rfind("--config=", 0) == 0) path = argv[i].substr(9);
    }
    if (path.empty()) return argv;
    std::ifstream f(path);
    if (!f) throw InvalidArgument("cannot read config file " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config file: ") + e.what());
    }
    if (!j.is_object()) throw InvalidArgument("config file must hold a JSON object");
    std::set<std::string> given;
    for (const auto& a : argv)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
    std::vector<std::string> out = argv;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (given.count(it.key()) || it.key() == "config") continue;
        std::string v;
        const json& val = it.value();
        if (val.is_array()) {
            for (std::size_t i = 0; i < val.size(); ++i) {
                if (!val[i].is_number()) throw InvalidArgument("config key '" + it.key() + "': arrays must be numeric");
                v += (i ? "," : "") + num(val[i].get<double>());
            }
        } else if (val.is_string()) {
            v = val.get<std::string>();
        } else if (val.is_number_integer()) {
            v = std::to_string(val.get<long long>());
        } else if (val.is_number()) {
            v = num(val.get<double>());
        } else if (val.is_boolean()) {
            v = val.get<bool>() ? "true" : "false";
        } else {
            throw InvalidArgument("config key '" + it.key() + "' has an unsupported type");
        }
        out.push_back("--" + it.key());
        out.push_back(v);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dunkl-lab: radial Dunkl, beta-Laguerre and beta-Jacobi processes"};
    app.require_subcommand(1);
    std::string config;
    app.add_option("--config", config, "JSON file of option values; command-line flags take precedence");
    app.set_help_all_flag("--help-all");

    Common common;
    ProcessArgs proc;
    TailArgs tail;
    SliceArgs slice;
    std::uint32_t path = 0;
    std::size_t lag_paths = 10000;
    std::string suite = "all";

    auto* sim = app.add_subcommand("simulate", "one trajectory as CSV: t,x1..xm,hit_wall,hit_time");
    add_common(sim, common, true);
    add_process(sim, proc);
    sim->add_option("--path", path, "path index within the seed");
    sim->add_option("--svg", common.svg, "also write an SVG plot");

    auto* ht = app.add_subcommand("hitting-tail", "Monte Carlo survival P(T0 > t) against the analytic tail");
    add_common(ht, common, true);
    add_process(ht, proc);
    ht->add_option("--paths", tail.paths, "number of paths");
    ht->add_option("--times", tail.times, "time grid, comma separated (default: 5 points up to T)")->delimiter(',');
    ht->add_option("--z-max", tail.z_max, "assertion bound on |z|");
    ht->add_option("--svg", common.svg, "also write an SVG plot");

    auto* dc = app.add_subcommand("density-check", "series density against its determinantal form along a slice");
    add_common(dc, common, false);
    add_process(dc, proc);
    dc->add_option("--kind", slice.kind, "grabiner (B/D, k = 1) | jacobi (beta = 2)");
    dc->add_option("--t", slice.t, "time");
    dc->add_option("--y", slice.y, "fixed end point; its first coordinate is swept")->delimiter(',');
    dc->add_option("--lo", slice.lo, "slice start");
    dc->add_option("--hi", slice.hi, "slice end");
    dc->add_option("--points", slice.points, "slice points");
    dc->add_option("--tol", slice.tol, "assertion bound on the relative error");
    dc->add_option("--svg", common.svg, "also write an SVG plot");

    auto* jd = app.add_subcommand("jacobi-density", "beta-Jacobi transition density slice (any beta)");
    add_common(jd, common, false);
    add_process(jd, proc);
    jd->add_option("--t", slice.t, "time");
    jd->add_option("--y", slice.y, "fixed end point; its first coordinate is swept")->delimiter(',');
    jd->add_option("--lo", slice.lo, "slice start");
    jd->add_option("--hi", slice.hi, "slice end");
    jd->add_option("--points", slice.points, "slice points");
    jd->add_option("--svg", common.svg, "also write an SVG plot");

    auto* lm = app.add_subcommand("laguerre-map", "beta-Laguerre eigenvalues vs the B_m radial process (KS per component)");
    add_common(lm, common, true);
    add_process(lm, proc);
    lm->add_option("--paths", lag_paths, "paths per process");

    auto* vf = app.add_subcommand("verify", "deterministic check suites, printed as a pass/fail table");
    vf->add_option("--suite", suite, "roots | hypergeometric | operators | all");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        common.seed = env_seed();
        args = merge_config(args);
        std::reverse(args.begin(), args.end());   // CLI11 consumes a reversed vector
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    } catch (const Error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    }

    try {
        if (*sim) return run_simulate(common, proc, path);
        if (*ht) return run_hitting_tail(common, proc, tail);
        if (*dc) return run_density_check(common, proc, slice);
        if (*jd) return run_jacobi_density(common, proc, slice);
        if (*lm) return run_laguerre_map(common, proc, lag_paths);
        if (*vf) return run_verify(suite);
    } catch (const AssertionFailed& e) {
        std::fprintf(stderr, "assertion failed: %s\n", e.what());
        return kExitAssert;
    } catch (const NotConverged& e) {
        std::fprintf(stderr, "not converged: %s\n", e.what());
        return kExitNumeric;
    } catch (const StepCollapse& e) {
        std::fprintf(stderr, "step collapse: %s\n", e.what());
        return kExitNumeric;
    } catch (const RangeViolation& e) {
        std::fprintf(stderr, "range violation: %s\n", e.what());
        return kExitNumeric;
    } catch (const Error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    }
    return 0;
}
