#include "dunkl/jack.hpp"
#include "dunkl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace dunkl {

namespace {

Partition sorted_desc(std::vector<int> a) {
    std::sort(a.begin(), a.end(), std::greater<int>());
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool is_sorted_desc(const std::vector<int>& a) {
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] > a[i - 1]) return false;
    return true;
}

LBOperator build_lb(int n, int m) {
    LBOperator op;
    op.n = n;
    op.m = m;
    op.basis = partitions_of(n, m);
    const std::size_t N = op.basis.size();
    std::map<Partition, std::size_t> idx;
    for (std::size_t i = 0; i < N; ++i) idx[op.basis[i]] = i;
    op.a.assign(N, 0);
    op.B.assign(N, std::vector<long long>(N, 0));
    for (std::size_t L = 0; L < N; ++L) {
        const Partition& lam = op.basis[L];
        for (int v : lam) op.a[L] += (long long)v * (v - 1);
        // walk every distinct composition of lam; only coefficients of sorted
        // monomials are needed to read off the symmetric result
        std::vector<int> a(lam.begin(), lam.end());
        a.resize(m, 0);
        std::sort(a.begin(), a.end());
        do {
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) {
                    int p = a[i], q = a[j];
                    auto add = [&](int ei, int ej, long long c) {
                        std::vector<int> b = a;
                        b[i] = ei;
                        b[j] = ej;
                        if (!is_sorted_desc(b)) return;
                        op.B[idx.at(sorted_desc(b))][L] += c;
                    };
                    if (p == q) {
                        add(p, q, p);
                    } else if (p > q) {
                        // x^a and its (i j)-transpose handled together
                        for (int l = 0; l <= p - q; ++l) add(q + l, p - l, p);
                        for (int l = 0; l <= p - q - 2; ++l) add(q + 1 + l, p - 1 - l, -q);
                    }
                }
        } while (std::next_permutation(a.begin(), a.end()));
    }
    return op;
}

} // namespace

const LBOperator& laplace_beltrami(int n, int m) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<LBOperator>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, m}];
    if (!slot) slot = std::make_unique<LBOperator>(build_lb(n, m));
    return *slot;
}

double monomial_eval(const Partition& mu, const std::vector<double>& x) {
    const int m = int(x.size());
    if (int(mu.size()) > m) return 0.0;
    std::vector<int> a(mu.begin(), mu.end());
    a.resize(m, 0);
    std::sort(a.begin(), a.end());
    long double s = 0;
    do {
        long double t = 1;
        for (int i = 0; i < m; ++i)
            if (a[i]) t *= std::pow((long double)x[i], a[i]);
        s += t;
    } while (std::next_permutation(a.begin(), a.end()));
    return double(s);
}

double SymmetricPoly::operator()(const std::vector<double>& x) const {
    if (int(x.size()) != nvars) throw InvalidArgument("dimension mismatch");
    long double s = 0;
    for (const auto& [mu, c] : coef) s += (long double)c * monomial_eval(mu, x);
    return double(s);
}

SymmetricPoly jack(const Partition& tau, double alpha, int m) {
    if (!is_partition(tau)) throw InvalidArgument("not a partition");
    if (int(tau.size()) > m) throw InvalidArgument("partition longer than the number of variables");
    if (!(alpha > 0)) throw InvalidArgument("Jack parameter must be positive");
    int n = weight(tau);
    auto sh = jack_shell<double>(n, alpha, m);
    auto it = std::find(sh.basis.begin(), sh.basis.end(), tau);
    std::size_t t = std::size_t(it - sh.basis.begin());
    SymmetricPoly p;
    p.nvars = m;
    for (std::size_t j = 0; j < sh.basis.size(); ++j)
        if (sh.J[t][j] != 0) p.coef[sh.basis[j]] = sh.J[t][j];
    return p;
}

double jack_eval(const Partition& tau, double alpha, const std::vector<double>& x) {
    if (int(tau.size()) > int(x.size())) throw InvalidArgument("partition longer than the number of variables");
    auto table = JackTable::get(alpha, int(x.size()));
    int n = weight(tau);
    const auto& sh = table->shell(n);
    auto vals = jackP_shell_values(*table, n, x);
    for (std::size_t t = 0; t < sh.basis.size(); ++t)
        if (sh.basis[t] == tau) return double(vals[t] * sh.hook_lower[t]);
    throw Error("partition missing from shell");
}

// ---------------------------------------------------------------------------

struct JackTable::Impl {
    std::mutex mu;
    std::map<std::pair<double, int>, std::shared_ptr<JackTable>> tables;
};

JackTable::Impl& JackTable::registry() {
    static Impl impl;
    return impl;
}

std::shared_ptr<JackTable> JackTable::get(double alpha, int m) {
    if (!(alpha > 0) || !std::isfinite(alpha)) throw InvalidArgument("Jack parameter must be positive and finite");
    if (m < 1) throw InvalidArgument("need at least one variable");
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto& slot = r.tables[{alpha, m}];
    if (!slot) slot = std::make_shared<JackTable>(alpha, m);
    return slot;
}

const JackTable::Shell& JackTable::shell(int n) {
    static std::mutex build_mu;
    std::lock_guard<std::mutex> lock(build_mu);
    if (int(shells_.size()) <= n) shells_.resize(n + 1);
    auto& slot = shells_[n];
    if (!slot) {
        auto s = std::make_unique<Shell>();
        s->basis = partitions_of(n, m_);
        const std::size_t N = s->basis.size();
        if (m_ > 2) {
            auto js = jack_shell<double>(n, alpha_, m_);
            s->P = js.J;
            for (std::size_t t = 0; t < N; ++t) {
                double lead = js.J[t][t];
                for (auto& v : s->P[t]) v /= lead;
            }
        }
        for (const auto& tau : s->basis) {
            double hl = hook_lower(tau, alpha_);
            s->hook_lower.push_back(hl);
            s->hook_upper.push_back(hook_upper(tau, alpha_));
            s->at_ones.push_back(jack_at_ones(tau, alpha_, m_) / hl);
        }
        slot = std::move(s);
    }
    return *slot;
}

std::vector<long double> jackP_shell_values(JackTable& table, int n, const std::vector<double>& x) {
    const int m = table.nvars();
    if (int(x.size()) != m) throw InvalidArgument("dimension mismatch");
    const auto& sh = table.shell(n);
    const std::size_t N = sh.basis.size();
    std::vector<long double> out(N, 0.0L);
    if (m == 1) {
        out[0] = std::pow((long double)x[0], n);
        return out;
    }
    if (m == 2) {
        const long double b = 1.0L / table.alpha();
        const long double x1 = x[0], x2 = x[1];
        // w_i = (b)_i / i!
        std::vector<long double> w(n + 1);
        w[0] = 1;
        for (int i = 1; i <= n; ++i) w[i] = w[i - 1] * (b + i - 1) / i;
        std::vector<long double> p1(n + 1), p2(n + 1);
        p1[0] = p2[0] = 1;
        for (int i = 1; i <= n; ++i) {
            p1[i] = p1[i - 1] * x1;
            p2[i] = p2[i - 1] * x2;
        }
        for (std::size_t t = 0; t < N; ++t) {
            int q = sh.basis[t].size() > 1 ? sh.basis[t][1] : 0;
            int j = n - 2 * q;
            long double s = 0;
            for (int i = 0; i <= j; ++i) s += w[i] * w[j - i] * p1[j - i] * p2[i];
            out[t] = s / w[j] * std::pow(x1 * x2, (long double)q);
        }
        return out;
    }
    std::vector<long double> mon(N);
    for (std::size_t j = 0; j < N; ++j) mon[j] = monomial_eval(sh.basis[j], x);
    for (std::size_t t = 0; t < N; ++t) {
        long double s = 0;
        for (std::size_t j = t; j < N; ++j)
            if (sh.P[t][j] != 0) s += (long double)sh.P[t][j] * mon[j];
        out[t] = s;
    }
    return out;
}

} // namespace dunkl
