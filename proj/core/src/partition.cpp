#include "dunkl/partition.hpp"

#include <functional>

namespace dunkl {

int weight(const Partition& p) {
    int s = 0;
    for (int v : p) s += v;
    return s;
}

bool is_partition(const Partition& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) return false;
        if (i && p[i] > p[i - 1]) return false;
    }
    return true;
}

std::vector<Partition> partitions_of(int n, int max_len) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rem, int maxpart) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        if (int(cur.size()) == max_len) return;
        for (int v = std::min(rem, maxpart); v >= 1; --v) {
            cur.push_back(v);
            rec(rem - v, v);
            cur.pop_back();
        }
    };
    if (n >= 0 && max_len >= 0) rec(n, n);
    return out;
}

bool dominated(const Partition& mu, const Partition& lambda) {
    int a = 0, b = 0;
    std::size_t L = std::max(mu.size(), lambda.size());
    for (std::size_t i = 0; i < L; ++i) {
        a += i < mu.size() ? mu[i] : 0;
        b += i < lambda.size() ? lambda[i] : 0;
        if (a > b) return false;
    }
    return true;
}

Partition conjugate(const Partition& p) {
    Partition c;
    if (p.empty()) return c;
    for (int j = 1; j <= p[0]; ++j) {
        int cnt = 0;
        for (int v : p)
            if (v >= j) ++cnt;
        c.push_back(cnt);
    }
    return c;
}

double gen_pochhammer(double c, const Partition& tau, double k) {
    double r = 1;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        double base = c - k * double(i);
        for (int j = 0; j < tau[i]; ++j) r *= base + j;
    }
    return r;
}

long double gen_pochhammer_l(long double c, const Partition& tau, long double k) {
    long double r = 1;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        long double base = c - k * (long double)i;
        for (int j = 0; j < tau[i]; ++j) r *= base + j;
    }
    return r;
}

double hook_lower(const Partition& p, double alpha) {
    Partition c = conjugate(p);
    double h = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int j = 0; j < p[i]; ++j) {
            int arm = p[i] - j - 1, leg = c[j] - int(i) - 1;
            h *= alpha * arm + leg + 1;
        }
    return h;
}

double hook_upper(const Partition& p, double alpha) {
    Partition c = conjugate(p);
    double h = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int j = 0; j < p[i]; ++j) {
            int arm = p[i] - j - 1, leg = c[j] - int(i) - 1;
            h *= alpha * (arm + 1) + leg;
        }
    return h;
}

double jack_at_ones(const Partition& p, double alpha, int m) {
    double v = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int j = 0; j < p[i]; ++j) v *= m - double(i) + alpha * j;
    return v;
}

} // namespace dunkl
