#pragma once
// Independent Jack oracle: Gram-Schmidt of the monomial basis against the power-sum
// scalar product <p_l, p_m> = delta z_l alpha^len(l), in exact rationals.
#include "dunkl/partition.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using dunkl::Partition;

// all partitions of n (no length cap), increasing in reverse-lex order: (1^n) first, (n) last
inline std::vector<Partition> all_partitions_increasing(int n) {
    auto v = dunkl::partitions_of(n, n);
    std::sort(v.begin(), v.end());
    return v;
}

inline Q z_lambda(const Partition& p) {
    std::map<int, int> mult;
    for (int x : p) ++mult[x];
    Q z = 1;
    for (auto [part, c] : mult) {
        for (int i = 0; i < c; ++i) z *= part;
        for (int i = 2; i <= c; ++i) z *= i;
    }
    return z;
}

// coefficient of x^mu (mu as exponent vector) in prod_i p_{rho_i}
inline long long power_sum_in_monomials(const Partition& rho, const Partition& mu) {
    std::vector<int> left(mu.begin(), mu.end());
    std::function<long long(std::size_t)> go = [&](std::size_t i) -> long long {
        if (i == rho.size()) {
            for (int v : left)
                if (v != 0) return 0;
            return 1;
        }
        long long c = 0;
        for (auto& v : left)
            if (v >= rho[i]) {
                v -= rho[i];
                c += go(i + 1);
                v += rho[i];
            }
        return c;
    };
    return go(0);
}

inline std::vector<std::vector<Q>> invert(std::vector<std::vector<Q>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Q>> inv(n, std::vector<Q>(n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Q d = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Q f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// J-normalised Jack polynomials of degree n in the monomial basis of all partitions of n:
// result[lambda][mu] = coefficient of m_mu in J_lambda.
inline std::map<Partition, std::map<Partition, Q>> jack_gram_schmidt(int n, const Q& alpha) {
    auto basis = all_partitions_increasing(n);
    const std::size_t N = basis.size();
    // p_rho = sum_mu L[rho][mu] m_mu  =>  m = L^{-1} p
    std::vector<std::vector<Q>> L(N, std::vector<Q>(N));
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) L[r][c] = Q(power_sum_in_monomials(basis[r], basis[c]));
    auto Minv = invert(L);   // m_mu = sum_rho Minv[mu][rho] p_rho
    std::vector<Q> pnorm(N);
    for (std::size_t r = 0; r < N; ++r) {
        Q a = 1;
        for (std::size_t i = 0; i < basis[r].size(); ++i) a *= alpha;
        pnorm[r] = z_lambda(basis[r]) * a;
    }
    auto ip = [&](const std::vector<Q>& u, const std::vector<Q>& v) {   // vectors in the p basis
        Q s = 0;
        for (std::size_t r = 0; r < N; ++r) s += u[r] * v[r] * pnorm[r];
        return s;
    };
    std::vector<std::vector<Q>> Pp(N), Pm(N);   // P_lambda in p and in m coordinates
    for (std::size_t l = 0; l < N; ++l) {
        std::vector<Q> vp(Minv[l]), vm(N, Q(0));
        vm[l] = 1;
        for (std::size_t j = 0; j < l; ++j) {
            Q c = ip(Minv[l], Pp[j]) / ip(Pp[j], Pp[j]);
            for (std::size_t r = 0; r < N; ++r) {
                vp[r] -= c * Pp[j][r];
                vm[r] -= c * Pm[j][r];
            }
        }
        Pp[l] = vp;
        Pm[l] = vm;
    }
    std::map<Partition, std::map<Partition, Q>> out;
    for (std::size_t l = 0; l < N; ++l) {
        // J = c_lambda P,  c_lambda = prod over boxes (alpha a + l + 1)
        Partition conj = dunkl::conjugate(basis[l]);
        Q c = 1;
        for (std::size_t i = 0; i < basis[l].size(); ++i)
            for (int j = 0; j < basis[l][i]; ++j) c *= alpha * (basis[l][i] - j - 1) + (conj[j] - int(i) - 1) + 1;
        for (std::size_t r = 0; r < N; ++r)
            if (Pm[l][r] != 0) out[basis[l]][basis[r]] = c * Pm[l][r];
    }
    return out;
}

} // namespace oracle
