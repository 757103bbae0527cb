#pragma once
#include "dunkl/partition.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

namespace dunkl {

// Polynomial in the monomial symmetric basis m_lambda, m variables.
struct SymmetricPoly {
    int nvars = 0;
    std::map<Partition, double> coef;
    double operator()(const std::vector<double>& x) const;
};

double monomial_eval(const Partition& mu, const std::vector<double>& x);

// Laplace-Beltrami operator
//   D(alpha) = (alpha/2) sum x_i^2 d_i^2 + sum_{i!=j} x_i^2/(x_i-x_j) d_i
// on the monomial basis of degree-n symmetric polynomials in m variables, split as
//   D = alpha/2 * diag(a) + B    with integer a and B.
// B[mu][lambda] is the coefficient of m_mu in B m_lambda; basis is reverse-lex.
struct LBOperator {
    int n = 0, m = 0;
    std::vector<Partition> basis;
    std::vector<long long> a;
    std::vector<std::vector<long long>> B;
};
const LBOperator& laplace_beltrami(int n, int m);

// J-normalised Jack polynomials of one degree shell:
// J[t][j] = coefficient of m_{basis[j]} in J_{basis[t]}.
template <class T>
struct JackShell {
    std::vector<Partition> basis;
    std::vector<std::vector<T>> J;
};

template <class T>
T hook_lower_t(const Partition& p, const T& alpha) {
    Partition c = conjugate(p);
    T h = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int j = 0; j < p[i]; ++j) {
            int arm = p[i] - j - 1, leg = c[j] - int(i) - 1;
            h *= alpha * T(arm) + T(leg + 1);
        }
    return h;
}

// Eigenvector solve: D is triangular in dominance order, so each J_tau follows by
// back-substitution from its leading coefficient hook_lower(tau).
template <class T>
JackShell<T> jack_shell(int n, const T& alpha, int m) {
    const LBOperator& op = laplace_beltrami(n, m);
    const std::size_t N = op.basis.size();
    JackShell<T> out;
    out.basis = op.basis;
    out.J.assign(N, std::vector<T>(N, T(0)));
    std::vector<T> diag(N);
    for (std::size_t i = 0; i < N; ++i) diag[i] = alpha * T(op.a[i]) / T(2) + T(op.B[i][i]);
    for (std::size_t t = 0; t < N; ++t) {
        auto& u = out.J[t];
        u[t] = hook_lower_t(op.basis[t], alpha);
        for (std::size_t mu = t + 1; mu < N; ++mu) {
            if (!dominated(op.basis[mu], op.basis[t])) continue;
            T rhs = 0;
            for (std::size_t lam = t; lam < mu; ++lam)
                if (op.B[mu][lam] != 0 && u[lam] != T(0)) rhs += T(op.B[mu][lam]) * u[lam];
            T den = diag[mu] - diag[t];
            if (den == T(0)) throw std::runtime_error("degenerate Jack eigenvalue");
            u[mu] = rhs / (-den);
        }
    }
    return out;
}

SymmetricPoly jack(const Partition& tau, double alpha, int m);
double jack_eval(const Partition& tau, double alpha, const std::vector<double>& x);

// Cached double-precision tables in P-normalisation (leading coefficient 1) used by
// the hypergeometric series. Thread-safe; shells are built on first use.
class JackTable {
public:
    struct Shell {
        std::vector<Partition> basis;
        std::vector<std::vector<double>> P;  // P[t][j]
        std::vector<double> hook_lower, hook_upper, at_ones;  // P_tau(1_m)
    };
    static std::shared_ptr<JackTable> get(double alpha, int m);
    const Shell& shell(int n);
    double alpha() const { return alpha_; }
    int nvars() const { return m_; }

    JackTable(double alpha, int m) : alpha_(alpha), m_(m) {}

private:
    double alpha_;
    int m_;
    std::vector<std::unique_ptr<Shell>> shells_;
    struct Impl;
    static Impl& registry();
};

// All P_tau(x), tau in the degree-n shell (same order as shell(n).basis).
// Two variables use the closed form P_(p,q) = (x1 x2)^q P_(p-q).
std::vector<long double> jackP_shell_values(JackTable& table, int n, const std::vector<double>& x);

} // namespace dunkl
