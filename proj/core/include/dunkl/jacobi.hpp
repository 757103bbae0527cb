#pragma once
#include "dunkl/partition.hpp"
#include "dunkl/root_system.hpp"

#include <memory>
#include <vector>

namespace dunkl {

// Classical Jacobi polynomial on [-1,1]:
//   P_n^{r,s}(x) = ((r+1)_n / n!) 2F1(-n, n+r+s+1; r+1; (1-x)/2)
double jacobi_poly(int n, double r, double s, double x);

// Orthonormal version on (0,1) w.r.t. the probability weight u^r (1-u)^s / B(r+1, s+1).
double jacobi_orthonormal(int n, double r, double s, double u);

// Parameters of the beta-Jacobi process in the eigenvalue picture.
struct JacobiParams {
    int m = 1;
    double beta = 2, p = 0, q = 0;
    double r() const { return beta * (p - (m - 1)) / 2 - 1; }
    double s() const { return beta * (q - (m - 1)) / 2 - 1; }
    // alcove multiplicities: 2k0 = beta(p-q), k1 = beta(q-(m-1)) - 1, 2k2 = beta
    double k0() const { return beta * (p - q) / 2; }
    double k1() const { return beta * (q - (m - 1)) - 1; }
    double k2() const { return beta / 2; }
};

// 2 r_tau: minus the eigenvalue of the generator on P_tau
double jacobi_eigenvalue(const Partition& tau, const JacobiParams& jp);

// log of the Selberg integral over [0,1]^m with weight u^{a-1}(1-u)^{b-1}|V|^{2g}
double log_selberg(int m, double a, double b, double g);

// Stationary density on the ordered simplex 1 > l_1 > ... > l_m > 0.
double jacobi_stationary_density(const JacobiParams& jp, const Vec& lambda);

enum class JacobiBasisKind { Determinantal, GramSchmidt };

// Orthonormal multivariate Jacobi polynomials P_tau (w.r.t. the ordered stationary density).
//   Determinantal: beta = 2 only, sqrt(Z) * sign * det[p_{tau_i+m-i}(l_j)] / V(l)
//   GramSchmidt:   Jack^{(2/beta)} orthogonalised with exact moments (Jack products
//                  re-expanded in Jacks, each integrated in closed form); m <= 3
class JacobiBasis {
public:
    JacobiBasis(const JacobiParams& jp, JacobiBasisKind kind, int max_degree);

    const std::vector<Partition>& partitions() const { return parts_; }
    int max_degree() const { return max_degree_; }
    JacobiBasisKind kind() const { return kind_; }
    const JacobiParams& params() const { return jp_; }

    // values of every P_tau at lambda, aligned with partitions()
    std::vector<double> values(const Vec& lambda) const;
    double value(const Partition& tau, const Vec& lambda) const;

private:
    JacobiParams jp_;
    JacobiBasisKind kind_;
    int max_degree_;
    std::vector<Partition> parts_;
    std::vector<std::vector<double>> Linv_;  // GS: P = Linv * J
    double log_det_norm_ = 0;                // determinantal: log sqrt(Z)
};

double multivariate_jacobi(const Partition& tau, const JacobiParams& jp, const Vec& lambda,
                           JacobiBasisKind kind = JacobiBasisKind::Determinantal);

} // namespace dunkl
