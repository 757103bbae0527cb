#pragma once
#include "dunkl/bessel.hpp"
#include "dunkl/jacobi.hpp"
#include "dunkl/root_system.hpp"
#include "dunkl/stats.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace dunkl {

// c_k = int_{R^m} exp(-|y|^2/2) prod_{R+} |<a,y>|^{2k(a)} dy  (Macdonald-Mehta), closed form.
double macdonald_mehta(const RootSystem& rs, const Multiplicity& k);
// Same integral by Gaussian importance sampling.
MeanSE macdonald_mehta_mc(const RootSystem& rs, const Multiplicity& k, std::size_t samples, std::uint64_t seed,
                          unsigned threads = 0);

struct NormConstants {
    double c_k = 0;
    double g0 = 0;          // int_C exp(-|y|^2/2) prod <a,y> dy = c_{1/2} / |W|
    double c_k_mc = 0, c_k_mc_se = 0;   // filled when samples > 0
};
NormConstants norm_constants(const RootSystem& rs, const Multiplicity& k, std::size_t mc_samples = 0,
                             std::uint64_t seed = 1);

// Transition density of the radial Dunkl process w.r.t. Lebesgue measure on the chamber.
double semigroup_density(const RootSystem& rs, const Multiplicity& k, double t, const Vec& x, const Vec& y,
                         const SeriesOptions& opt = {});

// Brownian motion killed at the chamber walls, conditioned by the harmonic product h,
// i.e. the k = 1 radial process (B: k0 = k1 = 1, D: k = 1), via a Karlin-McGregor determinant.
double grabiner_density(Family family, int m, double t, const Vec& x, const Vec& y);

// Survival P(T0 > t) of the first wall-hitting time.
enum class TailCase { BothGeHalf, K0LtHalf, K1LtHalf, AType };
std::string to_string(TailCase c);

struct TailSpec {
    Family family = Family::B;   // B (any case) or A (AType, ambient dimension 2)
    int m = 2;
    double k0 = 0, k1 = 0;       // A: k1 is the multiplicity
    TailCase tag = TailCase::BothGeHalf;
    Vec x;
    double t = 1;
};

// The case implied by the multiplicities: B with both k >= 1/2 is read as the index-flipped
// process 1 - k, which is the one that actually hits.
TailCase classify_tail(Family family, double k0, double k1);
// Multiplicity of the process whose hitting time the formula describes.
Multiplicity simulated_multiplicity(const RootSystem& rs, const TailSpec& spec);

struct TailValue {
    double value = 0;
    // "closed_form" when the hypergeometric expression is exact for the case; "short_time"
    // when the start is so far from the walls (d^2/2t > 36) that the tail is 1 to double
    // precision; otherwise "quadrature": the killed density integrated over the chamber.
    std::string method;
    // The hypergeometric expression (1F1 for B; for A the b -> infinity 2F1 extrapolant),
    // NaN when it cannot be evaluated. Only a diagnostic when method == "quadrature".
    double closed_form = 0;
    // AType: closed-form tail at b = 50, 100, 200; extrapolant 2 T200 - T100, spread |T200 - T100|
    std::array<double, 3> at_b{};
    double spread = 0;
    int degree = 0;
};
TailValue tail_distribution(const TailSpec& spec);

// P(T0 > t) as the integral over the chamber of p^kappa_t(x, y) prod_{R+} (<a,x>/<a,y>)^{2 s(a)}:
// the h-transform of the non-hitting kappa-process by prod <a,.>^{-2s}. B (m <= 2) and A (ambient 2).
double tail_quadrature(const RootSystem& rs, const Multiplicity& kappa, const Multiplicity& s, const Vec& x,
                       double t);

// Laguerre: density of the eigenvalue process in lambda coordinates.
double laguerre_semigroup_density(int m, double beta, double delta, double t, const Vec& x, const Vec& y,
                                  const SeriesOptions& opt = {});

// beta-Jacobi transition density on 1 > l_1 > ... > l_m > 0 by eigenfunction expansion.
struct JacobiDensityOptions {
    double eps = 1e-14;        // truncate when exp(-eigenvalue t) < eps
    int max_degree = 40;
};
double jacobi_semigroup_density(const JacobiBasis& basis, double t, const Vec& theta, const Vec& lambda,
                                const JacobiDensityOptions& opt = {});
double jacobi_semigroup_density(const JacobiParams& jp, double t, const Vec& theta, const Vec& lambda,
                                const JacobiDensityOptions& opt = {});
// beta = 2 only: Karlin-McGregor determinant of univariate Jacobi kernels
double jacobi_density_km(const JacobiParams& jp, double t, const Vec& theta, const Vec& lambda,
                         const JacobiDensityOptions& opt = {});

// g(x) = int_C exp(-|y|^2/2) F_k(x, y) prod_{R+} <a,y> dy, by tensor quadrature of the
// truncated two-argument series. A (ambient m = 2, 3) and B (m = 1, 2).
class ChamberGaussTransform {
public:
    ChamberGaussTransform(const RootSystem& rs, const Multiplicity& k, int degree = 26, int nodes_per_panel = 16,
                          int panels = 3);
    double operator()(const Vec& x) const;
    int degree() const { return degree_; }

private:
    Family family_;
    int m_, degree_;
    double alpha_;
    std::vector<std::vector<double>> integrals_;   // coefficient * int P_t(Y) over the chamber
};

} // namespace dunkl
