#pragma once
#include "dunkl/root_system.hpp"

#include <functional>

namespace dunkl {

using ScalarField = std::function<double(const Vec&)>;

enum class OperatorKind {
    JK,                    // -J_k = Delta_k - E_1 on W-invariant functions
    DUNKL_LAPLACIAN_WINV,  // Delta_k = Delta + 2 sum_{R+} k <alpha, grad>/<alpha, x>
    GAUSS_GF,              // Jack-Gauss operator whose symmetric eigenfunction is 2F1(e,b,c; z)
    BETA_JACOBI_GEN        // generator of the beta-Jacobi eigenvalue process in lambda-coordinates
};

struct OperatorSpec {
    OperatorKind kind = OperatorKind::JK;
    const RootSystem* rs = nullptr;
    Multiplicity k;
    // GAUSS_GF: m variables, Jack-side multiplicity k1, parameters e, b, c
    int m = 0;
    double k1 = 0, e = 0, b = 0, c = 0;
    // BETA_JACOBI_GEN
    double beta = 0, p = 0, q = 0;
    double h = 1e-4;
    bool richardson = true;
};

struct Derivatives {
    double value = 0;
    Vec grad, diag2;   // first and pure second partials
};

// Central differences; with richardson the (h, h/2) pair is combined to O(h^4).
Derivatives fd_derivatives(const ScalarField& f, const Vec& x, double h, bool richardson = true);

double apply_operator(const OperatorSpec& op, const ScalarField& f, const Vec& x);

// The same operators acting on known derivatives (no differencing); used by tests
// that have exact gradients and by apply_operator itself.
double apply_operator(const OperatorSpec& op, const Vec& x, const Derivatives& d);

} // namespace dunkl
