#include "dunkl/operators.hpp"
#include "dunkl/errors.hpp"

#include <cmath>

namespace dunkl {

namespace {

Derivatives plain(const ScalarField& f, const Vec& x, double h) {
    const std::size_t m = x.size();
    Derivatives d;
    d.value = f(x);
    d.grad.assign(m, 0);
    d.diag2.assign(m, 0);
    Vec y = x;
    for (std::size_t i = 0; i < m; ++i) {
        y[i] = x[i] + h;
        double fp = f(y);
        y[i] = x[i] - h;
        double fm = f(y);
        y[i] = x[i];
        d.grad[i] = (fp - fm) / (2 * h);
        d.diag2[i] = (fp - 2 * d.value + fm) / (h * h);
    }
    return d;
}

void check_unit_box(const Vec& z, double margin) {
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!(z[i] > margin && z[i] < 1 - margin)) throw DomainError("point too close to the boundary of (0,1)^m");
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (std::fabs(z[i] - z[j]) < margin) throw DomainError("coordinates too close for the singular drift");
    }
}

} // namespace

Derivatives fd_derivatives(const ScalarField& f, const Vec& x, double h, bool richardson) {
    if (!(h > 0)) throw InvalidArgument("finite-difference step must be positive");
    Derivatives a = plain(f, x, h);
    if (!richardson) return a;
    Derivatives b = plain(f, x, h / 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
        b.grad[i] = (4 * b.grad[i] - a.grad[i]) / 3;
        b.diag2[i] = (4 * b.diag2[i] - a.diag2[i]) / 3;
    }
    return b;
}

double apply_operator(const OperatorSpec& op, const Vec& x, const Derivatives& d) {
    const std::size_t m = x.size();
    switch (op.kind) {
    case OperatorKind::JK:
    case OperatorKind::DUNKL_LAPLACIAN_WINV: {
        if (!op.rs) throw InvalidArgument("operator needs a root system");
        double s = 0;
        for (std::size_t i = 0; i < m; ++i) s += d.diag2[i];
        const auto& pos = op.rs->positive();
        auto kp = op.k.on_positive(*op.rs);
        for (std::size_t r = 0; r < pos.size(); ++r)
            if (kp[r] != 0) s += 2 * kp[r] * dot(pos[r], d.grad) / dot(pos[r], x);
        if (op.kind == OperatorKind::JK) s -= dot(x, d.grad);
        return s;
    }
    case OperatorKind::GAUSS_GF: {
        const double k1 = op.k1, mm = double(m);
        double s = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double zi = x[i], w = zi * (1 - zi);
            double first = op.c - k1 * (mm - 1) - (op.e + op.b + 1 - k1 * (mm - 1)) * zi;
            for (std::size_t j = 0; j < m; ++j)
                if (j != i) first += 2 * k1 * w / (zi - x[j]);
            s += w * d.diag2[i] + first * d.grad[i];
        }
        return s;
    }
    case OperatorKind::BETA_JACOBI_GEN: {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double li = x[i];
            double br = op.p - (op.p + op.q) * li;
            for (std::size_t j = 0; j < m; ++j)
                if (j != i) br += (li * (1 - x[j]) + x[j] * (1 - li)) / (li - x[j]);
            s += 2 * li * (1 - li) * d.diag2[i] + op.beta * br * d.grad[i];
        }
        return s;
    }
    }
    return 0;
}

double apply_operator(const OperatorSpec& op, const ScalarField& f, const Vec& x) {
    const double margin = 3 * op.h;
    switch (op.kind) {
    case OperatorKind::JK:
    case OperatorKind::DUNKL_LAPLACIAN_WINV:
        if (!op.rs) throw InvalidArgument("operator needs a root system");
        if (int(x.size()) != op.rs->rank()) throw InvalidArgument("dimension mismatch");
        if (op.rs->chamber_distance(x) < margin) throw DomainError("point within 3h of a chamber wall");
        break;
    case OperatorKind::GAUSS_GF:
    case OperatorKind::BETA_JACOBI_GEN: check_unit_box(x, margin); break;
    }
    return apply_operator(op, x, fd_derivatives(f, x, op.h, op.richardson));
}

} // namespace dunkl
