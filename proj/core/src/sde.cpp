#include "dunkl/sde.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/jacobi.hpp"
#include "dunkl/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

namespace dunkl {

namespace {

constexpr double kPi = std::numbers::pi;

struct Margin {
    double d;
    int wall;
    bool hittable;
    double thr;   // hit threshold of that wall
};

// A path within thr of a wall with multiplicity k < 1/2 still escapes to distance sqrt(dt)
// with probability (thr / sqrt(dt))^(1-2k); thr is chosen to make that eps.
double wall_threshold(double k, double dt, double eps) {
    if (!(k < 0.5)) return 0.0;
    return std::sqrt(dt) * std::pow(eps, 1.0 / (1.0 - 2.0 * k));
}

// Near a wall the normal distance d moves like a Bessel process of multiplicity k.
// Stepping log d (drift (k - 1/2)/d^2 + g/d, noise dW/d, g the regular part of the normal
// drift) keeps d^(1-2k) an exact martingale of the Gaussian step, so hitting probabilities
// do not pick up the O(h/d^2) bias plain Euler has there.
double log_step(double d, double k, double g, double h, double dwn) {
    return d * std::exp((k - 0.5) * h / (d * d) + g * h / d + dwn / d);
}

// Far from the walls plain Euler is accurate (and exactly additive in the noise, which
// keeps refined paths consistent with coarse ones); the log step is used within
// kLogZone * sqrt(dt) of a wall only.
constexpr double kLogZone = 10.0;

bool parallel_roots(const Root& a, const Root& b) {
    // b = c a for some real c
    double ab = dot(a, b), aa = dot(a, a), bb = dot(b, b);
    return std::abs(ab * ab - aa * bb) < 1e-12;
}

// One process: drift, diffusion and boundary geometry. Immutable once built.
struct Model {
    ProcessKind kind;
    DriftRoute route;
    int dim = 0;
    std::shared_ptr<const RootSystem> rs;
    Family fam = Family::A;
    // explicit coefficients: single = coefficient of 1/x_i, pair = of the e_i +- e_j terms
    double k_single = 0, k_pair = 0;
    // root-sum data
    std::vector<std::vector<double>> roots;
    std::vector<double> kroot;
    std::vector<double> wall_k;   // per wall (simple, then affine for Jacobi)
    std::vector<std::vector<double>> walls;  // unit normals, distance = off + <n, x>
    std::vector<double> wall_off;
    std::vector<double> wall_thr;
    double log_zone2 = 0;   // squared distance below which the normal coordinate is log-stepped
    double floor_d = 0;     // smallest resolvable wall distance; unattainable walls reflect there
    double k0 = 0, k1 = 0, k2 = 0, beta = 0, delta = 0;

    explicit Model(const ProcessSpec& s)
        : kind(s.kind), route(s.route), log_zone2(s.noise ? kLogZone * kLogZone * s.dt : 0.0) {
        switch (kind) {
        case ProcessKind::RadialDunkl: {
            rs = s.rs;
            fam = rs->family();
            dim = rs->rank();
            int m = dim;
            auto kp = s.k.on_positive(*rs);
            for (std::size_t i = 0; i < rs->positive().size(); ++i) {
                const Root& a = rs->positive()[i];
                roots.emplace_back(a.begin(), a.end());
                kroot.push_back(kp[i]);
            }
            for (const Root& w : rs->simple()) {
                double acc = 0;
                for (std::size_t i = 0; i < rs->positive().size(); ++i)
                    if (parallel_roots(w, rs->positive()[i])) acc += kp[i];
                wall_k.push_back(acc);
            }
            if (m >= 2 && fam != Family::A) k_pair = s.k.of(*rs, diff(m, 0, 1));
            switch (fam) {
            case Family::A: k_pair = m >= 2 ? s.k.of(*rs, diff(m, 0, 1)) : 0; break;
            case Family::B: k_single = s.k.of(*rs, unit(m, 0)); break;
            case Family::C: k_single = s.k.of(*rs, unit(m, 0, 2)); break;
            case Family::D: break;
            case Family::BC: k_single = s.k.of(*rs, unit(m, 0)) + s.k.of(*rs, unit(m, 0, 2)); break;
            }
            break;
        }
        case ProcessKind::BetaLaguerre: {
            dim = s.m;
            beta = s.beta;
            delta = s.delta;
            k0 = (beta * (delta - dim + 1) - 1) / 2;
            k1 = beta / 2;
            wall_k.assign(dim, k1);
            wall_k[dim - 1] = k0;
            break;
        }
        case ProcessKind::BetaJacobi: {
            dim = s.m;
            JacobiParams jp{s.m, s.beta, s.p, s.q};
            k0 = jp.k0();
            k1 = jp.k1();
            k2 = jp.k2();
            rs = std::make_shared<RootSystem>(RootSystem::build(Family::BC, dim));
            for (const Root& a : rs->positive()) {
                roots.emplace_back(a.begin(), a.end());
                int nz = 0, mx = 0;
                for (int c : a) {
                    nz += c != 0;
                    mx = std::max(mx, std::abs(c));
                }
                kroot.push_back(nz == 2 ? k2 : (mx == 2 ? k1 / 2 : k0));
            }
            wall_k.assign(dim - 1, k2);
            wall_k.push_back(k0 + k1 / 2);  // e_m
            wall_k.push_back(k1 / 2);       // affine
            break;
        }
        }
        if (rs) {
            for (const Root& a : rs->simple()) {
                double nn = norm(a);
                std::vector<double> w(dim);
                for (int i = 0; i < dim; ++i) w[i] = a[i] / nn;
                walls.push_back(w);
                wall_off.push_back(0.0);
            }
            if (kind == ProcessKind::BetaJacobi) {
                const Root& a = rs->highest();
                double nn = norm(a);
                std::vector<double> w(dim);
                for (int i = 0; i < dim; ++i) w[i] = -a[i] / nn;
                walls.push_back(w);
                wall_off.push_back(kPi / nn);
            }
        }
        double floor = 0;
        for (double v : s.start) floor = std::max(floor, std::abs(v));
        floor = 64 * std::numeric_limits<double>::epsilon() * (1 + floor);   // cancellation limit of <n, x>
        floor_d = floor;
        for (double k : wall_k) wall_thr.push_back(k < 0.5 ? std::max(wall_threshold(k, s.dt, s.hit_eps), floor) : 0.0);
    }

    void drift(const double* x, double* b) const {
        std::fill(b, b + dim, 0.0);
        if (kind == ProcessKind::BetaLaguerre) {
            if (route == DriftRoute::Explicit) {
                for (int i = 0; i < dim; ++i) {
                    double acc = delta;
                    for (int j = 0; j < dim; ++j)
                        if (j != i) acc += (x[i] + x[j]) / (x[i] - x[j]);
                    b[i] = beta * acc;
                }
            } else {
                // lambda = r^2: drift_lambda = 2 r drift_r + 1 with the B_m root sum in r
                double r[16];
                for (int i = 0; i < dim; ++i) r[i] = std::sqrt(x[i]);
                for (int i = 0; i < dim; ++i) {
                    double acc = k0 / r[i];
                    for (int j = 0; j < dim; ++j)
                        if (j != i) acc += k1 * (1 / (r[i] - r[j]) + 1 / (r[i] + r[j]));
                    b[i] = 2 * r[i] * acc + 1;
                }
            }
            return;
        }
        if (route == DriftRoute::RootSum) {
            for (std::size_t a = 0; a < roots.size(); ++a) {
                const auto& al = roots[a];
                double ip = 0;
                for (int i = 0; i < dim; ++i) ip += al[i] * x[i];
                double c = kind == ProcessKind::BetaJacobi ? kroot[a] / std::tan(ip) : kroot[a] / ip;
                for (int i = 0; i < dim; ++i)
                    if (al[i] != 0) b[i] += c * al[i];
            }
            return;
        }
        if (kind == ProcessKind::BetaJacobi) {
            for (int i = 0; i < dim; ++i) {
                double acc = k0 / std::tan(x[i]) + k1 / std::tan(2 * x[i]);
                for (int j = 0; j < dim; ++j)
                    if (j != i) acc += k2 * (1 / std::tan(x[i] + x[j]) + 1 / std::tan(x[i] - x[j]));
                b[i] = acc;
            }
            return;
        }
        for (int i = 0; i < dim; ++i) {
            double acc = k_single != 0 ? k_single / x[i] : 0.0;
            for (int j = 0; j < dim; ++j) {
                if (j == i) continue;
                acc += k_pair / (x[i] - x[j]);
                if (fam != Family::A) acc += k_pair / (x[i] + x[j]);
            }
            b[i] = acc;
        }
    }

    void step(const double* x, double h, const double* dw, double* out) const {
        double b[16];
        drift(x, b);
        if (kind == ProcessKind::BetaLaguerre) {
            for (int i = 0; i < dim; ++i) out[i] = x[i] + b[i] * h + 2 * std::sqrt(x[i]) * dw[i];
            return;
        }
        for (int i = 0; i < dim; ++i) out[i] = x[i] + b[i] * h + dw[i];
        auto [d, j] = geometry(x);
        if (j < 0 || !(d > 0) || d * d >= log_zone2) return;
        const auto& n = walls[j];
        double bn = 0, dwn = 0, de = wall_off[j];
        for (int i = 0; i < dim; ++i) {
            bn += n[i] * b[i];
            dwn += n[i] * dw[i];
            de += n[i] * out[i];
        }
        double dn = log_step(d, wall_k[j], bn - wall_k[j] / d, h, dwn);
        // k >= 1/2 (critical k = 1/2 especially) lets paths come arbitrarily close; below the
        // resolvable distance the wall acts as a reflecting floor
        if (wall_k[j] >= 0.5) dn = std::max(dn, floor_d);
        double shift = dn - de;
        for (int i = 0; i < dim; ++i) out[i] += shift * n[i];
    }

    // signed: <= 0 (or NaN) means outside
    std::pair<double, int> geometry(const double* x) const {
        if (kind == ProcessKind::BetaLaguerre) {
            double best = x[dim - 1] > 0 ? std::sqrt(x[dim - 1]) : x[dim - 1];
            int wall = dim - 1;
            for (int i = 0; i + 1 < dim; ++i) {
                double d = x[i] > x[i + 1] && x[i + 1] >= 0 ? (std::sqrt(x[i]) - std::sqrt(x[i + 1])) / std::sqrt(2.0)
                                                             : std::min(0.0, x[i] - x[i + 1]);
                if (d < best) {
                    best = d;
                    wall = i;
                }
            }
            return {best, wall};
        }
        double best = INFINITY;
        int wall = -1;
        for (std::size_t j = 0; j < walls.size(); ++j) {
            double d = wall_off[j];
            for (int i = 0; i < dim; ++i) d += walls[j][i] * x[i];
            if (!(d >= best)) {
                best = d;
                wall = int(j);
            }
        }
        return {best, wall};
    }

    Margin margin(const double* x) const {
        auto [d, w] = geometry(x);
        bool hit = w >= 0 && wall_k[w] < 0.5;
        return {d, w, hit, hit ? wall_thr[w] : 0.0};
    }
};

// <alpha0, X> together with its one-dimensional dominating process Z; state is (x, z).
struct Coupled {
    const Model& X;
    int dim;
    std::vector<double> a0;
    double a0norm = 1, coef = 0;   // Dunkl: Z drift coef / Z
    double zk0 = 0, zk1 = 0;       // Jacobi: Z drift zk0 cot Z + zk1 cot 2Z
    bool jacobi = false;
    double z_wall_k0 = 0, z_wall_k1 = 0;
    double z_thr0 = 0, z_thr1 = 0;

    // Z in its own distance units: zeta = Z / |alpha0| near 0, pi/2 - Z near the top (Jacobi)
    void step(const double* s, double h, const double* dw, double* out) const {
        X.step(s, h, dw, out);
        double z = s[dim];
        double b = jacobi ? zk0 / std::tan(z) + zk1 / std::tan(2 * z) : coef / z;
        double dz = 0;
        for (int i = 0; i < dim; ++i) dz += a0[i] * dw[i];
        double zeta = z / a0norm, top = jacobi ? kPi / 2 - z : INFINITY;
        double zn = std::min(zeta, top);
        if (zn * zn >= X.log_zone2) {
            out[dim] = z + b * h + dz;
        } else if (top < zeta) {
            double k = z_wall_k1;
            double tn = log_step(top, k, -b - k / top, h, -dz);
            out[dim] = kPi / 2 - (k >= 0.5 ? std::max(tn, X.floor_d) : tn);
        } else {
            double k = z_wall_k0;
            double zn2 = log_step(zeta, k, b / a0norm - k / zeta, h, dz / a0norm);
            out[dim] = a0norm * (k >= 0.5 ? std::max(zn2, X.floor_d) : zn2);
        }
    }

    Margin margin(const double* s) const {
        Margin mx = X.margin(s);
        double z = s[dim];
        double dz = z / a0norm;
        bool hz = z_wall_k0 < 0.5;
        double thr = z_thr0;
        if (jacobi) {
            double top = kPi / 2 - z;
            if (top < dz) {
                dz = top;
                hz = z_wall_k1 < 0.5;
                thr = z_thr1;
            }
        }
        if (!(dz > 0) || dz < mx.d) return {dz, -2, hz, hz ? thr : 0.0};
        return mx;
    }
};

// Brownian increments on the fine grid, dyadically refined from the coarse grid.
class Noise {
public:
    Noise(const ProcessSpec& s, int dim, std::uint32_t path)
        : ns_(s.seed), path_(path), tag_(s.stream * 4), dim_(dim), ref_(s.refinement), dt_(s.dt),
          mirror_(s.mirror_noise), on_(s.noise) {}

    void normals(double* z, std::uint32_t tag, std::uint64_t step, std::uint32_t sub) const {
        if (!on_) {
            std::fill(z, z + dim_, 0.0);
            return;
        }
        ns_.fill(z, dim_, path_, tag_ + tag, step, sub);
        if (mirror_) {
            std::reverse(z, z + dim_);
            for (int i = 0; i < dim_; ++i) z[i] = -z[i];
        }
    }

    void increment(std::uint64_t n, double* dw) {
        std::uint64_t c = n >> ref_;
        if (c != cached_) build(c);
        const double* src = &leaves_[(n & ((1u << ref_) - 1)) * dim_];
        std::copy(src, src + dim_, dw);
    }

    void bridge_normals(std::uint64_t n, std::uint32_t sub, double* z) const { normals(z, 2, n, sub); }

private:
    void build(std::uint64_t c) {
        cached_ = c;
        std::size_t nodes = std::size_t(1) << (ref_ + 1);
        tree_.assign(nodes * dim_, 0.0);
        double L = dt_ * double(1u << ref_);
        std::vector<double> z(dim_);
        normals(z.data(), 0, c, 0);
        for (int i = 0; i < dim_; ++i) tree_[dim_ + i] = std::sqrt(L) * z[i];
        for (int d = 0; d < ref_; ++d, L /= 2) {
            for (std::size_t v = std::size_t(1) << d; v < (std::size_t(1) << (d + 1)); ++v) {
                normals(z.data(), 1, c, std::uint32_t(v));
                for (int i = 0; i < dim_; ++i) {
                    double D = tree_[v * dim_ + i];
                    double left = D / 2 + std::sqrt(L) / 2 * z[i];
                    tree_[2 * v * dim_ + i] = left;
                    tree_[(2 * v + 1) * dim_ + i] = D - left;
                }
            }
        }
        leaves_.assign(tree_.begin() + (std::size_t(1) << ref_) * dim_, tree_.end());
    }

    NormalStream ns_;
    std::uint32_t path_, tag_;
    int dim_, ref_;
    double dt_;
    bool mirror_, on_;
    std::uint64_t cached_ = ~std::uint64_t(0);
    std::vector<double> tree_, leaves_;
};

std::uint64_t base_steps(double T, double dt, bool exact) {
    double r = T / dt;
    auto n = std::uint64_t(std::llround(r));
    if (exact) {
        if (std::abs(r - double(n)) > 1e-6 * std::max(1.0, r) || n == 0)
            throw InvalidArgument("horizon T must be a positive multiple of dt");
        return n;
    }
    return std::max<std::uint64_t>(1, std::uint64_t(std::ceil(r - 1e-9)));
}

template <class Sys>
PathOutcome run_generic(const Sys& sys, int state_dim, int noise_dim, const ProcessSpec& spec, Vec x,
                        std::uint32_t path, std::uint64_t n_steps,
                        const std::function<void(long, double, const Vec&)>& observe, long* substeps = nullptr) {
    PathOutcome out;
    Margin m0 = sys.margin(x.data());
    if (!(m0.d > 0)) throw DomainError("start point is not strictly inside the domain");
    out.min_margin = m0.d;
    if (observe) observe(0, 0.0, x);
    if (m0.hittable && m0.d < m0.thr) {
        out.hit = true;
        out.wall = m0.wall;
        out.hit_time = 0;
        out.final_state = x;
        return out;
    }

    Noise noise(spec, noise_dim, path);
    std::vector<double> hs, buf;   // stack of pending (h, dW) segments, top = next in time
    hs.reserve(64);
    buf.reserve(64 * noise_dim);
    std::vector<double> cur(noise_dim), z(noise_dim), xn(state_dim), rest(noise_dim), half(noise_dim);
    long total = 0;

    auto push = [&](double h, const double* w) {
        hs.push_back(h);
        buf.insert(buf.end(), w, w + noise_dim);
    };

    for (std::uint64_t n = 0; n < n_steps; ++n) {
        noise.increment(n, cur.data());
        push(spec.dt, cur.data());
        double t0 = double(n) * spec.dt, tl = 0;
        std::uint32_t sub = 0;
        long count = 0;
        while (!hs.empty()) {
            double H = hs.back();
            std::copy(buf.end() - noise_dim, buf.end(), cur.begin());
            hs.pop_back();
            buf.resize(buf.size() - noise_dim);

            Margin mg = sys.margin(x.data());
            double h = std::min(H, spec.substep_c * mg.d * mg.d);
            if (h < H * (1 - 1e-12)) {
                // Brownian bridge: increment over [0,h] given the increment over [0,H]
                noise.bridge_normals(n, sub++, z.data());
                double sd = std::sqrt(h * (H - h) / H);
                for (int i = 0; i < noise_dim; ++i) {
                    double first = h / H * cur[i] + sd * z[i];
                    rest[i] = cur[i] - first;
                    cur[i] = first;
                }
                push(H - h, rest.data());
            } else {
                h = H;
            }
            if (++count > spec.max_substeps) {
                out.collapsed = true;
                out.final_state = x;
                if (substeps) *substeps += total + count;
                return out;
            }
            sys.step(x.data(), h, cur.data(), xn.data());
            Margin mn = sys.margin(xn.data());
            if (!(mn.d > 0)) {
                // left the domain: split this piece in halves
                noise.bridge_normals(n, sub++, z.data());
                for (int i = 0; i < noise_dim; ++i) {
                    half[i] = cur[i] / 2 + std::sqrt(h) / 2 * z[i];
                    rest[i] = cur[i] - half[i];
                }
                push(h / 2, rest.data());
                push(h / 2, half.data());
                continue;
            }
            x.swap(xn);
            tl += h;
            out.min_margin = std::min(out.min_margin, mn.d);
            if (mn.hittable && mn.d < mn.thr) {
                out.hit = true;
                out.wall = mn.wall;
                out.hit_time = t0 + tl;
                out.final_state = x;
                if (observe) observe(long(n + 1), out.hit_time, x);
                if (substeps) *substeps += total + count;
                return out;
            }
        }
        total += count;
        if (observe) observe(long(n + 1), double(n + 1) * spec.dt, x);
    }
    out.final_state = x;
    if (substeps) *substeps += total;
    return out;
}

} // namespace

ProcessSpec radial_dunkl(std::shared_ptr<const RootSystem> rs, Multiplicity k, Vec start, double T, double dt,
                         std::uint64_t seed) {
    ProcessSpec s;
    s.kind = ProcessKind::RadialDunkl;
    s.rs = std::move(rs);
    s.k = std::move(k);
    s.m = s.rs->rank();
    s.start = std::move(start);
    s.T = T;
    s.dt = dt;
    s.seed = seed;
    return s;
}

ProcessSpec beta_laguerre(int m, double beta, double delta, Vec start, double T, double dt, std::uint64_t seed) {
    ProcessSpec s;
    s.kind = ProcessKind::BetaLaguerre;
    s.m = m;
    s.beta = beta;
    s.delta = delta;
    s.start = std::move(start);
    s.T = T;
    s.dt = dt;
    s.seed = seed;
    return s;
}

ProcessSpec beta_jacobi(int m, double beta, double p, double q, Vec start_phi, double T, double dt,
                        std::uint64_t seed) {
    ProcessSpec s;
    s.kind = ProcessKind::BetaJacobi;
    s.m = m;
    s.beta = beta;
    s.p = p;
    s.q = q;
    s.start = std::move(start_phi);
    s.T = T;
    s.dt = dt;
    s.seed = seed;
    return s;
}

void validate(const ProcessSpec& s) {
    require(s.dt > 0 && std::isfinite(s.dt), "dt must be positive");
    require(s.T > 0, "horizon must be positive");
    require(s.refinement >= 0 && s.refinement <= 20, "refinement out of range");
    require(s.stream < 64, "stream must be < 64");
    require(s.substep_c > 0 && s.hit_eps > 0 && s.max_substeps > 0, "bad substepping parameters");
    int dim = 0;
    switch (s.kind) {
    case ProcessKind::RadialDunkl:
        require(bool(s.rs), "radial Dunkl process needs a root system");
        require(s.k.values().size() == std::size_t(s.rs->num_orbits()), "multiplicity does not match root system");
        for (double v : s.k.values()) require(v >= 0, "multiplicities must be nonnegative");
        dim = s.rs->rank();
        break;
    case ProcessKind::BetaLaguerre:
        require(s.beta > 0 && s.delta > 0, "beta-Laguerre needs beta, delta > 0");
        dim = s.m;
        break;
    case ProcessKind::BetaJacobi:
        require(s.beta > 0, "beta-Jacobi needs beta > 0");
        dim = s.m;
        break;
    }
    require(dim >= 1 && dim <= 16, "dimension must be in [1, 16]");
    require(int(s.start.size()) == dim, "start point has the wrong dimension");
    Model M(s);
    if (!(M.margin(s.start.data()).d > 0)) throw DomainError("start point is not strictly inside the domain");
}

Vec drift(const ProcessSpec& spec, const Vec& x) {
    Model M(spec);
    require(int(x.size()) == M.dim, "dimension mismatch");
    if (!(M.margin(x.data()).d > 0)) throw DomainError("drift is undefined on or outside the boundary");
    Vec b(M.dim);
    M.drift(x.data(), b.data());
    return b;
}

std::pair<double, int> boundary_margin(const ProcessSpec& spec, const Vec& x) {
    Model M(spec);
    require(int(x.size()) == M.dim, "dimension mismatch");
    return M.geometry(x.data());
}

double wall_multiplicity(const ProcessSpec& spec, int wall) {
    Model M(spec);
    require(wall >= 0 && wall < int(M.wall_k.size()), "wall index out of range");
    return M.wall_k[wall];
}

Trajectory simulate(const ProcessSpec& spec, std::uint32_t path) {
    validate(spec);
    Model M(spec);
    Trajectory tr;
    auto obs = [&](long, double t, const Vec& x) {
        tr.times.push_back(t);
        tr.states.push_back(x);
    };
    PathOutcome o = run_generic(M, M.dim, M.dim, spec, spec.start, path, base_steps(spec.T, spec.dt, true), obs,
                                &tr.substeps);
    if (o.collapsed) throw StepCollapse("substep budget exhausted away from an attainable wall");
    if (o.hit) tr.hit = std::make_pair(o.wall, o.hit_time);
    return tr;
}

PathOutcome run_path(const ProcessSpec& spec, std::uint32_t path,
                     const std::function<void(long, double, const Vec&)>& observe) {
    validate(spec);
    Model M(spec);
    return run_generic(M, M.dim, M.dim, spec, spec.start, path, base_steps(spec.T, spec.dt, false), observe);
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = default_threads();
    threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lk(mu);
                if (!err) err = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

namespace {
std::vector<PathOutcome> run_many(const ProcessSpec& spec, std::size_t n_paths, double horizon, unsigned threads) {
    validate(spec);
    Model M(spec);
    auto steps = base_steps(horizon, spec.dt, false);
    std::vector<PathOutcome> res(n_paths);
    parallel_for(n_paths, threads, [&](std::size_t i) {
        res[i] = run_generic(M, M.dim, M.dim, spec, spec.start, std::uint32_t(i), steps, {});
    });
    return res;
}
} // namespace

SurvivalCurve hitting_time_mc(const ProcessSpec& spec, std::size_t n_paths, const std::vector<double>& times,
                              unsigned threads) {
    require(n_paths > 0 && !times.empty(), "need paths and a time grid");
    double horizon = *std::max_element(times.begin(), times.end());
    require(horizon > 0, "time grid must contain a positive time");
    auto res = run_many(spec, n_paths, horizon, threads);
    SurvivalCurve c;
    c.times = times;
    c.paths = n_paths;
    c.dt = spec.dt;
    Model M(spec);
    for (double v : M.wall_thr) c.hit_threshold = std::max(c.hit_threshold, v);
    std::vector<double> ht;
    for (const auto& r : res) {
        c.min_margin = std::min(c.min_margin, r.min_margin);
        if (r.collapsed) {
            ++c.collapses;
            continue;
        }
        if (r.hit) ++c.hits;
        ht.push_back(r.hit_time);
    }
    if (double(c.collapses) >= 1e-3 * double(n_paths))
        throw StepCollapse("step collapse on " + std::to_string(c.collapses) + " of " + std::to_string(n_paths) +
                           " paths");
    double ne = double(ht.size());
    for (double t : times) {
        double alive = 0;
        for (double h : ht) alive += h > t;
        double S = alive / ne;
        c.survival.push_back(S);
        c.se.push_back(std::sqrt(S * (1 - S) / ne));
    }
    return c;
}

MeanSE expectation_mc(const ProcessSpec& spec, std::size_t n_paths, const std::function<double(const Vec&)>& f,
                      unsigned threads) {
    base_steps(spec.T, spec.dt, true);
    auto res = run_many(spec, n_paths, spec.T, threads);
    std::vector<double> v;
    v.reserve(res.size());
    for (const auto& r : res) {
        if (r.collapsed) throw StepCollapse("step collapse in expectation estimate");
        v.push_back(f(r.final_state));
    }
    return mean_se(v);
}

CouplingReport coupling_check(const ProcessSpec& spec, const Root& alpha0, std::size_t n_paths, unsigned threads) {
    validate(spec);
    require(spec.kind != ProcessKind::BetaLaguerre, "coupling is defined for radial Dunkl and beta-Jacobi specs");
    Model M(spec);
    require(int(alpha0.size()) == M.dim, "alpha0 has the wrong dimension");
    Coupled C{M, M.dim, Vec(alpha0.begin(), alpha0.end())};
    C.a0norm = norm(alpha0);
    if (spec.kind == ProcessKind::BetaJacobi) {
        require(alpha0 == unit(M.dim, M.dim - 1), "beta-Jacobi coupling is implemented for alpha0 = e_m");
        C.jacobi = true;
        C.zk0 = M.k0;
        C.zk1 = M.k1;
        C.z_wall_k0 = M.k0 + M.k1 / 2;
        C.z_wall_k1 = M.k1 / 2;
    } else {
        const RootSystem& rs = *spec.rs;
        auto it = std::find(rs.simple().begin(), rs.simple().end(), alpha0);
        require(it != rs.simple().end(), "alpha0 must be a simple root");
        double ksum = M.wall_k[std::size_t(it - rs.simple().begin())];
        C.coef = double(dot(alpha0, alpha0)) * ksum;
        C.z_wall_k0 = ksum;
    }
    C.z_thr0 = wall_threshold(C.z_wall_k0, spec.dt, spec.hit_eps);
    C.z_thr1 = wall_threshold(C.z_wall_k1, spec.dt, spec.hit_eps);
    auto steps = base_steps(spec.T, spec.dt, true);
    Vec s0 = spec.start;
    s0.push_back(dot(alpha0, spec.start));

    std::vector<std::size_t> viol(n_paths), samp(n_paths);
    std::vector<double> excess(n_paths, 0.0);
    parallel_for(n_paths, threads, [&](std::size_t i) {
        auto obs = [&](long, double, const Vec& s) {
            double lhs = 0;
            for (int j = 0; j < M.dim; ++j) lhs += C.a0[j] * s[j];
            double z = s[M.dim];
            ++samp[i];
            if (lhs > z + 1e-12 * (1 + std::abs(z))) {
                ++viol[i];
                excess[i] = std::max(excess[i], lhs - z);
            }
        };
        PathOutcome o = run_generic(C, M.dim + 1, M.dim, spec, s0, std::uint32_t(i), steps, obs);
        if (o.collapsed) throw StepCollapse("step collapse in coupling run");
    });
    CouplingReport r;
    r.paths = n_paths;
    for (std::size_t i = 0; i < n_paths; ++i) {
        r.samples += samp[i];
        r.violations += viol[i];
        r.max_excess = std::max(r.max_excess, excess[i]);
    }
    r.fraction = r.samples ? double(r.violations) / double(r.samples) : 0.0;
    return r;
}

LaguerreReport laguerre_consistency(int m, double beta, double delta, const Vec& lambda0, double T, double dt,
                                    std::size_t n_paths, std::uint64_t seed, unsigned threads) {
    LaguerreReport rep;
    rep.k0 = (beta * (delta - m + 1) - 1) / 2;
    rep.k1 = beta / 2;
    require(rep.k0 > 0 && rep.k1 > 0, "Laguerre map needs k0, k1 > 0");
    ProcessSpec lag = beta_laguerre(m, beta, delta, lambda0, T, dt, seed);
    lag.stream = 1;
    Vec r0(m);
    for (int i = 0; i < m; ++i) r0[i] = std::sqrt(lambda0[i]);
    auto rs = std::make_shared<RootSystem>(RootSystem::build(Family::B, m));
    ProcessSpec dk = radial_dunkl(rs, Multiplicity::B(*rs, rep.k0, rep.k1), r0, T, dt, seed);
    dk.stream = 2;
    auto a = run_many(lag, n_paths, T, threads);
    auto b = run_many(dk, n_paths, T, threads);
    for (int c = 0; c < m; ++c) {
        std::vector<double> va, vb;
        for (const auto& o : a) {
            if (o.collapsed || o.hit) continue;
            Vec s = o.final_state;
            std::sort(s.begin(), s.end(), std::greater<>());
            va.push_back(std::sqrt(std::max(0.0, s[c])));
        }
        for (const auto& o : b) {
            if (o.collapsed || o.hit) continue;
            Vec s = o.final_state;
            for (double& v : s) v = std::abs(v);
            std::sort(s.begin(), s.end(), std::greater<>());
            vb.push_back(s[c]);
        }
        rep.ks.push_back(ks_two_sample(va, vb));
        rep.min_p = std::min(rep.min_p, rep.ks.back().p_value);
    }
    return rep;
}

} // namespace dunkl
