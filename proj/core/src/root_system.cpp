#include "dunkl/root_system.hpp"
#include "dunkl/errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

namespace dunkl {

std::string to_string(Family f) {
    switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::BC: return "BC";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    if (s == "A") return Family::A;
    if (s == "B") return Family::B;
    if (s == "C") return Family::C;
    if (s == "D") return Family::D;
    if (s == "BC") return Family::BC;
    throw InvalidArgument("unknown root system family '" + s + "'");
}

double dot(const Root& a, const Vec& x) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i]) s += a[i] * x[i];
    return s;
}
double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
int dot(const Root& a, const Root& b) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
double norm(const Root& a) { return std::sqrt(double(dot(a, a))); }

Root unit(int m, int i, int scale) {
    Root r(m, 0);
    r[i] = scale;
    return r;
}
Root diff(int m, int i, int j) {
    Root r(m, 0);
    r[i] = 1;
    r[j] = -1;
    return r;
}
Root sum(int m, int i, int j) {
    Root r(m, 0);
    r[i] = 1;
    r[j] = 1;
    return r;
}

namespace {
Root neg(Root r) {
    for (auto& v : r) v = -v;
    return r;
}
void push_pm(std::vector<Root>& out, const Root& r) {
    out.push_back(r);
    out.push_back(neg(r));
}
} // namespace

RootSystem RootSystem::build(Family f, int m) {
    if (m < 1) throw Unsupported("rank must be >= 1");
    if ((f == Family::A || f == Family::D) && m < 2)
        throw Unsupported(to_string(f) + " needs m >= 2");
    RootSystem rs;
    rs.family_ = f;
    rs.m_ = m;
    auto& R = rs.roots_;
    // generation order fixes orbit numbering: short/e_i-type roots come first
    if (f == Family::B || f == Family::BC)
        for (int i = 0; i < m; ++i) push_pm(R, unit(m, i));
    if (f == Family::C || f == Family::BC)
        for (int i = 0; i < m; ++i) push_pm(R, unit(m, i, 2));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            push_pm(R, diff(m, i, j));
            if (f != Family::A) push_pm(R, sum(m, i, j));
        }

    for (int i = 0; i + 1 < m; ++i) rs.simple_.push_back(diff(m, i, i + 1));
    switch (f) {
    case Family::A: break;
    case Family::B:
    case Family::BC: rs.simple_.push_back(unit(m, m - 1)); break;
    case Family::C: rs.simple_.push_back(unit(m, m - 1, 2)); break;
    case Family::D: rs.simple_.push_back(sum(m, m - 2, m - 1)); break;
    }
    if (f == Family::C || f == Family::BC) rs.highest_ = unit(m, 0, 2);

    for (const auto& r : R)
        if (rs.is_positive(r)) rs.positive_.push_back(r);

    // orbits: BFS closure under all reflections
    rs.orbit_.assign(R.size(), -1);
    for (std::size_t s = 0; s < R.size(); ++s) {
        if (rs.orbit_[s] >= 0) continue;
        int id = rs.num_orbits_++;
        std::deque<int> q{int(s)};
        rs.orbit_[s] = id;
        while (!q.empty()) {
            int cur = q.front();
            q.pop_front();
            for (const auto& a : R) {
                int j = rs.index_of(rs.reflect(a, R[cur]));
                if (rs.orbit_[j] < 0) {
                    rs.orbit_[j] = id;
                    q.push_back(j);
                }
            }
        }
    }
    for (const auto& r : rs.positive_) rs.pos_orbit_.push_back(rs.orbit_of(r));
    return rs;
}

const Root& RootSystem::highest() const {
    if (!has_alcove()) throw Unsupported("highest root only exposed for C and BC");
    return highest_;
}

int RootSystem::index_of(const Root& a) const {
    for (std::size_t i = 0; i < roots_.size(); ++i)
        if (roots_[i] == a) return int(i);
    return -1;
}

bool RootSystem::contains(const Root& a) const { return index_of(a) >= 0; }

int RootSystem::orbit_of(const Root& a) const {
    int i = index_of(a);
    if (i < 0) throw InvalidArgument("not a root of " + name());
    return orbit_[i];
}

Root RootSystem::reflect(const Root& alpha, const Root& beta) const {
    int aa = dot(alpha, alpha);
    int num = 2 * dot(alpha, beta);
    if (num % aa != 0) throw Error("non-crystallographic pairing");
    int c = num / aa;
    Root out = beta;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * alpha[i];
    return out;
}

Vec RootSystem::reflect(const Root& alpha, const Vec& x) const {
    if (!contains(alpha)) throw InvalidArgument("reflection by a non-root");
    double c = 2.0 * dot(alpha, x) / dot(alpha, alpha);
    Vec out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * alpha[i];
    return out;
}

std::vector<int> RootSystem::simple_coefficients(const Root& a) const {
    const int n = int(simple_.size());
    Eigen::MatrixXd S(m_, n);
    Eigen::VectorXd b(m_);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m_; ++i) S(i, j) = simple_[j][i];
    for (int i = 0; i < m_; ++i) b(i) = a[i];
    Eigen::VectorXd c = S.colPivHouseholderQr().solve(b);
    std::vector<int> out(n);
    for (int j = 0; j < n; ++j) out[j] = int(std::lround(c(j)));
    // verify exactness
    for (int i = 0; i < m_; ++i) {
        int s = 0;
        for (int j = 0; j < n; ++j) s += out[j] * simple_[j][i];
        if (s != a[i]) throw Error("root not in the integer span of the simple roots");
    }
    return out;
}

bool RootSystem::is_positive(const Root& a) const {
    auto c = simple_coefficients(a);
    bool nonneg = std::all_of(c.begin(), c.end(), [](int v) { return v >= 0; });
    bool nonpos = std::all_of(c.begin(), c.end(), [](int v) { return v <= 0; });
    if (!nonneg && !nonpos) throw Error("root with mixed-sign simple coefficients");
    return nonneg;
}

std::pair<double, int> RootSystem::nearest_wall(const Vec& x, bool alcove) const {
    double best = INFINITY;
    int wall = -1;
    for (std::size_t j = 0; j < simple_.size(); ++j) {
        double d = dot(simple_[j], x) / norm(simple_[j]);
        if (d < best) {
            best = d;
            wall = int(j);
        }
    }
    if (alcove) {
        double d = (std::numbers::pi - dot(highest(), x)) / norm(highest());
        if (d < best) {
            best = d;
            wall = int(simple_.size());
        }
    }
    return {best, wall};
}

double RootSystem::chamber_distance(const Vec& x) const {
    if (int(x.size()) != m_) throw InvalidArgument("dimension mismatch");
    return nearest_wall(x, false).first;
}

double RootSystem::alcove_distance(const Vec& phi) const {
    if (!has_alcove()) throw Unsupported("alcove needs family C or BC");
    if (int(phi.size()) != m_) throw InvalidArgument("dimension mismatch");
    return nearest_wall(phi, true).first;
}

std::size_t RootSystem::weyl_order() const {
    std::size_t f = 1;
    for (int i = 2; i <= m_; ++i) f *= std::size_t(i);
    switch (family_) {
    case Family::A: return f;
    case Family::D: return f << (m_ - 1);
    default: return f << m_;
    }
}

std::string RootSystem::name() const {
    int r = family_ == Family::A ? m_ - 1 : m_;
    return to_string(family_) + std::to_string(r);
}

Multiplicity::Multiplicity(const RootSystem& rs, std::vector<double> per_orbit) : k_(std::move(per_orbit)) {
    if (int(k_.size()) != rs.num_orbits())
        throw InvalidArgument("multiplicity needs one value per orbit (" + std::to_string(rs.num_orbits()) + ")");
    for (double v : k_)
        if (!(v >= 0)) throw InvalidArgument("multiplicities must be nonnegative");
}

namespace {
Multiplicity from_reps(const RootSystem& rs, const std::vector<std::pair<Root, double>>& reps) {
    std::vector<double> k(rs.num_orbits(), -1.0);
    for (const auto& [r, v] : reps) {
        int o = rs.orbit_of(r);
        if (k[o] >= 0 && k[o] != v) throw InvalidArgument("conflicting multiplicities on one orbit");
        k[o] = v;
    }
    for (double& v : k)
        if (v < 0) throw InvalidArgument("orbit left without a multiplicity");
    return Multiplicity(rs, k);
}
} // namespace

Multiplicity Multiplicity::A(const RootSystem& rs, double k) {
    if (rs.family() != Family::A) throw InvalidArgument("A multiplicity on " + rs.name());
    return from_reps(rs, {{diff(rs.rank(), 0, 1), k}});
}
Multiplicity Multiplicity::B(const RootSystem& rs, double k0, double k1) {
    if (rs.family() != Family::B) throw InvalidArgument("B multiplicity on " + rs.name());
    int m = rs.rank();
    std::vector<std::pair<Root, double>> reps{{unit(m, 0), k0}};
    if (m > 1) reps.push_back({diff(m, 0, 1), k1});
    return from_reps(rs, reps);
}
Multiplicity Multiplicity::C(const RootSystem& rs, double k_long, double k_mid) {
    if (rs.family() != Family::C) throw InvalidArgument("C multiplicity on " + rs.name());
    int m = rs.rank();
    std::vector<std::pair<Root, double>> reps{{unit(m, 0, 2), k_long}};
    if (m > 1) reps.push_back({diff(m, 0, 1), k_mid});
    return from_reps(rs, reps);
}
Multiplicity Multiplicity::D(const RootSystem& rs, double k) {
    if (rs.family() != Family::D) throw InvalidArgument("D multiplicity on " + rs.name());
    int m = rs.rank();
    // D_2 splits into two orbits; both get the same value
    return from_reps(rs, {{diff(m, 0, 1), k}, {sum(m, 0, 1), k}});
}
Multiplicity Multiplicity::BC(const RootSystem& rs, double k0, double k1, double k2) {
    if (rs.family() != Family::BC) throw InvalidArgument("BC multiplicity on " + rs.name());
    int m = rs.rank();
    std::vector<std::pair<Root, double>> reps{{unit(m, 0), k0}, {unit(m, 0, 2), k1 / 2}};
    if (m > 1) reps.push_back({diff(m, 0, 1), k2});
    return from_reps(rs, reps);
}

std::vector<double> Multiplicity::index() const {
    std::vector<double> l(k_);
    for (auto& v : l) v -= 0.5;
    return l;
}

std::vector<double> Multiplicity::on_positive(const RootSystem& rs) const {
    std::vector<double> out;
    for (int o : rs.positive_orbits()) out.push_back(k_[o]);
    return out;
}

double Multiplicity::gamma(const RootSystem& rs) const {
    double g = 0;
    for (int o : rs.positive_orbits()) g += k_[o];
    return g;
}

} // namespace dunkl
