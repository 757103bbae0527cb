#pragma once
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace dunkl {

using Vec = std::vector<double>;
// Roots carry integer coordinates in the standard basis (entries in {-2..2}).
using Root = std::vector<int>;

enum class Family { A, B, C, D, BC };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

double dot(const Root& a, const Vec& x);
double dot(const Vec& a, const Vec& b);
int dot(const Root& a, const Root& b);
double norm(const Root& a);

class RootSystem {
public:
    // A: m is the ambient dimension, i.e. the system is A_{m-1} realised in R^m.
    static RootSystem build(Family f, int m);

    Family family() const { return family_; }
    int rank() const { return m_; }          // ambient dimension
    const std::vector<Root>& roots() const { return roots_; }
    const std::vector<Root>& positive() const { return positive_; }
    const std::vector<Root>& simple() const { return simple_; }
    const Root& highest() const;             // C and BC only
    bool has_alcove() const { return family_ == Family::C || family_ == Family::BC; }

    int num_orbits() const { return num_orbits_; }
    int orbit_of(const Root& a) const;
    // orbit id for every positive root, aligned with positive()
    const std::vector<int>& positive_orbits() const { return pos_orbit_; }

    bool contains(const Root& a) const;
    Root reflect(const Root& alpha, const Root& beta) const;
    Vec reflect(const Root& alpha, const Vec& x) const;

    // coefficients of a root over the simple system
    std::vector<int> simple_coefficients(const Root& a) const;
    bool is_positive(const Root& a) const;

    double chamber_distance(const Vec& x) const;
    // distance to the boundary of the principal alcove, walls at <alpha~,phi> = pi
    double alcove_distance(const Vec& phi) const;
    // which wall realises the distance: index into simple(), or simple().size() for the affine wall
    std::pair<double, int> nearest_wall(const Vec& x, bool alcove) const;

    std::size_t weyl_order() const;
    std::string name() const;

private:
    Family family_{};
    int m_ = 0;
    std::vector<Root> roots_, positive_, simple_;
    std::vector<int> orbit_;      // aligned with roots_
    std::vector<int> pos_orbit_;
    int num_orbits_ = 0;
    Root highest_;
    int index_of(const Root& a) const;
};

// W-invariant multiplicity function stored per orbit.
class Multiplicity {
public:
    Multiplicity() = default;
    Multiplicity(const RootSystem& rs, std::vector<double> per_orbit);

    // Named constructors keyed by representative roots, independent of orbit numbering.
    static Multiplicity A(const RootSystem& rs, double k);
    static Multiplicity B(const RootSystem& rs, double k0, double k1);  // k0 on e_i, k1 on e_i +- e_j
    static Multiplicity C(const RootSystem& rs, double k_long, double k_mid); // 2e_i, e_i +- e_j
    static Multiplicity D(const RootSystem& rs, double k);
    // k(e_i)=k0, k(2e_i)=k1/2, k(e_i +- e_j)=k2
    static Multiplicity BC(const RootSystem& rs, double k0, double k1, double k2);

    double operator()(int orbit) const { return k_[orbit]; }
    double of(const RootSystem& rs, const Root& a) const { return k_[rs.orbit_of(a)]; }
    const std::vector<double>& values() const { return k_; }
    std::vector<double> index() const;        // l = k - 1/2 per orbit
    // per positive root, aligned with rs.positive()
    std::vector<double> on_positive(const RootSystem& rs) const;
    double gamma(const RootSystem& rs) const; // sum over positive roots

private:
    std::vector<double> k_;
};

Root unit(int m, int i, int scale = 1);
Root diff(int m, int i, int j);   // e_i - e_j
Root sum(int m, int i, int j);    // e_i + e_j

} // namespace dunkl
