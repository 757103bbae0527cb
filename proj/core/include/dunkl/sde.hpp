#pragma once
#include "dunkl/root_system.hpp"
#include "dunkl/stats.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

namespace dunkl {

enum class ProcessKind { RadialDunkl, BetaLaguerre, BetaJacobi };
// Explicit: the closed coordinate formulas; RootSum: sum over positive roots
// (Laguerre: Ito image of the B_m root sum under lambda = r^2).
enum class DriftRoute { Explicit, RootSum };

struct ProcessSpec {
    ProcessKind kind = ProcessKind::RadialDunkl;
    std::shared_ptr<const RootSystem> rs;  // radial Dunkl
    Multiplicity k;
    int m = 1;                             // Laguerre / Jacobi
    double beta = 2, delta = 0, p = 0, q = 0;

    Vec start;
    double T = 1, dt = 1e-3;
    std::uint64_t seed = 1;
    std::uint32_t stream = 0;    // independent noise families under one seed (0..63)

    // Brownian increments live on the grid dt*2^refinement and are split dyadically by
    // bridges, so runs at dt and dt/2 (refinement + 1) share the same coarse path.
    int refinement = 0;
    bool noise = true;           // false: deterministic drift flow (test hook)
    bool mirror_noise = false;   // increments reversed and negated (alcove mirror test)
    DriftRoute route = DriftRoute::Explicit;
    double substep_c = 0.04;     // substep <= c * margin^2
    // A wall of multiplicity k < 1/2 counts as hit at distance sqrt(dt) * hit_eps^(1/(1-2k)):
    // hit_eps bounds the chance that such a path would have escaped back to sqrt(dt).
    double hit_eps = 1e-6;
    long max_substeps = 1000000; // per base step
};

ProcessSpec radial_dunkl(std::shared_ptr<const RootSystem> rs, Multiplicity k, Vec start, double T, double dt,
                         std::uint64_t seed);
ProcessSpec beta_laguerre(int m, double beta, double delta, Vec start, double T, double dt, std::uint64_t seed);
ProcessSpec beta_jacobi(int m, double beta, double p, double q, Vec start_phi, double T, double dt,
                        std::uint64_t seed);

Vec drift(const ProcessSpec& spec, const Vec& x);
// distance to the state-space boundary (chamber / alcove / Laguerre walls in sqrt scale)
// and the index of the nearest wall
std::pair<double, int> boundary_margin(const ProcessSpec& spec, const Vec& x);
// sum of multiplicities of roots parallel to the given wall; walls attainable iff < 1/2
double wall_multiplicity(const ProcessSpec& spec, int wall);
void validate(const ProcessSpec& spec);

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::optional<std::pair<int, double>> hit;  // (wall, time)
    long substeps = 0;
};

Trajectory simulate(const ProcessSpec& spec, std::uint32_t path = 0);

struct PathOutcome {
    bool hit = false, collapsed = false;
    int wall = -1;
    double hit_time = std::numeric_limits<double>::infinity();
    double min_margin = std::numeric_limits<double>::infinity();
    Vec final_state;
};
// Run one path; `observe` (optional) sees every base-grid state.
PathOutcome run_path(const ProcessSpec& spec, std::uint32_t path,
                     const std::function<void(long, double, const Vec&)>& observe = {});

unsigned default_threads();
// Evaluate fn(i) for i in [0, n) on `threads` workers; results land in path order.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

struct SurvivalCurve {
    std::vector<double> times, survival, se;
    std::size_t paths = 0, hits = 0, collapses = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    double dt = 0, hit_threshold = 0;   // largest wall threshold
};
SurvivalCurve hitting_time_mc(const ProcessSpec& spec, std::size_t n_paths, const std::vector<double>& times,
                              unsigned threads = 0);

MeanSE expectation_mc(const ProcessSpec& spec, std::size_t n_paths, const std::function<double(const Vec&)>& f,
                      unsigned threads = 0);

struct CouplingReport {
    std::size_t paths = 0, samples = 0, violations = 0;
    double fraction = 0, max_excess = 0;
};
// Simulates <alpha0, X> together with the one-dimensional dominating process driven by
// the same Brownian increments, on common substeps.
CouplingReport coupling_check(const ProcessSpec& spec, const Root& alpha0, std::size_t n_paths,
                              unsigned threads = 0);

struct LaguerreReport {
    double k0 = 0, k1 = 0;
    std::vector<KSResult> ks;   // one per sorted component
    double min_p = 1;
};
LaguerreReport laguerre_consistency(int m, double beta, double delta, const Vec& lambda0, double T, double dt,
                                    std::size_t n_paths, std::uint64_t seed, unsigned threads = 0);

} // namespace dunkl
