#pragma once
#include <vector>

namespace dunkl {

// Weakly decreasing positive parts; the empty vector is the empty partition.
using Partition = std::vector<int>;

int weight(const Partition& p);
bool is_partition(const Partition& p);
// all partitions of n with at most max_len parts, reverse lexicographic order
std::vector<Partition> partitions_of(int n, int max_len);
// mu <= lambda in dominance order (equal weights assumed)
bool dominated(const Partition& mu, const Partition& lambda);
Partition conjugate(const Partition& p);
// generalised Pochhammer prod_i (c - k(i-1))_{tau_i}
double gen_pochhammer(double c, const Partition& tau, double k);
long double gen_pochhammer_l(long double c, const Partition& tau, long double k);

// arm/leg based hook products used by the J-normalisation, alpha = Jack parameter
//   lower: prod (alpha*a + l + 1)   upper: prod (alpha*(a+1) + l)
double hook_lower(const Partition& p, double alpha);
double hook_upper(const Partition& p, double alpha);
// J_tau(1,...,1) with m ones
double jack_at_ones(const Partition& p, double alpha, int m);

} // namespace dunkl
