#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "coarsetree/metric_graph.hpp"

namespace coarsetree {

using Rng = std::mt19937_64;

// uniform in [0, n)
inline std::uint64_t draw(Rng& rng, std::uint64_t n) { return n ? rng() % n : 0; }

// least k >= 1 with len(p[i..j]) <= k d(p_i,p_j) + k^2 for all i<j
double quasigeodesic_constant(const MetricGraph& g, const DistanceMatrix& d, const std::vector<Vid>& path);

// uniformly random walk through the geodesic DAG from u to v
std::vector<Vid> random_geodesic(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v, Rng& rng);

// a geodesic from u to v bent through up to `detours` random waypoints at distance <= reach;
// returns the best attempt whose constant is <= k (falls back to a geodesic)
std::vector<Vid> sample_quasigeodesic(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v, double k,
                                      Rng& rng, int detours = 2, double reach = 2.0);

inline double morse_bound(double k, double delta) { return 92.0 * k * k * (k + 3.0 * delta); }

}  // namespace coarsetree
