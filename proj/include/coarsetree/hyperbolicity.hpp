#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "coarsetree/metric_graph.hpp"

namespace coarsetree {

double gromov_product(const DistanceMatrix& d, Vid y, Vid z, Vid x);

enum class DeltaMode { FourPoint, SlimIntervals, SlimExhaustive };

const char* to_string(DeltaMode m);
DeltaMode delta_mode_from_string(const std::string& s);

struct DeltaResult {
  DeltaMode mode = DeltaMode::FourPoint;
  double delta = 0.0;
  // four_point: (w,x,y,z) with min((x.z)_w,(y.z)_w)-(x.y)_w = delta
  // slim: (x,y,z,p) with p on a geodesic xy far from the other two sides
  std::array<Vid, 4> witness{-1, -1, -1, -1};
  // slim_exhaustive: largest number of geodesics between one pair
  std::uint64_t max_geodesics = 0;
};

DeltaResult delta_four_point(const DistanceMatrix& d);
// geodesic_cap = 0 disables the cap
DeltaResult delta_slim(const MetricGraph& g, const DistanceMatrix& d, DeltaMode mode,
                       std::uint64_t geodesic_cap = 0);
DeltaResult delta_hyperbolicity(const MetricGraph& g, const DistanceMatrix& d, DeltaMode mode,
                                std::uint64_t geodesic_cap = 0);

// number of distinct geodesics u->v (saturating at UINT64_MAX)
std::uint64_t count_geodesics(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v);

// max over geodesics g from u to v of d(p, g), for every p
std::vector<double> farthest_geodesic_distance(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v);

}  // namespace coarsetree
