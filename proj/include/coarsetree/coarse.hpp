#pragma once

#include <utility>
#include <vector>

#include "coarsetree/metric_graph.hpp"

namespace coarsetree {

using Subset = std::vector<Vid>;  // sorted, unique

Subset make_subset(std::vector<Vid> v);
bool contains(const Subset& A, Vid x);
double dist_to_set(const DistanceMatrix& d, Vid x, const Subset& A);
double set_diameter(const DistanceMatrix& d, const Subset& A);
Subset neighborhood(const DistanceMatrix& d, const Subset& A, double R);
Subset set_union(const Subset& A, const Subset& B);
Subset set_intersection(const Subset& A, const Subset& B);

struct Quasiconvexity {
  double lambda = 0;
  Vid a = -1, b = -1, far = -1;  // far lies on a geodesic ab at distance lambda from A
};
Quasiconvexity quasiconvexity_constant(const DistanceMatrix& d, const Subset& A);

// N_eps of the union of all geodesics between points of A
Subset quasiconvex_hull(const DistanceMatrix& d, const Subset& A, double eps);
// hull computed in the induced path metric of `host` (e.g. a tripod); result in host-graph ids
Subset quasiconvex_hull_within(const MetricGraph& g, const Subset& host, const Subset& A, double eps);

struct ProjectionMap {
  std::vector<Vid> image;  // image[x] = least-id nearest vertex of A
  double L_star = 0;       // max over edges xy of d(Px,Py)/(d(x,y)+1)
  Vid wx = -1, wy = -1;    // edge realizing L_star
};
ProjectionMap nearest_point_projection(const MetricGraph& g, const DistanceMatrix& d, const Subset& A);
inline double lip_proj_bound(double lambda, double delta) { return std::max(2.0, 2 * lambda + 9 * delta); }
Subset project_set(const ProjectionMap& P, const Subset& B);

double hausdorff_distance(const DistanceMatrix& d, const Subset& A, const Subset& B);

struct Coboundedness {
  double C = 0;
  double diam_PA_B = 0;  // diam of projection of B to A
  double diam_PB_A = 0;
};
Coboundedness coboundedness(const MetricGraph& g, const DistanceMatrix& d, const Subset& A, const Subset& B);
inline double cobdd_bound(double lambda, double delta) { return 2 * lambda + 7 * delta; }
inline double cobdd_separation(double lambda, double delta) { return 2 * lambda + 5 * delta; }

struct CoarseConstants {
  double L = 0;       // multiplicative upper constant max dY/dX
  double eps = 0;     // additive upper constant at that L
  double L0 = 1;      // single constant with dX/L0 - L0 <= dY <= L0 dX + L0
  double lower_L = 1; // lower half of L0
  // eta[t] = max output distance over pairs at input distance <= t
  std::vector<std::pair<double, double>> eta;
  bool qi_embedding = true;
  Vid wx = -1, wy = -1;  // witness pair (collapsed or worst lower distortion)
};
struct DistortionTolerance {
  double L_tol = 100.0;
  double eps_tol = 0.5;
};
CoarseConstants map_distortion(const std::vector<Vid>& f, const DistanceMatrix& dX, const DistanceMatrix& dY,
                               DistortionTolerance tol = {});

}  // namespace coarsetree
