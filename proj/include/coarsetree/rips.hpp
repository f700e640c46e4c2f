#pragma once

#include <vector>

#include "coarsetree/metric_graph.hpp"

namespace coarsetree {

struct RipsResult {
  MetricGraph graph;  // unit edges
  bool connected = true;
  int edge_count = 0;
};

RipsResult rips_graph(const DistanceMatrix& d, double R);

struct NetApproximation {
  MetricGraph Z;            // vertices in order of Y
  std::vector<Vid> Y;
  double net_constant = 0;  // D = max_x d(x, Y)
  double r = 1;             // coarse connectivity of the host
  double R = 0;
  double measured_K = 1;    // worst two-way ratio d_Z/d_X, d_X/d_Z
  double measured_eps = 0;  // additive error at the lemma's K
  double lemma_K = 0;
  double lemma_eps = 0;
  bool within_bound = true;
};

// throws PreconditionError when R < r + 2D
NetApproximation net_approximation(const MetricGraph& g, const DistanceMatrix& d, const std::vector<Vid>& Y, double R);

}  // namespace coarsetree
