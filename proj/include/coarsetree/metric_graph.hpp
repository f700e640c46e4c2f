#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "coarsetree/error.hpp"

namespace coarsetree {

using Vid = std::int32_t;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
  Vid a;
  Vid b;
  double w;
};

// Finite weighted graph. Vertices are dense indices 0..n-1 with optional labels.
class MetricGraph {
 public:
  MetricGraph() = default;
  explicit MetricGraph(int n);

  Vid add_vertex(std::string label = {});
  void add_edge(Vid a, Vid b, double w = 1.0);

  int size() const { return static_cast<int>(adj_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  // neighbour list with the minimum weight over parallel edges
  const std::vector<std::pair<Vid, double>>& neighbors(Vid v) const { return adj_[v]; }
  const std::string& label(Vid v) const { return labels_[v]; }
  void set_label(Vid v, std::string s) { labels_[v] = std::move(s); }
  Vid find_label(const std::string& s) const;  // -1 if absent
  double max_edge_weight() const;

  // connected components, each sorted
  std::vector<std::vector<Vid>> components() const;
  bool connected() const { return size() <= 1 || components().size() == 1; }

  // subgraph induced on the listed vertices, renumbered in list order
  MetricGraph induced(const std::vector<Vid>& vs) const;

 private:
  std::vector<std::vector<std::pair<Vid, double>>> adj_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n, double fill = 0.0) : n_(n), d_(static_cast<size_t>(n) * n, fill) {}

  int size() const { return n_; }
  double operator()(Vid i, Vid j) const { return d_[static_cast<size_t>(i) * n_ + j]; }
  double& at(Vid i, Vid j) { return d_[static_cast<size_t>(i) * n_ + j]; }
  const double* row(Vid i) const { return d_.data() + static_cast<size_t>(i) * n_; }

  double diameter() const;
  // throws StructuralError when symmetry, zero diagonal or triangle inequality fail
  void validate(double tol = kTol) const;

 private:
  int n_ = 0;
  std::vector<double> d_;
};

struct GeodesicPath {
  std::vector<Vid> vertices;
  double length = 0.0;
};

std::vector<double> dijkstra(const MetricGraph& g, Vid src);
std::vector<double> dijkstra_multi(const MetricGraph& g, const std::vector<Vid>& srcs);

// exact all pairs; throws StructuralError naming a stray component when disconnected
DistanceMatrix shortest_path_metric(const MetricGraph& g, bool validate = false);

// walks from u, always stepping to the least-id distance-decreasing neighbour
GeodesicPath canonical_geodesic(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v);

// {w : d(u,w)+d(w,v)=d(u,v)}, sorted by d(u,w) then id
std::vector<Vid> interval_set(const DistanceMatrix& d, Vid u, Vid v, double tol = kTol);

double path_length(const MetricGraph& g, const std::vector<Vid>& path);
bool is_edge_path(const MetricGraph& g, const std::vector<Vid>& path);
double edge_weight(const MetricGraph& g, Vid a, Vid b);  // kInf when not adjacent

// unit-weight helpers used by fixtures and tests
MetricGraph path_graph(int n, double w = 1.0);
MetricGraph cycle_graph(int n, double w = 1.0);
MetricGraph grid_graph(int rows, int cols);

}  // namespace coarsetree
