#pragma once

#include <memory>
#include <mutex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coarsetree/coarse.hpp"
#include "coarsetree/hyperbolicity.hpp"
#include "coarsetree/metric_graph.hpp"

namespace coarsetree {

class BaseTree {
 public:
  BaseTree() = default;
  explicit BaseTree(int n);

  int add_vertex(std::string label = {});
  int add_edge(int v, int w, std::string label = {});

  int size() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::pair<int, int>& edge(int e) const { return edges_[e]; }
  const std::vector<std::pair<int, int>>& incident(int v) const { return adj_[v]; }  // (neighbour, edge)
  const std::string& label(int v) const { return labels_[v]; }
  const std::string& edge_label(int e) const { return edge_labels_[e]; }
  int find_label(const std::string& s) const;
  int edge_between(int v, int w) const;  // -1 if not adjacent
  int other_end(int e, int v) const { return edges_[e].first == v ? edges_[e].second : edges_[e].first; }

  void validate() const;  // connected and acyclic
  int distance(int v, int w) const;
  std::vector<int> path(int v, int w) const;  // vertex sequence
  // parent[v] on the way to root (root maps to -1), plus BFS order
  std::pair<std::vector<int>, std::vector<int>> rooted(int root) const;
  int diameter() const;
  bool is_subtree(const std::vector<int>& S) const;

 private:
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::string> labels_;
  std::vector<std::string> edge_labels_;
};

struct TreeOfSpaces {
  BaseTree tree;
  std::vector<MetricGraph> vertex_spaces;
  std::vector<MetricGraph> edge_spaces;
  // inc_first[e][x] in X_{edge(e).first}, inc_second[e][x] in X_{edge(e).second}
  std::vector<std::vector<Vid>> inc_first;
  std::vector<std::vector<Vid>> inc_second;

  void validate() const;  // throws StructuralError
  const std::vector<Vid>& incidence(int e, int v) const;
};

struct BaseLoc {
  bool is_edge = false;
  int id = 0;
  bool operator==(const BaseLoc& o) const { return is_edge == o.is_edge && id == o.id; }
};

// a vertex set of the total space with its intrinsic path metric
struct Piece {
  std::vector<Vid> global;  // sorted
  MetricGraph graph;
  DistanceMatrix d;
  Vid local(Vid g) const;   // -1 if absent
  double dist(Vid a, Vid b) const { return d(local(a), local(b)); }
};

class TotalSpace {
 public:
  explicit TotalSpace(TreeOfSpaces tos);
  TotalSpace(const TotalSpace&) = delete;
  TotalSpace& operator=(const TotalSpace&) = delete;

  const TreeOfSpaces& tos() const { return tos_; }
  const BaseTree& tree() const { return tos_.tree; }
  const MetricGraph& graph() const { return graph_; }
  int size() const { return graph_.size(); }
  const DistanceMatrix& distances() const;
  // installs a precomputed matrix (e.g. from a cache); ignored once distances exist
  void preload_distances(DistanceMatrix d) const;

  BaseLoc pi(Vid x) const { return pi_[x]; }
  Vid fiber_vertex(int v, Vid local) const { return vert_off_[v] + local; }
  Vid edge_vertex(int e, Vid local) const { return edge_off_[e] + local; }
  Vid local_index(Vid x) const;  // index inside its own fibre or edge space
  std::vector<Vid> fiber(int v) const;
  std::vector<Vid> edge_fiber(int e) const;

  const Piece& fiber_piece(int v) const;
  const Piece& edge_piece(int e) const;
  const Piece& union_piece(int e) const;  // X_{vw}
  std::shared_ptr<const Piece> subtree_piece(const std::vector<int>& S) const;

  // d_T on the subdivided base where edge midpoints sit at 1/2
  double base_distance(BaseLoc a, BaseLoc b) const;

  std::vector<Vid> preimage(const std::vector<int>& S) const;  // pi^{-1}(S), sorted

  struct CacheStats {
    int hits = 0;
    int misses = 0;
  };
  CacheStats cache_stats() const;

 private:
  const Piece& cached(std::map<int, std::unique_ptr<Piece>>& m, int key, const std::vector<Vid>& vs) const;

  TreeOfSpaces tos_;
  MetricGraph graph_;
  std::vector<BaseLoc> pi_;
  std::vector<Vid> vert_off_, edge_off_;
  mutable std::once_flag dist_once_;
  mutable DistanceMatrix dist_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<Piece>> fib_, edg_, uni_;
  mutable CacheStats stats_;
};

std::shared_ptr<Piece> make_piece(const MetricGraph& g, std::vector<Vid> vs);

std::shared_ptr<TotalSpace> build_total_space(TreeOfSpaces tos);

struct Restriction {
  std::vector<int> S;
  std::shared_ptr<Piece> piece;  // X_S with intrinsic metric, global ids of the ambient space
  std::vector<std::pair<double, double>> eta;  // ambient distance -> max intrinsic distance
  double max_ratio = 1;  // max d_S / d_X
  bool superlinear = false;  // eta(t)/t strictly increasing on the sampled table
};
Restriction restrict_to_subtree(const TotalSpace& X, const std::vector<int>& S);

struct AxiomHRow {
  std::string piece;  // "v:<label>" or "e:<label>"
  double delta = 0;
};
struct IncidenceRow {
  int edge = 0;
  int vertex = 0;
  CoarseConstants c;
};
struct AxiomHReport {
  double delta0 = 0;
  double L0 = 1;
  bool pass = true;
  std::vector<AxiomHRow> pieces;
  std::vector<IncidenceRow> incidences;
  int failing = -1;  // index into incidences
};
AxiomHReport verify_axiom_H(const TreeOfSpaces& tos, DistortionTolerance tol = {},
                            DeltaMode mode = DeltaMode::SlimIntervals);

struct K0Value {
  long double value = 0;
  std::string exact;  // decimal integer when the cube base is integral, else empty
};
K0Value k0_formula(double lambda0p, double delta0p, double L0p);

struct SecondaryConstants {
  double lambda0 = 0;           // quasiconvexity of incidence images in vertex spaces
  double delta0p = 0;           // slim constant of the X_{vw}
  double lambda0p = 0;          // measured quasiconvexity of X_v, X_e in X_{vw}
  double lambda0p_formula = 0;  // 92 L'0^2 (L'0 + 3 delta'0)
  double L0p = 2;               // qi constant of X_v -> X_{vw}, at least 2
  double L1p = 0;               // (L'0 + 1) max(2, 2 lambda'0 + 9 delta'0)
  K0Value K0;                   // from the measured triple
  K0Value K0_formula;           // with lambda'0 from the formula
  std::string K_star;           // symbolic chain
};
SecondaryConstants secondary_constants(const TotalSpace& X);
std::string k_star_formula();

struct SemiContinuousFamily {
  int center = 0;
  std::vector<char> in_S;               // per base vertex
  std::vector<Subset> Y_v;              // global ids, per base vertex
  std::vector<Subset> Y_e;              // global ids, per base edge (may be empty)
  double K = 0, D = kInf, E = 0, lambda = 0;
  std::vector<Vid> vertices() const;    // union, sorted
};

struct FamilyEdgeRow {
  int v = 0, w = 0;  // oriented away from the centre
  bool boundary = false;
  double lambda_w = 0;
  double leaf_K = 0;
  double hd_proj = 0;  // Hd(P_{X_w}(Y_v), Y_w)
  double hd_edge = 0;  // Hd(Y_w, Y_e)
  double cobdd = 0;    // boundary edges only
};
struct FamilyReport {
  bool pass = true;
  double lambda = 0, leaf_K = 0, E = 0, K_edge = 0, D = 0;
  bool cond1 = true, cond2 = true, cond3 = true, cond4 = true;
  std::vector<FamilyEdgeRow> rows;
  std::vector<double> leaf_cost;  // per total-space vertex of the family, kInf elsewhere
};
FamilyReport verify_semicontinuous_family(const TotalSpace& X, const SemiContinuousFamily& fam);

struct MitraRetraction {
  std::vector<Vid> rho;
  double L = 0;          // max over edges xy of d(rho x, rho y)/(d(x,y)+1)
  double max_jump = 0;   // max over edges of d(rho x, rho y)
  bool fixes_family = true;
  bool idempotent = true;
};
MitraRetraction mitra_retraction(const TotalSpace& X, const SemiContinuousFamily& fam);

}  // namespace coarsetree
