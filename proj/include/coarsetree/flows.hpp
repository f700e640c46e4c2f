#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarsetree/tree_of_spaces.hpp"

namespace coarsetree {

struct QiSection {
  std::vector<int> domain;  // base vertices, sorted
  std::vector<Vid> at;      // per base vertex, -1 outside the domain
  double K = 0;
  double measured_K = 0;    // max d_{X_vw} over adjacent domain vertices
  std::string mode = "exact";
  bool contains(int v) const { return v >= 0 && v < static_cast<int>(at.size()) && at[v] >= 0; }
};

// jump bound of a section over its domain, measured in the X_{vw}
double section_jump(const TotalSpace& X, const QiSection& s);

// exact bottom-up feasibility over the domain subtree rooted at pi(start), least-id choices top-down;
// `end`, when >= 0, pins the value on its own fibre; `maximal` then extends greedily beyond the domain
std::optional<QiSection> find_qi_section(const TotalSpace& X, const std::vector<int>& domain, double K, Vid start,
                                         Vid end = -1, bool maximal = false);

struct FlowContext {
  double delta0 = 0;    // slim constant of vertex and edge spaces
  double delta0p = 0;   // slim constant of the X_vw
  double lambda0p = 0;  // quasiconvexity of X_v, X_e in X_vw
  double L0p = 2;
};
FlowContext flow_context(const TotalSpace& X);

struct FlowSpace {
  int center = 0;
  double R = 0;
  double implied_K = 0;  // (15 L'0 R)^3
  double D0 = 0;         // 2 lambda'0 + 7 delta'0
  double E = 0;          // 2(2 lambda'0 + 3 delta'0 + R) + lambda' + delta0
  double lambda = 0;     // 4 delta0, hull bound
  double seed_lambda = 0;
  FlowContext ctx;
  std::vector<char> in_S;
  std::vector<Subset> Q_v;  // global ids
  std::vector<Subset> Q_e;
  std::vector<int> boundary_edges;

  SemiContinuousFamily family() const;
  std::vector<int> base() const;  // vertices of S
};

FlowSpace flow_space(const TotalSpace& X, const FlowContext& ctx, int u, const Subset& Q_u, double R);
FlowSpace flow_space(const TotalSpace& X, int u, const Subset& Q_u, double R);

struct FlowIncidence {
  MetricGraph gamma;                 // on base vertices, unit edges
  std::vector<std::vector<char>> reach;  // reach[u][v]: v in pi(Fl(X_u))
  bool monotone = true;              // d(u,v) >= d(u,w) for w on [u,v]
  bool separation = true;            // unit balls around interval points separate the ends
  std::vector<int> witness;          // (u, w, v) of the first failure
};
FlowIncidence flow_incidence_graph(const TotalSpace& X, double R);
FlowIncidence flow_incidence_graph(const TotalSpace& X, const FlowContext& ctx, double R);

struct SubdivisionStep {
  int u = 0;        // u_i
  int u2 = 0;       // u_i''
  int u1_next = -1; // u_{i+1}'
  int u_next = -1;  // u_{i+1}, -1 when u_i'' is the far end
  std::vector<int> reach;  // pi(Fl(X_{u_i})) along J
};
struct HorizontalSubdivision {
  std::vector<int> J;
  std::vector<SubdivisionStep> steps;
  int pieces() const { return static_cast<int>(steps.size()); }
};
HorizontalSubdivision horizontal_subdivision(const TotalSpace& X, int u, int v, double R);
HorizontalSubdivision horizontal_subdivision(const TotalSpace& X, const FlowContext& ctx, int u, int v, double R);

}  // namespace coarsetree
