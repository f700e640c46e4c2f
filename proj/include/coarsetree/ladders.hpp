#pragma once

#include <utility>
#include <vector>

#include "coarsetree/flows.hpp"

namespace coarsetree {

struct Ladder {
  int center = 0;
  double K = 1, D = kInf, E = kInf, lambda = 0;
  std::vector<char> in_S;
  std::vector<int> parent;               // towards the centre inside S, -1 at the centre and outside
  std::vector<int> order;                // BFS order of S from the centre
  std::vector<std::vector<Vid>> seg;     // oriented fibre geodesic L_v, empty outside S
  std::vector<std::vector<int>> up;      // up[w][i]: index in seg[parent[w]] (monotone)
  std::vector<std::vector<int>> down;    // down[w][j]: index in seg[w] for index j of seg[parent[w]]
  std::vector<char> constant;            // per w: one of the two segments is a point
  std::vector<int> boundary_edges;
  double measured_K = 0;
  bool L0 = true, L1 = true, L2 = true, L3 = true;
  FamilyReport family_report;

  std::vector<int> base() const;
  SemiContinuousFamily family() const;
  // (v, i) with seg[v][i] == x, or (-1, -1)
  std::pair<int, int> locate(Vid x) const;
  // the section of the canonical family through seg[v][i], defined over all of S
  QiSection section_through(const TotalSpace& X, int v, int i) const;
  // section indices per base vertex (-1 outside S) for the section through seg[v][i]
  std::vector<int> section_indices(int v, int i) const;
};

Ladder build_ladder(const TotalSpace& X, int u, const std::vector<Vid>& alpha, double K, double D = kInf,
                    double E = kInf);
Ladder build_ladder(const TotalSpace& X, double delta0, int u, const std::vector<Vid>& alpha, double K, double D,
                    double E);

struct LadderPairRow {
  int v = 0;
  double dist = 0;  // d_{X_v}(L1_v, L2_v)
  double hd = 0;    // Hd(bar L1_v, bar L2_v)
  bool cut = false; // separated beyond 7 delta0, descendants dropped
};
struct LadderPairProjection {
  double delta0 = 1;
  double bound = 20;
  double max_hd = 0;
  bool within = true;
  std::vector<int> S_bar;
  std::vector<std::vector<Vid>> bar1, bar2;  // per base vertex
  std::vector<LadderPairRow> rows;
};
LadderPairProjection project_ladder_pair(const TotalSpace& X, const Ladder& A, const Ladder& B, double delta0);

struct CarpetPiece {
  int lo = 0, hi = 0;     // centre indices x_i, x_{i+1} (hi = last index for the final piece)
  int carpet_hi = 0;      // x'_{i+1}
  int narrow = 0;         // narrow end w
  std::vector<int> interval;  // base path u..w
  double narrow_length = 0;
  double cobdd = 0;       // coboundedness in X of the images of the two carpet sections
  Vid near_a = -1, near_b = -1;  // nearest pair between those images
};
struct VerticalSubdivision {
  double C = 0;
  std::vector<int> x;       // subdivision indices on the centre segment
  std::vector<int> xprime;  // predecessors x'_i
  std::vector<CarpetPiece> pieces;
};
VerticalSubdivision vertical_subdivision(const TotalSpace& X, const Ladder& L, double C);

}  // namespace coarsetree
