#pragma once

#include <string>
#include <vector>

#include "coarsetree/coarse.hpp"
#include "coarsetree/hyperbolicity.hpp"
#include "coarsetree/metric_graph.hpp"

namespace coarsetree {

struct PeripheralStructure {
  std::vector<Subset> H;
  // each H_i nonempty, in range and connected in the host
  void validate(const MetricGraph& Y) const;
};

// host vertices keep their ids; column vertex (H_i[k], t) for t >= 1 follows
struct HoroballedSpace {
  MetricGraph graph;
  int host_size = 0;
  int T = 0;
  std::vector<Subset> H;
  std::vector<MetricGraph> H_graph;                  // induced structure of H_i, local ids
  std::vector<std::vector<std::vector<Vid>>> column;  // column[i][k][t]
  struct Loc {
    int ball = -1;  // -1 for host vertices
    int k = 0;
    int t = 0;
  };
  std::vector<Loc> loc;
  std::vector<std::string> warnings;

  Vid at(int i, Vid z, int t) const;  // z a host vertex of H_i
  int level(Vid x) const { return loc[x].t; }
};

HoroballedSpace horoballify(const MetricGraph& Y, const PeripheralStructure& P, int T);

struct HoroballDiagnostic {
  int ball = 0;
  Vid z1 = -1, z2 = -1;
  double dH = 0;         // induced distance in H_i
  double dh = 0;         // distance in Y^h
  double predicted = 0;  // 1 + 2 log dH, or dH when dH <= 1
  double error = 0;      // |dh - predicted|
  bool truncated = false;
};
struct HoroballDiagnostics {
  std::vector<HoroballDiagnostic> rows;
  double max_error = 0;
  double slack = 2;
  bool columns_isometric = true;
  bool truncated = false;
};
// every pair of H_i points (up to max_pairs per ball, in id order)
HoroballDiagnostics horoball_diagnostics(const HoroballedSpace& Yh, const DistanceMatrix& dh,
                                         std::size_t max_pairs = 2000);

struct ElectricSpace {
  MetricGraph graph;
  int host_size = 0;
  std::vector<Vid> apex;
  std::vector<Subset> H;
};

ElectricSpace electrify_space(const MetricGraph& Y, const PeripheralStructure& P);

struct ApexCrossing {
  int ball = 0;
  Vid x = -1, y = -1;  // host vertices on either side of the apex
  int index = 0;       // position of the apex in the path
};
struct ElectrifiedPath {
  std::vector<Vid> vertices;  // ids of Y^l
  std::vector<ApexCrossing> crossings;
  bool tight = true;
};
// beta: a path in Y^h with both ends at level 0
ElectrifiedPath electrify_path(const HoroballedSpace& Yh, const ElectricSpace& Yl, const std::vector<Vid>& beta);

bool is_tight(const ElectricSpace& Yl, const std::vector<Vid>& path);

struct HyperbolizedPath {
  std::vector<Vid> vertices;  // ids of Y^h
  std::vector<int> levels;    // combing level used per crossing
  double qi_constant = 0;     // measured in Y^h
  bool truncated = false;
};
HyperbolizedPath hyperbolize_path(const HoroballedSpace& Yh, const DistanceMatrix& dh, const ElectricSpace& Yl,
                                  const std::vector<Vid>& beta);

struct RelHypReport {
  int T = 0;
  DeltaMode mode = DeltaMode::SlimIntervals;
  double delta_Y = 0;
  double delta_h = 0;
  double delta_l = 0;
  std::vector<std::pair<int, double>> T_sweep;  // (T', delta(Y^h) at T')
  std::vector<double> qc;                       // lambda of H_i in Y
  std::vector<double> horoball_qc;              // lambda of H_i^h in Y^h
  std::vector<std::vector<double>> cobdd;       // pairwise in Y
  bool contraction_ok = true;                   // d^l <= d^h <= d_Y on host vertices
  bool columns_isometric = true;
  double delta_bound = 2;
  bool pass_h = false;  // delta(Y^h) <= delta_bound
  bool pass_l = false;  // delta(Y^l) <= delta_bound
  bool pass = false;
  std::vector<std::string> warnings;
};
RelHypReport relhyp_check(const MetricGraph& Y, const PeripheralStructure& P, int T,
                          DeltaMode mode = DeltaMode::SlimIntervals, double delta_bound = 2, bool sweep = true);

}  // namespace coarsetree
