#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coarsetree/ladders.hpp"

namespace coarsetree {

struct PathSegment {
  bool horizontal = false;
  std::vector<Vid> vertices;  // global ids
};

struct CombingPath {
  Vid from = -1, to = -1;
  std::string provenance;  // carpet | ladder-type1 | ladder-type2 | chain | full | fibre
  std::vector<PathSegment> segments;
  std::vector<std::string> notes;

  std::vector<Vid> vertices() const;
  double length(const MetricGraph& g) const;
};
// connected, correct ends, consecutive segments share endpoints, recorded length equals the vertex-path length
bool verify_combing_path(const MetricGraph& g, const CombingPath& c);

// carpet: a ladder over an interval; t_xy is the vertex closest to the centre with fibre distance <= M
CombingPath carpet_path(const TotalSpace& X, const Ladder& A, Vid x, Vid y, double M);
CombingPath ladder_path(const TotalSpace& X, const Ladder& L, Vid x, Vid y, double M);

struct ChainCheck {
  std::vector<Subset> separators;           // Q_{i,i+1}
  std::vector<std::pair<Vid, Vid>> transit; // (x_i^-, x_i^+) for pieces 1..n-1
  std::vector<double> transit_distance;     // d_{Q_i}(x_i^-, x_i^+)
  std::vector<double> min_distance;         // d_{Q_i}(Q_{i-1,i}, Q_{i,i+1}) by brute force
  std::vector<double> cobdd;                // coboundedness of the two separators in Q_i
  double C = 0;
};
// throws StructuralError when a separator fails to separate, naming a bypass path
ChainCheck check_chain(const MetricGraph& g, const std::vector<Subset>& pieces);
CombingPath chain_amalgam_path(const MetricGraph& g, const std::vector<Subset>& pieces, Vid x, Vid xp);
CombingPath chain_amalgam_path(const MetricGraph& g, const std::vector<Subset>& pieces, const ChainCheck& chk,
                               Vid x, Vid xp);

struct CombParams {
  double K = 1;         // horizontal hop bound
  double C = 1;         // vertical subdivision constant
  double M = 0;         // type-1 threshold
  double R = 1;         // flow radius for the horizontal subdivision
  double ladder_K = 1;  // ladder extension parameter
};

struct FullCombing {
  CombingPath path;
  std::vector<int> J;
  std::vector<Vid> entry, exit;
  bool hop_over_K = false;
  HorizontalSubdivision hsub;
  std::vector<int> vertical_pieces;  // pieces of the vertical subdivision per fibre of J
};
FullCombing full_combing_path(const TotalSpace& X, const FlowContext& ctx, Vid x, Vid y, const CombParams& p);
FullCombing full_combing_path(const TotalSpace& X, Vid x, Vid y, const CombParams& p);

struct SlimnessReport {
  double D0 = 0, D1 = 0, D2 = 0;
  double h = 0, m = 0, k = 0;
  bool m_ok = true;             // 2h(6 + log2(m+2)) <= m
  double measured_delta = 0;    // slim constant of the host
  bool sound = true;            // k >= measured_delta
  std::string mode = "exhaustive";
  std::uint64_t seed = 1;
  std::size_t triples = 0;
  Vid wx = -1, wy = -1, wz = -1, wp = -1;  // D2 witness: p on c(x,y) far from c(x,z) u c(z,y)
};
using PathFamily = std::map<std::pair<Vid, Vid>, std::vector<Vid>>;
// least m with 2h(6 + log2(m+2)) <= m, by bisection
double bowditch_m(double h);
SlimnessReport verify_slim_combing(const MetricGraph& g, const DistanceMatrix& d, const std::vector<Vid>& net,
                                   const PathFamily& paths, double D0, double measured_delta = -1,
                                   std::uint64_t seed = 1, std::size_t exhaustive_limit = 40,
                                   std::size_t samples = 20000);

std::vector<Vid> cut_and_replace(const TotalSpace& X, const std::vector<int>& S, const std::vector<Vid>& c);

struct ConsistencyWitness {
  double Lambda = 0;
  std::vector<Vid> path, replaced;
  double constant = 0;
};
struct ConsistencyReport {
  std::vector<std::pair<double, double>> table;  // Lambda -> theta hat
  std::vector<double> max_constant;              // per Lambda, before taking the max with Lambda
  ConsistencyWitness worst;
  std::uint64_t seed = 1;
  int samples = 0;
  std::string caveat = "desk-scale theta hat need not bound the asymptotic consistency function";
};
ConsistencyReport consistency_probe(const TotalSpace& X, const std::vector<int>& S,
                                    const std::vector<double>& Lambdas, int samples, std::uint64_t seed);

struct SmallCarpetReport {
  int depth = 0;
  bool pass = true;
  bool partial = false;
  int i = -1, j = -1;  // segment indices of the deepest carpet
  int narrow = -1;
  std::size_t pairs = 0;
};
SmallCarpetReport small_carpet_test(const TotalSpace& X, int u, const std::vector<Vid>& alpha, double K, double C,
                                    int R, double M = 0, std::size_t budget = 100000);

}  // namespace coarsetree
