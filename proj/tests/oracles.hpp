#pragma once
// Brute-force reference implementations used only by tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "coarsetree/metric_graph.hpp"

namespace oracle {

using coarsetree::DistanceMatrix;
using coarsetree::MetricGraph;
using coarsetree::Vid;

inline std::vector<std::vector<double>> floyd(const MetricGraph& g) {
  int n = g.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, coarsetree::kInf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) {
    d[e.a][e.b] = std::min(d[e.a][e.b], e.w);
    d[e.b][e.a] = std::min(d[e.b][e.a], e.w);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// every geodesic from u to v as a vertex list
inline std::vector<std::vector<Vid>> all_geodesics(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v) {
  std::vector<std::vector<Vid>> out;
  std::vector<Vid> cur{u};
  std::function<void(Vid, double)> rec = [&](Vid x, double len) {
    if (x == v) {
      out.push_back(cur);
      return;
    }
    for (auto [y, w] : g.neighbors(x))
      if (std::abs(len + w + d(y, v) - d(u, v)) < 1e-9) {
        cur.push_back(y);
        rec(y, len + w);
        cur.pop_back();
      }
  };
  rec(u, 0);
  return out;
}

inline double gp(const DistanceMatrix& d, Vid y, Vid z, Vid x) { return 0.5 * (d(x, y) + d(x, z) - d(y, z)); }

// max over ordered quadruples of min((x.z)_w,(y.z)_w) - (x.y)_w
inline double four_point(const DistanceMatrix& d) {
  int n = d.size();
  double best = 0;
  for (int w = 0; w < n; ++w)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) best = std::max(best, std::min(gp(d, x, z, w), gp(d, y, z, w)) - gp(d, x, y, w));
  return best;
}

inline std::vector<Vid> interval(const DistanceMatrix& d, Vid u, Vid v) {
  std::vector<Vid> out;
  for (Vid w = 0; w < d.size(); ++w)
    if (d(u, w) + d(w, v) <= d(u, v) + 1e-9) out.push_back(w);
  return out;
}

inline double dist_set(const DistanceMatrix& d, Vid p, const std::vector<Vid>& A) {
  double m = coarsetree::kInf;
  for (Vid a : A) m = std::min(m, d(p, a));
  return m;
}

// slim constant over unordered triples using interval sets
inline double slim_intervals(const DistanceMatrix& d) {
  int n = d.size();
  double best = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        auto Ixy = interval(d, x, y), Iyz = interval(d, y, z), Izx = interval(d, z, x);
        std::vector<Vid> other = Iyz;
        other.insert(other.end(), Izx.begin(), Izx.end());
        for (Vid p : Ixy) best = std::max(best, dist_set(d, p, other));
      }
  return best;
}

// slim constant over every choice of three actual geodesics
inline double slim_geodesic_triples(const MetricGraph& g, const DistanceMatrix& d) {
  int n = g.size();
  std::vector<std::vector<std::vector<std::vector<Vid>>>> geo(n, std::vector<std::vector<std::vector<Vid>>>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) geo[x][y] = all_geodesics(g, d, x, y);
  double best = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (const auto& a : geo[x][y])
          for (const auto& b : geo[y][z])
            for (const auto& c : geo[z][x]) {
              std::vector<Vid> other = b;
              other.insert(other.end(), c.begin(), c.end());
              for (Vid p : a) best = std::max(best, dist_set(d, p, other));
            }
  return best;
}

inline MetricGraph random_connected(int n, double p, std::mt19937_64& rng, bool weighted = false) {
  MetricGraph g(n);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 1; i < n; ++i) {
    int j = static_cast<int>(rng() % i);
    g.add_edge(i, j, weighted ? 1 + std::floor(U(rng) * 4) : 1.0);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (U(rng) < p) g.add_edge(i, j, weighted ? 1 + std::floor(U(rng) * 4) : 1.0);
  return g;
}

inline MetricGraph random_tree(int n, std::mt19937_64& rng, bool weighted = true) {
  MetricGraph g(n);
  std::uniform_real_distribution<double> U(0.1, 5);
  for (int i = 1; i < n; ++i) g.add_edge(i, static_cast<int>(rng() % i), weighted ? U(rng) : 1.0);
  return g;
}

}  // namespace oracle
