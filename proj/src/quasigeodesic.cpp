#include "coarsetree/quasigeodesic.hpp"

#include <algorithm>
#include <cmath>

namespace coarsetree {

double quasigeodesic_constant(const MetricGraph& g, const DistanceMatrix& d, const std::vector<Vid>& path) {
  size_t n = path.size();
  std::vector<double> s(n, 0.0);
  for (size_t i = 1; i < n; ++i)
    s[i] = s[i - 1] + (path[i] == path[i - 1] ? 0.0 : edge_weight(g, path[i - 1], path[i]));
  double k = 1.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      double ds = s[j] - s[i];
      double dd = d(path[i], path[j]);
      // root of k^2 + dd k - ds = 0
      if (ds > k * dd + k * k + kTol) k = 0.5 * (-dd + std::sqrt(dd * dd + 4 * ds));
    }
  return k;
}

std::vector<Vid> random_geodesic(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v, Rng& rng) {
  std::vector<Vid> p{u};
  Vid cur = u;
  std::vector<Vid> opts;
  while (cur != v) {
    opts.clear();
    for (auto [y, w] : g.neighbors(cur))
      if (std::abs(w + d(y, v) - d(cur, v)) <= kTol) opts.push_back(y);
    if (opts.empty()) throw StructuralError("distance matrix does not match graph");
    cur = opts[draw(rng, opts.size())];
    p.push_back(cur);
  }
  return p;
}

std::vector<Vid> sample_quasigeodesic(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v, double k,
                                      Rng& rng, int detours, double reach) {
  std::vector<Vid> best = random_geodesic(g, d, u, v, rng);
  for (int attempt = 0; attempt < 8; ++attempt) {
    int nd = 1 + static_cast<int>(draw(rng, std::max(1, detours)));
    auto base = random_geodesic(g, d, u, v, rng);
    // waypoints near base points, in order along the base
    std::vector<size_t> idx;
    for (int i = 0; i < nd; ++i) idx.push_back(draw(rng, base.size()));
    std::sort(idx.begin(), idx.end());
    std::vector<Vid> way{u};
    for (size_t i : idx) {
      Vid c = base[i];
      std::vector<Vid> near;
      for (Vid x = 0; x < g.size(); ++x)
        if (d(c, x) <= reach + kTol) near.push_back(x);
      way.push_back(near[draw(rng, near.size())]);
    }
    way.push_back(v);
    std::vector<Vid> path{u};
    for (size_t i = 1; i < way.size(); ++i) {
      auto seg = random_geodesic(g, d, way[i - 1], way[i], rng);
      path.insert(path.end(), seg.begin() + 1, seg.end());
    }
    if (quasigeodesic_constant(g, d, path) <= k + kTol && path.size() > best.size()) best = path;
  }
  return best;
}

}  // namespace coarsetree
