#include "coarsetree/metric_graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace coarsetree {

MetricGraph::MetricGraph(int n) : adj_(n), labels_(n) {
  for (int i = 0; i < n; ++i) labels_[i] = std::to_string(i);
}

Vid MetricGraph::add_vertex(std::string label) {
  adj_.emplace_back();
  if (label.empty()) label = std::to_string(adj_.size() - 1);
  labels_.push_back(std::move(label));
  return static_cast<Vid>(adj_.size() - 1);
}

void MetricGraph::add_edge(Vid a, Vid b, double w) {
  if (a < 0 || b < 0 || a >= size() || b >= size())
    throw StructuralError("edge endpoint out of range");
  if (a == b) throw StructuralError("loop at vertex " + labels_[a]);
  if (!(w > 0.0) || !std::isfinite(w)) throw StructuralError("edge weight must be positive");
  edges_.push_back({a, b, w});
  auto upd = [&](Vid x, Vid y) {
    for (auto& [n, wt] : adj_[x])
      if (n == y) {
        wt = std::min(wt, w);
        return;
      }
    adj_[x].push_back({y, w});
    std::sort(adj_[x].begin(), adj_[x].end());
  };
  upd(a, b);
  upd(b, a);
}

Vid MetricGraph::find_label(const std::string& s) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == s) return i;
  return -1;
}

double MetricGraph::max_edge_weight() const {
  double m = 0.0;
  for (const auto& e : edges_) m = std::max(m, e.w);
  return m;
}

std::vector<std::vector<Vid>> MetricGraph::components() const {
  std::vector<int> comp(size(), -1);
  std::vector<std::vector<Vid>> out;
  for (Vid s = 0; s < size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vid> cur{s}, stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      Vid x = stack.back();
      stack.pop_back();
      for (auto [y, w] : adj_[x])
        if (comp[y] < 0) {
          comp[y] = comp[s];
          cur.push_back(y);
          stack.push_back(y);
        }
    }
    std::sort(cur.begin(), cur.end());
    out.push_back(std::move(cur));
  }
  return out;
}

MetricGraph MetricGraph::induced(const std::vector<Vid>& vs) const {
  MetricGraph h;
  std::vector<Vid> loc(size(), -1);
  for (Vid v : vs) loc[v] = h.add_vertex(labels_[v]);
  for (const auto& e : edges_)
    if (loc[e.a] >= 0 && loc[e.b] >= 0) h.add_edge(loc[e.a], loc[e.b], e.w);
  return h;
}

double DistanceMatrix::diameter() const {
  double m = 0.0;
  for (double x : d_) m = std::max(m, x);
  return m;
}

void DistanceMatrix::validate(double tol) const {
  for (int i = 0; i < n_; ++i) {
    if (std::abs((*this)(i, i)) > tol) throw StructuralError("nonzero diagonal");
    for (int j = 0; j < n_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) throw StructuralError("asymmetric distances");
      if (i != j && !((*this)(i, j) > tol)) throw StructuralError("distinct vertices at distance zero");
    }
  }
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i) {
      const double* rk = row(k);
      double dik = (*this)(i, k);
      const double* ri = row(i);
      for (int j = 0; j < n_; ++j)
        if (ri[j] > dik + rk[j] + tol) throw StructuralError("triangle inequality fails");
    }
}

std::vector<double> dijkstra_multi(const MetricGraph& g, const std::vector<Vid>& srcs) {
  std::vector<double> dist(g.size(), kInf);
  using Item = std::pair<double, Vid>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (Vid s : srcs) {
    dist[s] = 0.0;
    pq.push({0.0, s});
  }
  while (!pq.empty()) {
    auto [dx, x] = pq.top();
    pq.pop();
    if (dx > dist[x]) continue;
    for (auto [y, w] : g.neighbors(x)) {
      double nd = dx + w;
      if (nd < dist[y]) {
        dist[y] = nd;
        pq.push({nd, y});
      }
    }
  }
  return dist;
}

std::vector<double> dijkstra(const MetricGraph& g, Vid src) { return dijkstra_multi(g, {src}); }

DistanceMatrix shortest_path_metric(const MetricGraph& g, bool validate) {
  int n = g.size();
  if (n == 0) throw StructuralError("empty graph");
  auto comps = g.components();
  if (comps.size() > 1) {
    std::ostringstream os;
    os << "graph is disconnected; component not containing vertex " << g.label(0) << ": {";
    for (size_t i = 0; i < comps[1].size() && i < 8; ++i) os << (i ? "," : "") << g.label(comps[1][i]);
    if (comps[1].size() > 8) os << ",...";
    os << "}";
    throw StructuralError(os.str());
  }
  DistanceMatrix d(n);
  for (Vid s = 0; s < n; ++s) {
    auto row = dijkstra(g, s);
    for (Vid t = 0; t < n; ++t) d.at(s, t) = row[t];
  }
  // symmetrize away rounding drift
  for (Vid i = 0; i < n; ++i)
    for (Vid j = i + 1; j < n; ++j) {
      double m = std::min(d(i, j), d(j, i));
      d.at(i, j) = d.at(j, i) = m;
    }
  if (validate) d.validate();
  return d;
}

GeodesicPath canonical_geodesic(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v) {
  if (u < 0 || v < 0 || u >= g.size() || v >= g.size()) throw PreconditionError("vertex out of range");
  GeodesicPath p;
  p.vertices.push_back(u);
  Vid cur = u;
  while (cur != v) {
    Vid next = -1;
    for (auto [y, w] : g.neighbors(cur))  // sorted by id
      if (std::abs(w + d(y, v) - d(cur, v)) <= kTol) {
        next = y;
        break;
      }
    if (next < 0) throw StructuralError("distance matrix does not match graph");
    p.vertices.push_back(next);
    cur = next;
  }
  p.length = d(u, v);
  return p;
}

std::vector<Vid> interval_set(const DistanceMatrix& d, Vid u, Vid v, double tol) {
  std::vector<Vid> out;
  double duv = d(u, v);
  for (Vid w = 0; w < d.size(); ++w)
    if (d(u, w) + d(w, v) <= duv + tol) out.push_back(w);
  std::stable_sort(out.begin(), out.end(), [&](Vid a, Vid b) { return d(u, a) < d(u, b) - tol; });
  return out;
}

double edge_weight(const MetricGraph& g, Vid a, Vid b) {
  for (auto [y, w] : g.neighbors(a))
    if (y == b) return w;
  return kInf;
}

bool is_edge_path(const MetricGraph& g, const std::vector<Vid>& path) {
  for (size_t i = 1; i < path.size(); ++i)
    if (path[i] != path[i - 1] && edge_weight(g, path[i - 1], path[i]) == kInf) return false;
  return !path.empty();
}

double path_length(const MetricGraph& g, const std::vector<Vid>& path) {
  double s = 0.0;
  for (size_t i = 1; i < path.size(); ++i)
    if (path[i] != path[i - 1]) s += edge_weight(g, path[i - 1], path[i]);
  return s;
}

MetricGraph path_graph(int n, double w) {
  MetricGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, w);
  return g;
}

MetricGraph cycle_graph(int n, double w) {
  MetricGraph g = path_graph(n, w);
  if (n >= 3) g.add_edge(n - 1, 0, w);
  return g;
}

MetricGraph grid_graph(int rows, int cols) {
  MetricGraph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      g.set_label(v, std::to_string(r) + "," + std::to_string(c));
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  return g;
}

}  // namespace coarsetree
