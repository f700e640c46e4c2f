#include "coarsetree/relhyp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "coarsetree/quasigeodesic.hpp"

namespace coarsetree {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

int combing_level(double dH, int T, bool* truncated) {
  if (dH <= 1 + kTol) return 0;
  int t = static_cast<int>(std::ceil(std::log(dH) - 1e-9));
  if (t > T) {
    if (truncated) *truncated = true;
    t = T;
  }
  return std::max(t, 0);
}

}  // namespace

void PeripheralStructure::validate(const MetricGraph& Y) const {
  for (size_t i = 0; i < H.size(); ++i) {
    if (H[i].empty()) throw StructuralError("peripheral subset " + std::to_string(i) + " is empty");
    for (Vid x : H[i])
      if (x < 0 || x >= Y.size())
        throw StructuralError("peripheral subset " + std::to_string(i) + " has an unknown vertex " + std::to_string(x));
    if (!Y.induced(H[i]).connected())
      throw StructuralError("peripheral subset " + std::to_string(i) + " is not connected in the host");
  }
}

Vid HoroballedSpace::at(int i, Vid z, int t) const {
  auto it = std::lower_bound(H[i].begin(), H[i].end(), z);
  if (it == H[i].end() || *it != z) throw PreconditionError("vertex is not in the peripheral subset");
  if (t < 0 || t > T) throw PreconditionError("level outside 0..T");
  return column[i][it - H[i].begin()][t];
}

HoroballedSpace horoballify(const MetricGraph& Y, const PeripheralStructure& P0, int T) {
  if (T < 1) throw PreconditionError("truncation height must be at least 1");
  PeripheralStructure P;
  for (const auto& h : P0.H) P.H.push_back(make_subset(h));
  P.validate(Y);
  HoroballedSpace S;
  S.graph = Y;
  S.host_size = Y.size();
  S.T = T;
  S.H = P.H;
  S.loc.assign(Y.size(), {});
  for (size_t i = 0; i < P.H.size(); ++i) {
    const auto& H = P.H[i];
    S.H_graph.push_back(Y.induced(H));
    const auto& Hg = S.H_graph.back();
    std::vector<std::vector<Vid>> col(H.size());
    for (size_t k = 0; k < H.size(); ++k) {
      col[k].push_back(H[k]);
      for (int t = 1; t <= T; ++t) {
        Vid v = S.graph.add_vertex("h" + std::to_string(i) + ":" + Y.label(H[k]) + ":" + std::to_string(t));
        S.loc.push_back({static_cast<int>(i), static_cast<int>(k), t});
        S.graph.add_edge(col[k].back(), v, 1.0);
        col[k].push_back(v);
      }
    }
    for (int t = 1; t <= T; ++t)
      for (const auto& e : Hg.edges()) S.graph.add_edge(col[e.a][t], col[e.b][t], e.w * std::exp(-t));
    S.column.push_back(std::move(col));
    if (H.size() > 1) {
      double diam = shortest_path_metric(Hg).diameter();
      if (diam > 1 && std::log(diam) > T)
        S.warnings.push_back("ball " + std::to_string(i) + ": log of the peripheral diameter " + fmt(std::log(diam)) +
                             " exceeds T=" + std::to_string(T) + "; combing paths are truncated");
    }
  }
  return S;
}

HoroballDiagnostics horoball_diagnostics(const HoroballedSpace& Yh, const DistanceMatrix& dh, std::size_t max_pairs) {
  HoroballDiagnostics D;
  for (size_t i = 0; i < Yh.H.size(); ++i) {
    const auto& H = Yh.H[i];
    auto dH = shortest_path_metric(Yh.H_graph[i]);
    for (const auto& col : Yh.column[i])
      for (int t = 0; t <= Yh.T; ++t)
        if (std::abs(dh(col[0], col[t]) - t) > kTol) D.columns_isometric = false;
    size_t n = 0;
    for (size_t a = 0; a < H.size() && n < max_pairs; ++a)
      for (size_t b = a + 1; b < H.size() && n < max_pairs; ++b, ++n) {
        HoroballDiagnostic r;
        r.ball = static_cast<int>(i);
        r.z1 = H[a];
        r.z2 = H[b];
        r.dH = dH(a, b);
        r.dh = dh(H[a], H[b]);
        r.predicted = r.dH <= 1 ? r.dH : 1 + 2 * std::log(r.dH);
        r.error = std::abs(r.dh - r.predicted);
        r.truncated = r.dH > 1 && std::log(r.dH) > Yh.T;
        if (r.truncated)
          D.truncated = true;
        else
          D.max_error = std::max(D.max_error, r.error);
        D.rows.push_back(r);
      }
  }
  return D;
}

ElectricSpace electrify_space(const MetricGraph& Y, const PeripheralStructure& P0) {
  PeripheralStructure P;
  for (const auto& h : P0.H) P.H.push_back(make_subset(h));
  P.validate(Y);
  ElectricSpace E;
  E.graph = Y;
  E.host_size = Y.size();
  E.H = P.H;
  for (size_t i = 0; i < P.H.size(); ++i) {
    Vid a = E.graph.add_vertex("apex" + std::to_string(i));
    for (Vid x : P.H[i]) E.graph.add_edge(a, x, 0.5);
    E.apex.push_back(a);
  }
  return E;
}

bool is_tight(const ElectricSpace& Yl, const std::vector<Vid>& path) {
  std::vector<int> seen(Yl.apex.size(), 0);
  for (Vid x : path)
    if (x >= Yl.host_size && ++seen[x - Yl.host_size] > 1) return false;
  return true;
}

ElectrifiedPath electrify_path(const HoroballedSpace& Yh, const ElectricSpace& Yl, const std::vector<Vid>& beta) {
  if (beta.empty()) throw PreconditionError("empty path");
  if (!is_edge_path(Yh.graph, beta)) throw PreconditionError("input is not an edge path of the horoballed space");
  if (Yh.loc[beta.front()].ball >= 0 || Yh.loc[beta.back()].ball >= 0)
    throw PreconditionError("path endpoints must lie at level 0");
  std::vector<Vid> out;
  auto push = [&](Vid v) {
    if (out.empty() || out.back() != v) out.push_back(v);
  };
  for (size_t i = 0; i < beta.size();) {
    Vid v = beta[i];
    if (Yh.loc[v].ball < 0) {
      push(v);
      ++i;
      continue;
    }
    int ball = Yh.loc[v].ball;
    size_t j = i;
    while (Yh.loc[beta[j]].ball >= 0) ++j;
    push(Yl.apex[ball]);
    i = j;
  }
  // each apex once
  for (Vid a : Yl.apex) {
    auto f = std::find(out.begin(), out.end(), a);
    if (f == out.end()) continue;
    auto l = std::find(out.rbegin(), out.rend(), a).base() - 1;
    if (l > f) out.erase(f + 1, l + 1);
  }
  // level-0 runs inside one peripheral become its geodesics
  std::vector<Vid> sm;
  for (size_t i = 0; i < out.size();) {
    size_t best_j = i;
    int best_ball = -1;
    if (out[i] < Yl.host_size)
      for (size_t b = 0; b < Yl.H.size(); ++b) {
        size_t j = i;
        while (j + 1 < out.size() && out[j + 1] < Yl.host_size && contains(Yl.H[b], out[j + 1])) ++j;
        if (contains(Yl.H[b], out[i]) && j > best_j) {
          best_j = j;
          best_ball = static_cast<int>(b);
        }
      }
    if (best_ball >= 0 && best_j >= i + 2) {
      const auto& H = Yl.H[best_ball];
      const auto& Hg = Yh.H_graph[best_ball];
      auto dH = shortest_path_metric(Hg);
      auto li = std::lower_bound(H.begin(), H.end(), out[i]) - H.begin();
      auto lj = std::lower_bound(H.begin(), H.end(), out[best_j]) - H.begin();
      std::vector<Vid> run(out.begin() + i, out.begin() + best_j + 1);
      auto geo = canonical_geodesic(Hg, dH, li, lj);
      if (geo.length < path_length(Yl.graph, run) - kTol) {
        for (Vid x : geo.vertices)
          if (sm.empty() || sm.back() != H[x]) sm.push_back(H[x]);
        i = best_j + 1;
        continue;
      }
    }
    if (sm.empty() || sm.back() != out[i]) sm.push_back(out[i]);
    ++i;
  }
  ElectrifiedPath r;
  r.vertices = std::move(sm);
  for (size_t p = 0; p < r.vertices.size(); ++p)
    if (r.vertices[p] >= Yl.host_size)
      r.crossings.push_back({r.vertices[p] - Yl.host_size, r.vertices[p - 1], r.vertices[p + 1], static_cast<int>(p)});
  r.tight = is_tight(Yl, r.vertices);
  return r;
}

HyperbolizedPath hyperbolize_path(const HoroballedSpace& Yh, const DistanceMatrix& dh, const ElectricSpace& Yl,
                                  const std::vector<Vid>& beta) {
  if (beta.empty()) throw PreconditionError("empty path");
  std::vector<int> seen(Yl.apex.size(), 0);
  for (Vid x : beta)
    if (x >= Yl.host_size && ++seen[x - Yl.host_size] > 1)
      throw PreconditionError("path is not tight: apex " + Yl.graph.label(x) + " is visited twice");
  if (!is_edge_path(Yl.graph, beta)) throw PreconditionError("input is not an edge path of the electric space");
  if (beta.front() >= Yl.host_size || beta.back() >= Yl.host_size)
    throw PreconditionError("path endpoints must be host vertices");
  std::map<int, DistanceMatrix> metric;
  HyperbolizedPath r;
  auto push = [&](Vid v) {
    if (r.vertices.empty() || r.vertices.back() != v) r.vertices.push_back(v);
  };
  for (size_t p = 0; p < beta.size(); ++p) {
    Vid v = beta[p];
    if (v < Yl.host_size) {
      push(v);
      continue;
    }
    int i = v - Yl.host_size;
    Vid x = beta[p - 1], y = beta[p + 1];
    if (!metric.count(i)) metric[i] = shortest_path_metric(Yh.H_graph[i]);
    const auto& dH = metric[i];
    const auto& H = Yh.H[i];
    Vid lx = std::lower_bound(H.begin(), H.end(), x) - H.begin();
    Vid ly = std::lower_bound(H.begin(), H.end(), y) - H.begin();
    int t = combing_level(dH(lx, ly), Yh.T, &r.truncated);
    r.levels.push_back(t);
    for (int s = 0; s <= t; ++s) push(Yh.column[i][lx][s]);
    for (Vid k : canonical_geodesic(Yh.H_graph[i], dH, lx, ly).vertices) push(Yh.column[i][k][t]);
    for (int s = t; s >= 0; --s) push(Yh.column[i][ly][s]);
  }
  r.qi_constant = quasigeodesic_constant(Yh.graph, dh, r.vertices);
  return r;
}

RelHypReport relhyp_check(const MetricGraph& Y, const PeripheralStructure& P0, int T, DeltaMode mode,
                          double delta_bound, bool sweep) {
  PeripheralStructure P;
  for (const auto& h : P0.H) P.H.push_back(make_subset(h));
  RelHypReport r;
  r.T = T;
  r.mode = mode;
  r.delta_bound = delta_bound;
  auto dY = shortest_path_metric(Y);
  auto Yh = horoballify(Y, P, T);
  auto dh = shortest_path_metric(Yh.graph);
  auto Yl = electrify_space(Y, P);
  auto dl = shortest_path_metric(Yl.graph);
  r.warnings = Yh.warnings;
  r.delta_Y = delta_hyperbolicity(Y, dY, mode).delta;
  r.delta_h = delta_hyperbolicity(Yh.graph, dh, mode).delta;
  r.delta_l = delta_hyperbolicity(Yl.graph, dl, mode).delta;
  if (sweep)
    for (int s = 1; s <= T; ++s) {
      if (s == T) {
        r.T_sweep.push_back({s, r.delta_h});
        continue;
      }
      auto Ys = horoballify(Y, P, s);
      r.T_sweep.push_back({s, delta_hyperbolicity(Ys.graph, shortest_path_metric(Ys.graph), mode).delta});
    }
  for (Vid x = 0; x < Y.size(); ++x)
    for (Vid y = 0; y < Y.size(); ++y)
      if (dl(x, y) > dh(x, y) + kTol || dh(x, y) > dY(x, y) + kTol) r.contraction_ok = false;
  r.columns_isometric = horoball_diagnostics(Yh, dh, 0).columns_isometric;
  size_t n = P.H.size();
  r.cobdd.assign(n, std::vector<double>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    r.qc.push_back(quasiconvexity_constant(dY, P.H[i]).lambda);
    Subset ball;
    for (const auto& col : Yh.column[i]) ball.insert(ball.end(), col.begin(), col.end());
    r.horoball_qc.push_back(quasiconvexity_constant(dh, make_subset(ball)).lambda);
    for (size_t j = i + 1; j < n; ++j) r.cobdd[i][j] = r.cobdd[j][i] = coboundedness(Y, dY, P.H[i], P.H[j]).C;
  }
  r.pass_h = r.delta_h <= delta_bound + kTol;
  r.pass_l = r.delta_l <= delta_bound + kTol;
  r.pass = r.pass_h && r.contraction_ok && r.columns_isometric;
  return r;
}

}  // namespace coarsetree
