#include "coarsetree/ladders.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

namespace coarsetree {

namespace {

// strictly increasing g: [0,p) -> [0,q) with g(0)=0, g(p-1)=q-1 minimising sum cost(i, g(i)); p <= q, p >= 2
std::vector<int> pinned_alignment(int p, int q, const std::function<double(int, int)>& cost) {
  std::vector<std::vector<double>> dp(p, std::vector<double>(q, kInf));
  std::vector<std::vector<int>> from(p, std::vector<int>(q, -1));
  dp[0][0] = cost(0, 0);
  for (int i = 1; i < p; ++i) {
    double best = kInf;
    int arg = -1;
    for (int j = 1; j < q; ++j) {
      if (dp[i - 1][j - 1] < best - kTol) {
        best = dp[i - 1][j - 1];
        arg = j - 1;
      }
      if (arg >= 0) {
        dp[i][j] = best + cost(i, j);
        from[i][j] = arg;
      }
    }
  }
  std::vector<int> g(p);
  g[p - 1] = q - 1;
  for (int i = p - 1; i > 0; --i) g[i - 1] = from[i][g[i]];
  return g;
}

double fibre_set_distance(const Piece& P, const std::vector<Vid>& A, const std::vector<Vid>& B) {
  double best = kInf;
  for (Vid a : A)
    for (Vid b : B) best = std::min(best, P.dist(a, b));
  return best;
}

}  // namespace

std::vector<int> Ladder::base() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(in_S.size()); ++v)
    if (in_S[v]) out.push_back(v);
  return out;
}

SemiContinuousFamily Ladder::family() const {
  SemiContinuousFamily f;
  f.center = center;
  f.in_S = in_S;
  for (const auto& s : seg) f.Y_v.push_back(make_subset(s));
  f.K = K;
  f.D = D;
  f.E = E;
  f.lambda = lambda;
  return f;
}

std::pair<int, int> Ladder::locate(Vid x) const {
  for (int v : order)
    for (int i = 0; i < static_cast<int>(seg[v].size()); ++i)
      if (seg[v][i] == x) return {v, i};
  return {-1, -1};
}

std::vector<int> Ladder::section_indices(int v, int i) const {
  std::vector<int> idx(in_S.size(), -1);
  idx[v] = i;
  for (int w = v; parent[w] >= 0; w = parent[w]) idx[parent[w]] = up[w][idx[w]];
  for (int w : order)
    if (idx[w] < 0) idx[w] = down[w][idx[parent[w]]];
  return idx;
}

QiSection Ladder::section_through(const TotalSpace& X, int v, int i) const {
  auto idx = section_indices(v, i);
  QiSection s;
  s.K = K;
  s.at.assign(in_S.size(), -1);
  for (int w : order) {
    s.at[w] = seg[w][idx[w]];
    s.domain.push_back(w);
  }
  std::sort(s.domain.begin(), s.domain.end());
  s.measured_K = section_jump(X, s);
  return s;
}

Ladder build_ladder(const TotalSpace& X, int u, const std::vector<Vid>& alpha, double K, double D, double E) {
  double delta0 = 0;
  for (int v = 0; v < X.tree().size(); ++v) {
    const auto& P = X.fiber_piece(v);
    delta0 = std::max(delta0, delta_slim(P.graph, P.d, DeltaMode::SlimIntervals).delta);
  }
  return build_ladder(X, delta0, u, alpha, K, D, E);
}

Ladder build_ladder(const TotalSpace& X, double delta0, int u, const std::vector<Vid>& alpha, double K, double D,
                    double E) {
  const auto& T = X.tree();
  if (u < 0 || u >= T.size()) throw PreconditionError("ladder centre is not a base vertex");
  if (alpha.empty()) throw PreconditionError("empty ladder segment");
  const auto& Pu = X.fiber_piece(u);
  std::vector<Vid> loc;
  for (Vid x : alpha) {
    if (x < 0 || x >= X.size() || X.pi(x).is_edge || X.pi(x).id != u)
      throw PreconditionError("ladder segment leaves the centre fibre");
    loc.push_back(Pu.local(x));
  }
  if (!is_edge_path(Pu.graph, loc) || std::abs(path_length(Pu.graph, loc) - Pu.d(loc.front(), loc.back())) > kTol)
    throw PreconditionError("ladder segment is not a fibre geodesic");
  Ladder L;
  L.center = u;
  L.K = K;
  L.D = D;
  L.E = E;
  L.lambda = delta0;
  int n = T.size();
  L.in_S.assign(n, 0);
  L.parent.assign(n, -1);
  L.seg.assign(n, {});
  L.up.assign(n, {});
  L.down.assign(n, {});
  L.constant.assign(n, 0);
  L.in_S[u] = 1;
  L.seg[u] = alpha;
  auto [par, order] = T.rooted(u);
  for (int w : order) {
    int v = par[w];
    if (v < 0 || !L.in_S[v]) continue;
    int e = T.edge_between(v, w);
    const auto& U = X.union_piece(e);
    auto Xw = X.fiber(w);
    const auto& sv = L.seg[v];
    auto nearest = [&](Vid x) {
      Vid best = Xw.front();
      for (Vid y : Xw)
        if (U.dist(x, y) < U.dist(x, best) - kTol) best = y;
      return best;
    };
    int f = -1, l = -1;
    for (int i = 0; i < static_cast<int>(sv.size()); ++i)
      if (U.dist(sv[i], nearest(sv[i])) <= K + kTol) {
        if (f < 0) f = i;
        l = i;
      }
    if (f < 0) {
      L.boundary_edges.push_back(e);
      continue;
    }
    const auto& Pw = X.fiber_piece(w);
    auto g = canonical_geodesic(Pw.graph, Pw.d, Pw.local(nearest(sv[f])), Pw.local(nearest(sv[l])));
    std::vector<Vid> sw;
    for (Vid x : g.vertices) sw.push_back(Pw.global[x]);
    int m = static_cast<int>(sw.size()), q = l - f + 1, nv = static_cast<int>(sv.size());
    auto cost = [&](int i, int j) { return U.dist(sw[i], sv[f + j]); };
    std::vector<int> upm(m), downm(nv);
    if (m == 1 || q == 1) {
      L.constant[w] = 1;
      if (m == 1) {
        int bj = 0;
        for (int j = 1; j < q; ++j)
          if (cost(0, j) < cost(0, bj) - kTol) bj = j;
        upm[0] = f + bj;
        std::fill(downm.begin(), downm.end(), 0);
      } else {
        std::fill(upm.begin(), upm.end(), f);
        int bi = 0;
        for (int i = 1; i < m; ++i)
          if (cost(i, 0) < cost(bi, 0) - kTol) bi = i;
        std::fill(downm.begin(), downm.end(), bi);
      }
    } else if (m <= q) {
      auto gmap = pinned_alignment(m, q, cost);
      for (int i = 0; i < m; ++i) upm[i] = f + gmap[i];
      for (int j = 0; j < nv; ++j) {
        int pick = m - 1;
        for (int i = 0; i < m; ++i)
          if (upm[i] >= j) {
            pick = i;
            break;
          }
        downm[j] = pick;
      }
    } else {
      auto h = pinned_alignment(q, m, [&](int j, int i) { return cost(i, j); });
      for (int j = 0; j < nv; ++j) downm[j] = j < f ? 0 : (j > l ? m - 1 : h[j - f]);
      for (int i = 0; i < m; ++i) {
        int last = 0;
        for (int j = 0; j < q; ++j)
          if (h[j] <= i) last = j;
        upm[i] = f + last;
      }
    }
    L.in_S[w] = 1;
    L.parent[w] = v;
    L.seg[w] = std::move(sw);
    L.up[w] = std::move(upm);
    L.down[w] = std::move(downm);
  }
  for (int w : order)
    if (L.in_S[w]) L.order.push_back(w);
  // measured jump of the transfer maps, axioms
  for (int w : L.order) {
    int v = L.parent[w];
    if (v < 0) continue;
    const auto& U = X.union_piece(T.edge_between(v, w));
    const auto& sw = L.seg[w];
    const auto& sv = L.seg[v];
    const auto& upm = L.up[w];
    const auto& downm = L.down[w];
    for (size_t i = 0; i < sw.size(); ++i) L.measured_K = std::max(L.measured_K, U.dist(sw[i], sv[upm[i]]));
    for (size_t j = 0; j < sv.size(); ++j) L.measured_K = std::max(L.measured_K, U.dist(sv[j], sw[downm[j]]));
    for (size_t i = 1; i < upm.size(); ++i)
      if (upm[i] < upm[i - 1]) L.L0 = false;
    for (size_t j = 1; j < downm.size(); ++j)
      if (downm[j] < downm[j - 1]) L.L0 = false;
    if (!L.constant[w]) {
      // the map from the shorter segment is strictly increasing
      bool inj = true;
      if (sw.size() <= sv.size()) {
        for (size_t i = 1; i < upm.size(); ++i) inj = inj && upm[i] > upm[i - 1];
      } else {
        std::vector<int> img;
        for (size_t j = 0; j < sv.size(); ++j) img.push_back(downm[j]);
        img.erase(std::unique(img.begin(), img.end()), img.end());
        inj = img.front() == 0 && img.back() == static_cast<int>(sw.size()) - 1;
      }
      if (!inj) L.L2 = false;
    }
  }
  for (int w : L.order)
    for (int i = 0; i < static_cast<int>(L.seg[w].size()); ++i) {
      auto s = L.section_through(X, w, i);
      if (s.at[w] != L.seg[w][i] || s.measured_K > L.measured_K + kTol) L.L1 = false;
    }
  L.family_report = verify_semicontinuous_family(X, L.family());
  L.L3 = L.family_report.pass;
  return L;
}

LadderPairProjection project_ladder_pair(const TotalSpace& X, const Ladder& A, const Ladder& B, double delta0) {
  if (A.center != B.center) throw PreconditionError("ladders do not share a centre");
  const auto& T = X.tree();
  LadderPairProjection R;
  R.delta0 = std::max(1.0, delta0);
  R.bound = 20 * R.delta0;
  R.bar1.assign(T.size(), {});
  R.bar2.assign(T.size(), {});
  auto [parent, order] = T.rooted(A.center);
  std::vector<char> open(T.size(), 0);
  for (int v : order) {
    if (!A.in_S[v] || !B.in_S[v]) continue;
    if (parent[v] >= 0 && !open[parent[v]]) continue;
    const auto& P = X.fiber_piece(v);
    const auto& a = A.seg[v];
    const auto& b = B.seg[v];
    // modified projection: the subsegment spanning the nearest-point image
    auto span = [&](const std::vector<Vid>& onto, const std::vector<Vid>& from) {
      int lo = static_cast<int>(onto.size()), hi = -1;
      for (Vid x : from) {
        int best = 0;
        for (int i = 1; i < static_cast<int>(onto.size()); ++i)
          if (P.dist(x, onto[i]) < P.dist(x, onto[best]) - kTol) best = i;
        lo = std::min(lo, best);
        hi = std::max(hi, best);
      }
      return std::vector<Vid>(onto.begin() + lo, onto.begin() + hi + 1);
    };
    R.bar1[v] = span(a, b);
    R.bar2[v] = span(b, a);
    LadderPairRow row;
    row.v = v;
    row.dist = fibre_set_distance(P, a, b);
    Subset s1, s2;
    for (Vid x : R.bar1[v]) s1.push_back(P.local(x));
    for (Vid x : R.bar2[v]) s2.push_back(P.local(x));
    row.hd = hausdorff_distance(P.d, make_subset(s1), make_subset(s2));
    row.cut = row.dist > 7 * R.delta0 + kTol;
    open[v] = !row.cut;
    R.S_bar.push_back(v);
    R.max_hd = std::max(R.max_hd, row.hd);
    R.rows.push_back(row);
  }
  std::sort(R.S_bar.begin(), R.S_bar.end());
  R.within = R.max_hd <= R.bound + kTol;
  return R;
}

VerticalSubdivision vertical_subdivision(const TotalSpace& X, const Ladder& L, double C) {
  if (C < 0) throw PreconditionError("C must be nonnegative");
  const auto& T = X.tree();
  int u = L.center;
  int n = static_cast<int>(L.seg[u].size());
  std::vector<std::vector<int>> sec(n);
  for (int i = 0; i < n; ++i) sec[i] = L.section_indices(u, i);
  auto fd = [&](int i, int j, int b) {
    return X.fiber_piece(b).dist(L.seg[b][sec[i][b]], L.seg[b][sec[j][b]]);
  };
  auto image = [&](int i) {
    std::vector<Vid> out;
    for (int b : L.order) out.push_back(L.seg[b][sec[i][b]]);
    return make_subset(out);
  };
  const auto& d = X.distances();
  auto carpet = [&](int lo, int hi, int chi) {
    CarpetPiece p;
    p.lo = lo;
    p.hi = hi;
    p.carpet_hi = chi;
    int best = -1;
    double bd = kInf;
    for (int b : L.order) {
      if (fd(lo, chi, b) > C + kTol) continue;
      double db = T.distance(u, b);
      if (db < bd) {
        bd = db;
        best = b;
      }
    }
    p.narrow = best;
    p.interval = T.path(u, best);
    std::reverse(p.interval.begin(), p.interval.end());
    p.narrow_length = fd(lo, chi, best);
    auto A = image(lo), B = image(chi);
    p.cobdd = coboundedness(X.graph(), d, A, B).C;
    double m = kInf;
    for (Vid a : A)
      for (Vid b : B)
        if (d(a, b) < m - kTol) {
          m = d(a, b);
          p.near_a = a;
          p.near_b = b;
        }
    return p;
  };
  VerticalSubdivision V;
  V.C = C;
  int xi = 0;
  V.x.push_back(0);
  while (true) {
    int next = -1;
    for (int x = xi + 1; x < n && next < 0; ++x) {
      bool all = true;
      for (int b : L.order)
        if (fd(x, xi, b) <= C + kTol) {
          all = false;
          break;
        }
      if (all) next = x;
    }
    if (next < 0) {
      V.pieces.push_back(carpet(xi, n - 1, n - 1));
      break;
    }
    V.x.push_back(next);
    V.xprime.push_back(next - 1);
    V.pieces.push_back(carpet(xi, next, next - 1));
    xi = next;
  }
  return V;
}

}  // namespace coarsetree
