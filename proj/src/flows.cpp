#include "coarsetree/flows.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace coarsetree {

namespace {

// BFS order and parents of the subtree D rooted at r
std::pair<std::vector<int>, std::vector<int>> rooted_within(const BaseTree& T, const std::vector<char>& in, int r) {
  std::vector<int> parent(T.size(), -2), order;
  std::deque<int> q{r};
  parent[r] = -1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    order.push_back(v);
    std::vector<int> nb;
    for (auto [w, e] : T.incident(v))
      if (in[w] && parent[w] == -2) nb.push_back(w);
    std::sort(nb.begin(), nb.end());
    for (int w : nb) {
      parent[w] = v;
      q.push_back(w);
    }
  }
  return {parent, order};
}

Subset local_of(const Piece& P, const Subset& A) {
  Subset out;
  for (Vid g : A) out.push_back(P.local(g));
  return make_subset(out);
}

Subset global_of(const Piece& P, const Subset& A) {
  Subset out;
  for (Vid l : A) out.push_back(P.global[l]);
  return make_subset(out);
}

}  // namespace

double section_jump(const TotalSpace& X, const QiSection& s) {
  double j = 0;
  const auto& T = X.tree();
  for (int e = 0; e < T.edge_count(); ++e) {
    auto [v, w] = T.edge(e);
    if (s.contains(v) && s.contains(w)) j = std::max(j, X.union_piece(e).dist(s.at[v], s.at[w]));
  }
  return j;
}

std::optional<QiSection> find_qi_section(const TotalSpace& X, const std::vector<int>& domain0, double K, Vid start,
                                         Vid end, bool maximal) {
  const auto& T = X.tree();
  std::vector<int> domain = domain0;
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  if (!T.is_subtree(domain)) throw PreconditionError("section domain is not a subtree");
  if (start < 0 || start >= X.size() || X.pi(start).is_edge) throw PreconditionError("start is not a fibre vertex");
  int r = X.pi(start).id;
  std::vector<char> in(T.size(), 0);
  for (int v : domain) in[v] = 1;
  if (!in[r]) throw PreconditionError("start lies over a vertex outside the domain");
  int pin = -1;
  if (end >= 0) {
    if (end >= X.size() || X.pi(end).is_edge || !in[X.pi(end).id])
      throw PreconditionError("end is not a fibre vertex over the domain");
    pin = X.pi(end).id;
  }
  auto [parent, order] = rooted_within(T, in, r);
  std::vector<std::vector<char>> feas(T.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    int n = X.tos().vertex_spaces[v].size();
    feas[v].assign(n, 1);
    if (v == pin) {
      std::fill(feas[v].begin(), feas[v].end(), 0);
      feas[v][X.local_index(end)] = 1;
    }
    if (v == r) {
      for (int x = 0; x < n; ++x)
        if (X.fiber_vertex(v, x) != start) feas[v][x] = 0;
    }
    for (auto [c, e] : T.incident(v)) {
      if (!in[c] || parent[c] != v) continue;
      const auto& U = X.union_piece(e);
      int m = X.tos().vertex_spaces[c].size();
      for (int x = 0; x < n; ++x) {
        if (!feas[v][x]) continue;
        bool ok = false;
        for (int y = 0; y < m && !ok; ++y)
          ok = feas[c][y] && U.dist(X.fiber_vertex(v, x), X.fiber_vertex(c, y)) <= K + kTol;
        if (!ok) feas[v][x] = 0;
      }
    }
  }
  if (!feas[r][X.local_index(start)]) return std::nullopt;
  QiSection s;
  s.K = K;
  s.at.assign(T.size(), -1);
  s.at[r] = start;
  auto choose = [&](int v, int c, const std::vector<char>* mask) -> Vid {
    const auto& U = X.union_piece(T.edge_between(v, c));
    int m = X.tos().vertex_spaces[c].size();
    for (int y = 0; y < m; ++y) {
      if (mask && !(*mask)[y]) continue;
      if (U.dist(s.at[v], X.fiber_vertex(c, y)) <= K + kTol) return X.fiber_vertex(c, y);
    }
    return -1;
  };
  for (int v : order)
    if (parent[v] >= 0) s.at[v] = choose(parent[v], v, &feas[v]);
  if (maximal) {
    std::deque<int> q(order.begin(), order.end());
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (auto [w, e] : T.incident(v)) {
        if (s.at[w] >= 0) continue;
        Vid y = choose(v, w, nullptr);
        if (y >= 0) {
          s.at[w] = y;
          q.push_back(w);
        }
      }
    }
  }
  for (int v = 0; v < T.size(); ++v)
    if (s.at[v] >= 0) s.domain.push_back(v);
  s.measured_K = section_jump(X, s);
  return s;
}

FlowContext flow_context(const TotalSpace& X) {
  FlowContext c;
  for (int v = 0; v < X.tree().size(); ++v) {
    const auto& P = X.fiber_piece(v);
    c.delta0 = std::max(c.delta0, delta_slim(P.graph, P.d, DeltaMode::SlimIntervals).delta);
  }
  for (int e = 0; e < X.tree().edge_count(); ++e) {
    const auto& P = X.edge_piece(e);
    c.delta0 = std::max(c.delta0, delta_slim(P.graph, P.d, DeltaMode::SlimIntervals).delta);
  }
  auto s = secondary_constants(X);
  c.delta0p = s.delta0p;
  c.lambda0p = s.lambda0p;
  c.L0p = s.L0p;
  return c;
}

std::vector<int> FlowSpace::base() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(in_S.size()); ++v)
    if (in_S[v]) out.push_back(v);
  return out;
}

SemiContinuousFamily FlowSpace::family() const {
  SemiContinuousFamily f;
  f.center = center;
  f.in_S = in_S;
  f.Y_v = Q_v;
  f.Y_e = Q_e;
  f.K = implied_K;
  f.D = D0;
  f.E = E;
  f.lambda = lambda;
  return f;
}

FlowSpace flow_space(const TotalSpace& X, int u, const Subset& Q_u, double R) {
  return flow_space(X, flow_context(X), u, Q_u, R);
}

FlowSpace flow_space(const TotalSpace& X, const FlowContext& ctx, int u, const Subset& Q_u0, double R) {
  if (R < 0) throw PreconditionError("flow radius R must be nonnegative");
  const auto& T = X.tree();
  if (u < 0 || u >= T.size()) throw PreconditionError("flow centre is not a base vertex");
  Subset seed = make_subset(Q_u0);
  if (seed.empty()) throw PreconditionError("empty flow seed");
  for (Vid x : seed)
    if (x < 0 || x >= X.size() || X.pi(x).is_edge || X.pi(x).id != u)
      throw PreconditionError("flow seed leaves the centre fibre");
  FlowSpace F;
  F.center = u;
  F.R = R;
  F.ctx = ctx;
  double L = ctx.L0p;
  F.implied_K = std::pow(15.0 * L * R, 3);
  F.D0 = cobdd_bound(ctx.lambda0p, ctx.delta0p);
  double lam_prime = 1500.0 * std::pow(L * (R + 2 * ctx.delta0p), 3);
  F.E = 2 * (2 * ctx.lambda0p + 3 * ctx.delta0p + R) + (lam_prime + ctx.delta0);
  F.lambda = 4 * ctx.delta0;
  F.in_S.assign(T.size(), 0);
  F.Q_v.assign(T.size(), {});
  F.Q_e.assign(T.edge_count(), {});
  {
    const auto& P = X.fiber_piece(u);
    auto loc = local_of(P, seed);
    F.seed_lambda = quasiconvexity_constant(P.d, loc).lambda;
    F.Q_v[u] = global_of(P, quasiconvex_hull(P.d, loc, ctx.delta0));
    F.in_S[u] = 1;
  }
  auto [parent, order] = T.rooted(u);
  for (int w : order) {
    int v = parent[w];
    if (v < 0 || !F.in_S[v]) continue;
    int e = T.edge_between(v, w);
    const auto& U = X.union_piece(e);
    Subset qprime;
    for (Vid y : X.fiber(w)) {
      double best = kInf;
      for (Vid q : F.Q_v[v]) best = std::min(best, U.dist(q, y));
      if (best <= R + kTol) qprime.push_back(y);
    }
    if (qprime.empty()) {
      F.boundary_edges.push_back(e);
      continue;
    }
    const auto& Pw = X.fiber_piece(w);
    F.Q_v[w] = global_of(Pw, quasiconvex_hull(Pw.d, local_of(Pw, qprime), ctx.delta0));
    F.in_S[w] = 1;
    auto ef = X.edge_fiber(e);
    Subset proj;
    for (Vid q : F.Q_v[w]) {
      Vid best = ef.front();
      for (Vid z : ef)
        if (U.dist(q, z) < U.dist(q, best) - kTol) best = z;
      proj.push_back(best);
    }
    const auto& Pe = X.edge_piece(e);
    F.Q_e[e] = global_of(Pe, quasiconvex_hull(Pe.d, local_of(Pe, make_subset(proj)), ctx.delta0));
  }
  return F;
}

FlowIncidence flow_incidence_graph(const TotalSpace& X, double R) {
  return flow_incidence_graph(X, flow_context(X), R);
}

FlowIncidence flow_incidence_graph(const TotalSpace& X, const FlowContext& ctx, double R) {
  const auto& T = X.tree();
  int n = T.size();
  FlowIncidence out;
  for (int u = 0; u < n; ++u) {
    auto fl = flow_space(X, ctx, u, X.fiber(u), R);
    out.reach.push_back(fl.in_S);
  }
  for (int u = 0; u < n; ++u) out.gamma.add_vertex(T.label(u));
  std::vector<std::vector<int>> dg(n, std::vector<int>(n, -1));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (out.reach[u][w] && out.reach[v][w]) {
          out.gamma.add_edge(u, v);
          break;
        }
  auto bfs = [&](int s, const std::vector<char>* removed) {
    std::vector<int> d(n, -1);
    if (removed && (*removed)[s]) return d;
    std::deque<int> q{s};
    d[s] = 0;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (const auto& [b, w] : out.gamma.neighbors(a))
        if (d[b] < 0 && !(removed && (*removed)[b])) {
          d[b] = d[a] + 1;
          q.push_back(b);
        }
    }
    return d;
  };
  for (int u = 0; u < n; ++u) dg[u] = bfs(u, nullptr);
  auto far = [](int d) { return d < 0 ? 1 << 29 : d; };
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      auto path = T.path(u, v);
      for (size_t k = 1; k + 1 < path.size(); ++k) {
        int w = path[k];
        if (out.monotone && far(dg[u][v]) < far(dg[u][w])) {
          out.monotone = false;
          if (out.witness.empty()) out.witness = {u, w, v};
        }
        if (out.separation && far(dg[w][u]) > 1 && far(dg[w][v]) > 1) {
          std::vector<char> removed(n, 0);
          for (int z = 0; z < n; ++z)
            if (dg[w][z] >= 0 && dg[w][z] <= 1) removed[z] = 1;
          if (bfs(u, &removed)[v] >= 0) {
            out.separation = false;
            if (out.witness.empty()) out.witness = {u, w, v};
          }
        }
      }
    }
  return out;
}

HorizontalSubdivision horizontal_subdivision(const TotalSpace& X, int u, int v, double R) {
  return horizontal_subdivision(X, flow_context(X), u, v, R);
}

HorizontalSubdivision horizontal_subdivision(const TotalSpace& X, const FlowContext& ctx, int u, int v, double R) {
  const auto& T = X.tree();
  HorizontalSubdivision H;
  H.J = T.path(u, v);
  int m = static_cast<int>(H.J.size()) - 1;
  std::vector<std::vector<char>> reach;
  for (int s : H.J) reach.push_back(flow_space(X, ctx, s, X.fiber(s), R).in_S);
  int cur = 0;
  while (true) {
    SubdivisionStep st;
    st.u = H.J[cur];
    for (int k = 0; k <= m; ++k)
      if (reach[cur][H.J[k]]) st.reach.push_back(H.J[k]);
    int k2 = cur;
    while (k2 < m && reach[cur][H.J[k2 + 1]]) ++k2;
    st.u2 = H.J[k2];
    if (k2 == m) {
      H.steps.push_back(st);
      break;
    }
    int nxt = -1;
    for (int s = k2 + 1; s <= m; ++s)
      if (!reach[s][H.J[k2]]) {
        nxt = s;
        break;
      }
    if (nxt < 0) {
      st.u1_next = H.J[m];
      H.steps.push_back(st);
      break;
    }
    st.u_next = H.J[nxt];
    st.u1_next = H.J[nxt - 1];
    H.steps.push_back(st);
    cur = nxt;
  }
  return H;
}

}  // namespace coarsetree
