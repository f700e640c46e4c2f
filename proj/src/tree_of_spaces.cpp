#include "coarsetree/tree_of_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace coarsetree {

BaseTree::BaseTree(int n) {
  for (int i = 0; i < n; ++i) add_vertex();
}

int BaseTree::add_vertex(std::string label) {
  adj_.emplace_back();
  if (label.empty()) label = std::to_string(adj_.size() - 1);
  labels_.push_back(std::move(label));
  return size() - 1;
}

int BaseTree::add_edge(int v, int w, std::string label) {
  if (v < 0 || w < 0 || v >= size() || w >= size()) throw StructuralError("base edge endpoint out of range");
  if (v == w) throw StructuralError("base tree loop at " + labels_[v]);
  int e = edge_count();
  edges_.push_back({v, w});
  if (label.empty()) label = labels_[v] + "-" + labels_[w];
  edge_labels_.push_back(std::move(label));
  adj_[v].push_back({w, e});
  adj_[w].push_back({v, e});
  return e;
}

int BaseTree::find_label(const std::string& s) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == s) return i;
  return -1;
}

int BaseTree::edge_between(int v, int w) const {
  for (auto [n, e] : adj_[v])
    if (n == w) return e;
  return -1;
}

void BaseTree::validate() const {
  if (size() == 0) throw StructuralError("empty base tree");
  if (edge_count() != size() - 1) throw StructuralError("base graph is not a tree (edge count)");
  auto [par, order] = rooted(0);
  if (static_cast<int>(order.size()) != size()) throw StructuralError("base tree is disconnected");
}

std::pair<std::vector<int>, std::vector<int>> BaseTree::rooted(int root) const {
  std::vector<int> parent(size(), -2), order;
  std::deque<int> q{root};
  parent[root] = -1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    order.push_back(v);
    std::vector<int> nb;
    for (auto [w, e] : adj_[v])
      if (parent[w] == -2) nb.push_back(w);
    std::sort(nb.begin(), nb.end());
    for (int w : nb) {
      parent[w] = v;
      q.push_back(w);
    }
  }
  return {parent, order};
}

int BaseTree::distance(int v, int w) const { return static_cast<int>(path(v, w).size()) - 1; }

std::vector<int> BaseTree::path(int v, int w) const {
  auto [parent, order] = rooted(w);
  std::vector<int> p{v};
  while (p.back() != w) {
    if (parent[p.back()] < 0) throw StructuralError("base vertices not connected");
    p.push_back(parent[p.back()]);
  }
  return p;
}

int BaseTree::diameter() const {
  int best = 0;
  for (int v = 0; v < size(); ++v) {
    auto [parent, order] = rooted(v);
    best = std::max(best, distance(v, order.back()));
  }
  return best;
}

bool BaseTree::is_subtree(const std::vector<int>& S) const {
  if (S.empty()) return false;
  std::vector<char> in(size(), 0);
  for (int v : S) {
    if (v < 0 || v >= size()) return false;
    in[v] = 1;
  }
  std::vector<char> seen(size(), 0);
  std::vector<int> st{S.front()};
  seen[S.front()] = 1;
  int cnt = 0;
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    ++cnt;
    for (auto [w, e] : adj_[v])
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        st.push_back(w);
      }
  }
  int total = 0;
  for (char c : in) total += c;
  return cnt == total;
}

const std::vector<Vid>& TreeOfSpaces::incidence(int e, int v) const {
  if (tree.edge(e).first == v) return inc_first[e];
  if (tree.edge(e).second == v) return inc_second[e];
  throw PreconditionError("vertex not incident to edge");
}

void TreeOfSpaces::validate() const {
  tree.validate();
  if (static_cast<int>(vertex_spaces.size()) != tree.size())
    throw StructuralError("vertex space count does not match base tree");
  if (static_cast<int>(edge_spaces.size()) != tree.edge_count() ||
      static_cast<int>(inc_first.size()) != tree.edge_count() ||
      static_cast<int>(inc_second.size()) != tree.edge_count())
    throw StructuralError("edge space count does not match base tree");
  for (int v = 0; v < tree.size(); ++v) {
    if (vertex_spaces[v].size() == 0) throw StructuralError("empty vertex space at " + tree.label(v));
    if (!vertex_spaces[v].connected()) throw StructuralError("vertex space " + tree.label(v) + " is disconnected");
  }
  for (int e = 0; e < tree.edge_count(); ++e) {
    const auto& g = edge_spaces[e];
    if (g.size() == 0) throw StructuralError("empty edge space at " + tree.edge_label(e));
    if (!g.connected()) throw StructuralError("edge space " + tree.edge_label(e) + " is disconnected");
    auto chk = [&](const std::vector<Vid>& f, int v) {
      if (static_cast<int>(f.size()) != g.size())
        throw StructuralError("incidence map of " + tree.edge_label(e) + " is not total");
      for (Vid x : f)
        if (x < 0 || x >= vertex_spaces[v].size())
          throw StructuralError("incidence map of " + tree.edge_label(e) + " hits a missing vertex of " +
                                tree.label(v));
    };
    chk(inc_first[e], tree.edge(e).first);
    chk(inc_second[e], tree.edge(e).second);
  }
}

Vid Piece::local(Vid g) const {
  auto it = std::lower_bound(global.begin(), global.end(), g);
  return (it != global.end() && *it == g) ? static_cast<Vid>(it - global.begin()) : -1;
}

std::shared_ptr<Piece> make_piece(const MetricGraph& g, std::vector<Vid> vs) {
  auto p = std::make_shared<Piece>();
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  p->global = std::move(vs);
  p->graph = g.induced(p->global);
  p->d = shortest_path_metric(p->graph);
  return p;
}

TotalSpace::TotalSpace(TreeOfSpaces tos) : tos_(std::move(tos)) {
  tos_.validate();
  const auto& T = tos_.tree;
  for (int v = 0; v < T.size(); ++v) {
    vert_off_.push_back(graph_.size());
    const auto& g = tos_.vertex_spaces[v];
    for (Vid x = 0; x < g.size(); ++x) {
      graph_.add_vertex(T.label(v) + ":" + g.label(x));
      pi_.push_back({false, v});
    }
    for (const auto& e : g.edges()) graph_.add_edge(vert_off_[v] + e.a, vert_off_[v] + e.b, e.w);
  }
  for (int e = 0; e < T.edge_count(); ++e) {
    edge_off_.push_back(graph_.size());
    const auto& g = tos_.edge_spaces[e];
    for (Vid x = 0; x < g.size(); ++x) {
      graph_.add_vertex(T.edge_label(e) + ":" + g.label(x));
      pi_.push_back({true, e});
    }
    for (const auto& ed : g.edges()) graph_.add_edge(edge_off_[e] + ed.a, edge_off_[e] + ed.b, ed.w);
    auto [v, w] = T.edge(e);
    for (Vid x = 0; x < g.size(); ++x) {
      graph_.add_edge(edge_off_[e] + x, vert_off_[v] + tos_.inc_first[e][x], 0.5);
      graph_.add_edge(edge_off_[e] + x, vert_off_[w] + tos_.inc_second[e][x], 0.5);
    }
  }
  if (!graph_.connected()) throw StructuralError("total space is disconnected");
}

const DistanceMatrix& TotalSpace::distances() const {
  std::call_once(dist_once_, [this] { dist_ = shortest_path_metric(graph_); });
  return dist_;
}

void TotalSpace::preload_distances(DistanceMatrix d) const {
  if (d.size() != size()) throw PreconditionError("distance matrix size mismatch");
  std::call_once(dist_once_, [this, &d] { dist_ = std::move(d); });
}

Vid TotalSpace::local_index(Vid x) const {
  BaseLoc b = pi_[x];
  return x - (b.is_edge ? edge_off_[b.id] : vert_off_[b.id]);
}

std::vector<Vid> TotalSpace::fiber(int v) const {
  std::vector<Vid> out(tos_.vertex_spaces[v].size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = vert_off_[v] + static_cast<Vid>(i);
  return out;
}

std::vector<Vid> TotalSpace::edge_fiber(int e) const {
  std::vector<Vid> out(tos_.edge_spaces[e].size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = edge_off_[e] + static_cast<Vid>(i);
  return out;
}

const Piece& TotalSpace::cached(std::map<int, std::unique_ptr<Piece>>& m, int key,
                                const std::vector<Vid>& vs) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = m.find(key);
  if (it != m.end()) {
    ++stats_.hits;
    return *it->second;
  }
  ++stats_.misses;
  auto p = make_piece(graph_, vs);
  auto& slot = m[key];
  slot = std::make_unique<Piece>(std::move(*p));
  return *slot;
}

const Piece& TotalSpace::fiber_piece(int v) const { return cached(fib_, v, fiber(v)); }
const Piece& TotalSpace::edge_piece(int e) const { return cached(edg_, e, edge_fiber(e)); }

const Piece& TotalSpace::union_piece(int e) const {
  auto vs = fiber(tree().edge(e).first);
  auto b = edge_fiber(e);
  auto c = fiber(tree().edge(e).second);
  vs.insert(vs.end(), b.begin(), b.end());
  vs.insert(vs.end(), c.begin(), c.end());
  return cached(uni_, e, vs);
}

std::vector<Vid> TotalSpace::preimage(const std::vector<int>& S) const {
  std::vector<char> in(tree().size(), 0);
  for (int v : S) in[v] = 1;
  std::vector<Vid> out;
  for (int v : S) {
    auto f = fiber(v);
    out.insert(out.end(), f.begin(), f.end());
  }
  for (int e = 0; e < tree().edge_count(); ++e)
    if (in[tree().edge(e).first] && in[tree().edge(e).second]) {
      auto f = edge_fiber(e);
      out.insert(out.end(), f.begin(), f.end());
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::shared_ptr<const Piece> TotalSpace::subtree_piece(const std::vector<int>& S) const {
  if (!tree().is_subtree(S)) throw PreconditionError("not a nonempty subtree of the base");
  return make_piece(graph_, preimage(S));
}

double TotalSpace::base_distance(BaseLoc a, BaseLoc b) const {
  const auto& T = tree();
  int n = T.size();
  auto node = [&](BaseLoc l) { return l.is_edge ? n + l.id : l.id; };
  std::vector<int> dist(n + T.edge_count(), -1);
  std::deque<int> q{node(a)};
  dist[node(a)] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    std::vector<int> nb;
    if (x >= n) {
      nb = {T.edge(x - n).first, T.edge(x - n).second};
    } else {
      for (auto [w, e] : T.incident(x)) nb.push_back(n + e);
    }
    for (int y : nb)
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
  }
  return 0.5 * dist[node(b)];
}

TotalSpace::CacheStats TotalSpace::cache_stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  return stats_;
}

std::shared_ptr<TotalSpace> build_total_space(TreeOfSpaces tos) {
  return std::make_shared<TotalSpace>(std::move(tos));
}

Restriction restrict_to_subtree(const TotalSpace& X, const std::vector<int>& S0) {
  std::vector<int> S = S0;
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  if (S.empty()) throw PreconditionError("empty subtree");
  if (!X.tree().is_subtree(S)) throw PreconditionError("vertex set is not connected in the base tree");
  Restriction r;
  r.S = S;
  r.piece = make_piece(X.graph(), X.preimage(S));
  const auto& d = X.distances();
  std::map<double, double> tab;
  const auto& G = r.piece->global;
  for (size_t i = 0; i < G.size(); ++i)
    for (size_t j = i + 1; j < G.size(); ++j) {
      double a = d(G[i], G[j]);
      double b = r.piece->d(static_cast<Vid>(i), static_cast<Vid>(j));
      r.max_ratio = std::max(r.max_ratio, b / a);
      double key = std::round(a * 1e9) / 1e9;
      auto [it, fresh] = tab.emplace(key, b);
      if (!fresh) it->second = std::max(it->second, b);
    }
  double run = 0;
  for (auto [t, m] : tab) {
    run = std::max(run, m);
    r.eta.push_back({t, run});
  }
  // superlinear: eta(t)/t increases from the first to the last sample at t >= 1
  double first = -1, last = -1;
  for (auto [t, m] : r.eta)
    if (t >= 1 - kTol) {
      if (first < 0) first = m / t;
      last = m / t;
    }
  r.superlinear = first > 0 && last > first + kTol;
  return r;
}

AxiomHReport verify_axiom_H(const TreeOfSpaces& tos, DistortionTolerance tol, DeltaMode mode) {
  tos.validate();
  AxiomHReport r;
  for (int v = 0; v < tos.tree.size(); ++v) {
    const auto& g = tos.vertex_spaces[v];
    double dl = delta_hyperbolicity(g, shortest_path_metric(g), mode).delta;
    r.pieces.push_back({"v:" + tos.tree.label(v), dl});
    r.delta0 = std::max(r.delta0, dl);
  }
  for (int e = 0; e < tos.tree.edge_count(); ++e) {
    const auto& g = tos.edge_spaces[e];
    auto dE = shortest_path_metric(g);
    double dl = delta_hyperbolicity(g, dE, mode).delta;
    r.pieces.push_back({"e:" + tos.tree.edge_label(e), dl});
    r.delta0 = std::max(r.delta0, dl);
    for (int side = 0; side < 2; ++side) {
      int v = side ? tos.tree.edge(e).second : tos.tree.edge(e).first;
      const auto& f = side ? tos.inc_second[e] : tos.inc_first[e];
      IncidenceRow row;
      row.edge = e;
      row.vertex = v;
      row.c = map_distortion(f, dE, shortest_path_metric(tos.vertex_spaces[v]), tol);
      r.L0 = std::max(r.L0, row.c.L0);
      if (!row.c.qi_embedding && r.pass) {
        r.pass = false;
        r.failing = static_cast<int>(r.incidences.size());
      }
      r.incidences.push_back(row);
    }
  }
  return r;
}


static std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

K0Value k0_formula(double lambda0p, double delta0p, double L0p) {
  K0Value k;
  long double base = 15.0L * (2.0L * lambda0p + 5.0L * delta0p) * L0p;
  k.value = base * base * base;
  if (base >= 0 && base < 1e12L && std::fabs(base - std::nearbyint(base)) < 1e-9L) {
    auto b = static_cast<unsigned __int128>(std::llround(static_cast<double>(base)));
    k.exact = u128_to_string(b * b * b);
  }
  return k;
}

std::string k_star_formula() {
  return "K_* = max(k_flows(K0^), kappa_ladder(R_flows^)), where x^ = (15*L'0*x)^3 and "
         "K0 = (15*(2*lambda'0 + 5*delta'0)*L'0)^3";
}

SecondaryConstants secondary_constants(const TotalSpace& X) {
  SecondaryConstants s;
  const auto& T = X.tree();
  for (int v = 0; v < T.size(); ++v) {
    const auto& P = X.fiber_piece(v);
    if (T.edge_count() == 0)
      s.delta0p = std::max(s.delta0p, delta_slim(P.graph, P.d, DeltaMode::SlimIntervals).delta);
  }
  for (int e = 0; e < T.edge_count(); ++e) {
    const auto& U = X.union_piece(e);
    s.delta0p = std::max(s.delta0p, delta_slim(U.graph, U.d, DeltaMode::SlimIntervals).delta);
    for (int side = 0; side < 2; ++side) {
      int v = side ? T.edge(e).second : T.edge(e).first;
      const auto& P = X.fiber_piece(v);
      const auto& f = X.tos().incidence(e, v);
      Subset img;
      for (Vid x : f) img.push_back(x);
      img = make_subset(img);
      s.lambda0 = std::max(s.lambda0, quasiconvexity_constant(P.d, img).lambda);
      Subset in_u;
      std::vector<Vid> incl;
      for (Vid g : P.global) {
        in_u.push_back(U.local(g));
        incl.push_back(U.local(g));
      }
      s.lambda0p = std::max(s.lambda0p, quasiconvexity_constant(U.d, make_subset(in_u)).lambda);
      auto c = map_distortion(incl, P.d, U.d);
      s.L0p = std::max(s.L0p, c.L0);
    }
    Subset eu;
    for (Vid g : X.edge_fiber(e)) eu.push_back(U.local(g));
    s.lambda0p = std::max(s.lambda0p, quasiconvexity_constant(U.d, make_subset(eu)).lambda);
  }
  s.lambda0p_formula = 92.0 * s.L0p * s.L0p * (s.L0p + 3 * s.delta0p);
  s.L1p = (s.L0p + 1) * lip_proj_bound(s.lambda0p, s.delta0p);
  s.K0 = k0_formula(s.lambda0p, s.delta0p, s.L0p);
  s.K0_formula = k0_formula(s.lambda0p_formula, s.delta0p, s.L0p);
  s.K_star = k_star_formula();
  return s;
}

std::vector<Vid> SemiContinuousFamily::vertices() const {
  std::vector<Vid> out;
  for (const auto& y : Y_v) out.insert(out.end(), y.begin(), y.end());
  for (const auto& y : Y_e) out.insert(out.end(), y.begin(), y.end());
  return make_subset(out);
}

static Subset to_local(const Piece& P, const Subset& A) {
  Subset out;
  for (Vid g : A) {
    Vid l = P.local(g);
    if (l < 0) throw StructuralError("family subset leaves its piece");
    out.push_back(l);
  }
  return make_subset(out);
}

static void check_family_shape(const TotalSpace& X, const SemiContinuousFamily& fam) {
  const auto& T = X.tree();
  if (static_cast<int>(fam.in_S.size()) != T.size() || static_cast<int>(fam.Y_v.size()) != T.size())
    throw StructuralError("family does not match the base tree");
  if (fam.center < 0 || fam.center >= T.size() || !fam.in_S[fam.center])
    throw StructuralError("family centre outside its subtree");
  std::vector<int> S;
  for (int v = 0; v < T.size(); ++v)
    if (fam.in_S[v]) {
      S.push_back(v);
      if (fam.Y_v[v].empty()) throw StructuralError("empty family fibre over " + T.label(v));
      for (Vid x : fam.Y_v[v])
        if (x < 0 || x >= X.size() || X.pi(x).is_edge || X.pi(x).id != v)
          throw StructuralError("family fibre over " + T.label(v) + " leaves X_v");
    }
  if (!T.is_subtree(S)) throw StructuralError("family base is not a subtree");
}

FamilyReport verify_semicontinuous_family(const TotalSpace& X, const SemiContinuousFamily& fam) {
  check_family_shape(X, fam);
  const auto& T = X.tree();
  FamilyReport r;
  r.leaf_cost.assign(X.size(), kInf);
  auto [parent, order] = T.rooted(fam.center);
  {
    const auto& P = X.fiber_piece(fam.center);
    r.lambda = quasiconvexity_constant(P.d, to_local(P, fam.Y_v[fam.center])).lambda;
    for (Vid y : fam.Y_v[fam.center]) r.leaf_cost[y] = 0;
  }
  for (int w : order) {
    int v = parent[w];
    if (v < 0 || !fam.in_S[v]) continue;
    int e = T.edge_between(v, w);
    const auto& U = X.union_piece(e);
    FamilyEdgeRow row;
    row.v = v;
    row.w = w;
    Subset Xw_loc = to_local(U, X.fiber(w));
    Subset Yv_loc = to_local(U, fam.Y_v[v]);
    if (!fam.in_S[w]) {
      row.boundary = true;
      row.cobdd = coboundedness(U.graph, U.d, Yv_loc, Xw_loc).C;
      r.D = std::max(r.D, row.cobdd);
      r.rows.push_back(row);
      continue;
    }
    const auto& Pw = X.fiber_piece(w);
    row.lambda_w = quasiconvexity_constant(Pw.d, to_local(Pw, fam.Y_v[w])).lambda;
    if (e < static_cast<int>(fam.Y_e.size()) && !fam.Y_e[e].empty()) {
      const auto& Pe = X.edge_piece(e);
      row.lambda_w = std::max(row.lambda_w, quasiconvexity_constant(Pe.d, to_local(Pe, fam.Y_e[e])).lambda);
    }
    for (Vid y : fam.Y_v[w]) {
      double best = kInf;
      for (Vid x : fam.Y_v[v]) best = std::min(best, std::max(r.leaf_cost[x], U.dist(x, y)));
      r.leaf_cost[y] = best;
      row.leaf_K = std::max(row.leaf_K, best);
    }
    // P_{X_vw, X_w}(Y_v)
    Subset proj;
    for (Vid x : Yv_loc) {
      Vid best = Xw_loc.front();
      for (Vid y : Xw_loc)
        if (U.d(x, y) < U.d(x, best) - kTol) best = y;
      proj.push_back(best);
    }
    Subset Yw_loc = to_local(U, fam.Y_v[w]);
    row.hd_proj = hausdorff_distance(U.d, make_subset(proj), Yw_loc);
    if (e < static_cast<int>(fam.Y_e.size()) && !fam.Y_e[e].empty())
      row.hd_edge = hausdorff_distance(U.d, Yw_loc, to_local(U, fam.Y_e[e]));
    r.lambda = std::max(r.lambda, row.lambda_w);
    r.leaf_K = std::max(r.leaf_K, row.leaf_K);
    r.E = std::max(r.E, row.hd_proj);
    r.K_edge = std::max(r.K_edge, row.hd_edge);
    r.rows.push_back(row);
  }
  r.cond1 = r.lambda <= fam.lambda + kTol;
  r.cond2 = r.leaf_K <= fam.K + kTol;
  r.cond3 = r.E <= fam.E + kTol && r.K_edge <= fam.K + kTol;
  r.cond4 = r.D <= fam.D + kTol;
  r.pass = r.cond1 && r.cond2 && r.cond3 && r.cond4;
  return r;
}

MitraRetraction mitra_retraction(const TotalSpace& X, const SemiContinuousFamily& fam) {
  if (!(fam.D < kInf)) throw PreconditionError("family coboundedness constant D is infinite");
  auto rep = verify_semicontinuous_family(X, fam);
  if (!rep.cond4) {
    for (const auto& row : rep.rows)
      if (row.boundary && row.cobdd > fam.D + kTol)
        throw PreconditionError("boundary edge " + X.tree().label(row.v) + "-" + X.tree().label(row.w) +
                                " is not D-cobounded");
  }
  const auto& T = X.tree();
  auto [parent, order] = T.rooted(fam.center);
  MitraRetraction m;
  m.rho.assign(X.size(), -1);
  auto nearest = [](const Piece& P, Vid g, const Subset& A) {
    Vid best = A.front();
    for (Vid a : A)
      if (P.dist(g, a) < P.dist(g, best) - kTol) best = a;
    return best;
  };
  // base component owner: for vertices outside S, the boundary edge through which they hang
  std::vector<int> hang(T.size(), -1);
  for (int w : order) {
    int v = parent[w];
    if (fam.in_S[w]) continue;
    hang[w] = fam.in_S[v] ? T.edge_between(v, w) : hang[v];
  }
  std::map<int, Vid> boundary_point;
  auto boundary_value = [&](int e) {
    auto it = boundary_point.find(e);
    if (it != boundary_point.end()) return it->second;
    auto [a, b] = T.edge(e);
    int v = fam.in_S[a] ? a : b;
    int w = T.other_end(e, v);
    const auto& U = X.union_piece(e);
    Vid best = -1;
    for (Vid x : X.fiber(w)) {
      Vid p = nearest(U, x, fam.Y_v[v]);
      if (best < 0 || p < best) best = p;
    }
    boundary_point[e] = best;
    return best;
  };
  for (Vid x = 0; x < X.size(); ++x) {
    BaseLoc b = X.pi(x);
    if (!b.is_edge) {
      if (fam.in_S[b.id]) {
        m.rho[x] = nearest(X.fiber_piece(b.id), x, fam.Y_v[b.id]);
      } else {
        m.rho[x] = boundary_value(hang[b.id]);
      }
      continue;
    }
    auto [v, w] = T.edge(b.id);
    if (fam.in_S[v] && fam.in_S[w]) {
      if (b.id < static_cast<int>(fam.Y_e.size()) && !fam.Y_e[b.id].empty()) {
        m.rho[x] = nearest(X.edge_piece(b.id), x, fam.Y_e[b.id]);
      } else {
        int near = parent[w] == v ? v : w;
        const auto& U = X.union_piece(b.id);
        m.rho[x] = nearest(U, x, fam.Y_v[near]);
      }
    } else if (fam.in_S[v] || fam.in_S[w]) {
      m.rho[x] = boundary_value(b.id);
    } else {
      int far = parent[w] == v ? w : v;
      m.rho[x] = boundary_value(hang[far]);
    }
  }
  const auto& d = X.distances();
  for (const auto& e : X.graph().edges()) {
    double j = d(m.rho[e.a], m.rho[e.b]);
    m.max_jump = std::max(m.max_jump, j);
    m.L = std::max(m.L, j / (d(e.a, e.b) + 1.0));
  }
  auto famv = fam.vertices();
  for (Vid y : famv)
    if (m.rho[y] != y) m.fixes_family = false;
  for (Vid x = 0; x < X.size(); ++x)
    if (m.rho[m.rho[x]] != m.rho[x]) m.idempotent = false;
  return m;
}

}  // namespace coarsetree
