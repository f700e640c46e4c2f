#include "coarsetree/combing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "coarsetree/quasigeodesic.hpp"

namespace coarsetree {

namespace {

std::vector<Vid> piece_geodesic(const Piece& P, Vid a, Vid b) {
  auto g = canonical_geodesic(P.graph, P.d, P.local(a), P.local(b));
  std::vector<Vid> out;
  for (Vid x : g.vertices) out.push_back(P.global[x]);
  return out;
}

std::vector<Vid> fibre_geodesic(const TotalSpace& X, Vid a, Vid b) {
  return piece_geodesic(X.fiber_piece(X.pi(a).id), a, b);
}

// hops along a base path through the values vals[k] in X_{path[k]}
std::vector<Vid> horizontal_run(const TotalSpace& X, const std::vector<int>& path, const std::vector<Vid>& vals) {
  std::vector<Vid> out{vals.front()};
  for (size_t k = 1; k < path.size(); ++k) {
    const auto& U = X.union_piece(X.tree().edge_between(path[k - 1], path[k]));
    auto h = piece_geodesic(U, vals[k - 1], vals[k]);
    out.insert(out.end(), h.begin() + 1, h.end());
  }
  return out;
}

double run_length(const TotalSpace& X, const std::vector<int>& path, const std::vector<Vid>& vals) {
  double s = 0;
  for (size_t k = 1; k < path.size(); ++k)
    s += X.union_piece(X.tree().edge_between(path[k - 1], path[k])).dist(vals[k - 1], vals[k]);
  return s;
}

void push_segment(CombingPath& c, bool horizontal, std::vector<Vid> vs) {
  if (vs.size() < 2) return;
  c.segments.push_back({horizontal, std::move(vs)});
}

struct LadderEnds {
  int vx, vy;
  std::vector<int> sx, sy;
};

LadderEnds ladder_ends(const Ladder& L, Vid x, Vid y) {
  auto [vx, ix] = L.locate(x);
  auto [vy, iy] = L.locate(y);
  if (vx < 0 || vy < 0) throw PreconditionError("combing endpoints are not ladder vertices");
  return {vx, vy, L.section_indices(vx, ix), L.section_indices(vy, iy)};
}

CombingPath through(const TotalSpace& X, const Ladder& L, const LadderEnds& le, Vid x, Vid y, int t,
                    const std::string& tag) {
  const auto& T = X.tree();
  CombingPath c;
  c.from = x;
  c.to = y;
  c.provenance = tag;
  auto p1 = T.path(le.vx, t), p2 = T.path(t, le.vy);
  std::vector<Vid> v1, v2;
  for (int w : p1) v1.push_back(L.seg[w][le.sx[w]]);
  for (int w : p2) v2.push_back(L.seg[w][le.sy[w]]);
  push_segment(c, true, horizontal_run(X, p1, v1));
  push_segment(c, false, fibre_geodesic(X, v1.back(), v2.front()));
  push_segment(c, true, horizontal_run(X, p2, v2));
  return c;
}

double through_length(const TotalSpace& X, const Ladder& L, const LadderEnds& le, int t) {
  const auto& T = X.tree();
  auto p1 = T.path(le.vx, t), p2 = T.path(t, le.vy);
  std::vector<Vid> v1, v2;
  for (int w : p1) v1.push_back(L.seg[w][le.sx[w]]);
  for (int w : p2) v2.push_back(L.seg[w][le.sy[w]]);
  return run_length(X, p1, v1) + X.fiber_piece(t).dist(v1.back(), v2.front()) + run_length(X, p2, v2);
}

double section_gap(const TotalSpace& X, const Ladder& L, const LadderEnds& le, int t) {
  return X.fiber_piece(t).dist(L.seg[t][le.sx[t]], L.seg[t][le.sy[t]]);
}

CombingPath single_vertex(Vid x, const std::string& tag) {
  CombingPath c;
  c.from = c.to = x;
  c.provenance = tag;
  c.segments.push_back({false, {x}});
  return c;
}

}  // namespace

std::vector<Vid> CombingPath::vertices() const {
  std::vector<Vid> out;
  for (const auto& s : segments)
    for (size_t i = 0; i < s.vertices.size(); ++i) {
      if (i == 0 && !out.empty() && out.back() == s.vertices[0]) continue;
      out.push_back(s.vertices[i]);
    }
  if (out.empty() && from >= 0) out.push_back(from);
  return out;
}

double CombingPath::length(const MetricGraph& g) const { return path_length(g, vertices()); }

bool verify_combing_path(const MetricGraph& g, const CombingPath& c) {
  auto vs = c.vertices();
  if (vs.empty() || vs.front() != c.from || vs.back() != c.to) return false;
  if (!is_edge_path(g, vs)) return false;
  double sum = 0;
  for (size_t i = 0; i < c.segments.size(); ++i) {
    if (i > 0 && c.segments[i - 1].vertices.back() != c.segments[i].vertices.front()) return false;
    sum += path_length(g, c.segments[i].vertices);
  }
  return std::abs(sum - path_length(g, vs)) <= kTol * (1 + sum);
}

CombingPath carpet_path(const TotalSpace& X, const Ladder& A, Vid x, Vid y, double M) {
  if (x == y) return single_vertex(x, "carpet");
  auto le = ladder_ends(A, x, y);
  int t = -1, tmin = -1;
  for (int w : A.order) {
    double g = section_gap(X, A, le, w);
    if (t < 0 && g <= M + kTol) t = w;
    if (tmin < 0 || g < section_gap(X, A, le, tmin) - kTol) tmin = w;
  }
  if (t < 0) t = tmin;
  return through(X, A, le, x, y, t, "carpet");
}

CombingPath ladder_path(const TotalSpace& X, const Ladder& L, Vid x, Vid y, double M) {
  if (x == y) return single_vertex(x, "ladder-type1");
  auto le = ladder_ends(L, x, y);
  auto J = X.tree().path(le.vx, le.vy);
  int best = -1;
  double bl = kInf;
  for (int t : J)
    if (section_gap(X, L, le, t) <= M + kTol) {
      double len = through_length(X, L, le, t);
      if (len < bl - kTol) {
        bl = len;
        best = t;
      }
    }
  if (best >= 0) return through(X, L, le, x, y, best, "ladder-type1");
  for (int t : L.order)
    if (section_gap(X, L, le, t) <= M + kTol) {
      double len = through_length(X, L, le, t);
      if (len < bl - kTol) {
        bl = len;
        best = t;
      }
    }
  if (best < 0) {
    double bg = kInf;
    for (int t : L.order) {
      double g = section_gap(X, L, le, t);
      if (g < bg - kTol) {
        bg = g;
        best = t;
      }
    }
  }
  return through(X, L, le, x, y, best, "ladder-type2");
}

ChainCheck check_chain(const MetricGraph& g, const std::vector<Subset>& pieces0) {
  if (pieces0.empty()) throw PreconditionError("empty chain");
  std::vector<Subset> pieces;
  for (const auto& q : pieces0) pieces.push_back(make_subset(q));
  int n = static_cast<int>(pieces.size()) - 1;
  ChainCheck chk;
  std::vector<char> in_union(g.size(), 0);
  for (const auto& q : pieces)
    for (Vid x : q) in_union[x] = 1;
  for (int i = 0; i < n; ++i) {
    auto sep = set_intersection(pieces[i], pieces[i + 1]);
    if (sep.empty()) throw StructuralError("pieces " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not meet");
    chk.separators.push_back(sep);
    std::vector<char> left(g.size(), 0), right(g.size(), 0), cut(g.size(), 0);
    for (Vid x : sep) cut[x] = 1;
    for (int j = 0; j <= i; ++j)
      for (Vid x : pieces[j]) left[x] = 1;
    for (int j = i + 1; j <= n; ++j)
      for (Vid x : pieces[j]) right[x] = 1;
    std::vector<Vid> parent(g.size(), -2);
    std::deque<Vid> q;
    for (Vid x = 0; x < g.size(); ++x)
      if (left[x] && !right[x] && !cut[x]) {
        parent[x] = -1;
        q.push_back(x);
      }
    while (!q.empty()) {
      Vid a = q.front();
      q.pop_front();
      if (right[a] && !left[a]) {
        std::vector<Vid> p{a};
        while (parent[p.back()] >= 0) p.push_back(parent[p.back()]);
        std::reverse(p.begin(), p.end());
        std::ostringstream os;
        os << "separator " << i << "-" << i + 1 << " is bypassed by the path";
        for (Vid x : p) os << ' ' << g.label(x);
        throw StructuralError(os.str());
      }
      for (const auto& [b, w] : g.neighbors(a))
        if (in_union[b] && !cut[b] && parent[b] == -2) {
          parent[b] = a;
          q.push_back(b);
        }
    }
  }
  for (int i = 1; i < n; ++i) {
    auto P = make_piece(g, pieces[i]);
    const auto& A = chk.separators[i - 1];
    const auto& B = chk.separators[i];
    double best = kInf;
    std::pair<Vid, Vid> arg{-1, -1};
    for (Vid a : A)
      for (Vid b : B)
        if (P->dist(a, b) < best - kTol) {
          best = P->dist(a, b);
          arg = {a, b};
        }
    chk.transit.push_back(arg);
    chk.transit_distance.push_back(best);
    chk.min_distance.push_back(best);
    Subset la, lb;
    for (Vid a : A) la.push_back(P->local(a));
    for (Vid b : B) lb.push_back(P->local(b));
    double c = coboundedness(P->graph, P->d, make_subset(la), make_subset(lb)).C;
    chk.cobdd.push_back(c);
    chk.C = std::max(chk.C, c);
  }
  return chk;
}

CombingPath chain_amalgam_path(const MetricGraph& g, const std::vector<Subset>& pieces, Vid x, Vid xp) {
  return chain_amalgam_path(g, pieces, check_chain(g, pieces), x, xp);
}

CombingPath chain_amalgam_path(const MetricGraph& g, const std::vector<Subset>& pieces0, const ChainCheck& chk,
                               Vid x, Vid xp) {
  std::vector<Subset> pieces;
  for (const auto& q : pieces0) pieces.push_back(make_subset(q));
  int n = static_cast<int>(pieces.size()) - 1;
  int a = -1, b = -1;
  for (int i = 0; i <= n; ++i) {
    if (contains(pieces[i], x)) a = i;
    if (b < 0 && contains(pieces[i], xp)) b = i;
  }
  if (a < 0 || b < 0) throw PreconditionError("chain endpoints outside the pieces");
  CombingPath c;
  c.from = x;
  c.to = xp;
  c.provenance = "chain";
  if (x == xp) return single_vertex(x, "chain");
  for (int i = 0; i <= n; ++i)
    if (contains(pieces[i], x) && contains(pieces[i], xp)) {
      auto P = make_piece(g, pieces[i]);
      push_segment(c, false, piece_geodesic(*P, x, xp));
      return c;
    }
  int amin = n + 1;
  for (int i = 0; i <= n; ++i)
    if (contains(pieces[i], x)) amin = std::min(amin, i);
  if (amin > b) {
    auto r = chain_amalgam_path(g, pieces, chk, xp, x);
    CombingPath out;
    out.from = x;
    out.to = xp;
    out.provenance = "chain";
    for (auto it = r.segments.rbegin(); it != r.segments.rend(); ++it)
      out.segments.push_back({it->horizontal, std::vector<Vid>(it->vertices.rbegin(), it->vertices.rend())});
    return out;
  }
  auto nearest = [&](const Piece& P, Vid p, const Subset& A) {
    Vid best = A.front();
    for (Vid q : A)
      if (P.dist(p, q) < P.dist(p, best) - kTol) best = q;
    return best;
  };
  auto Pa = make_piece(g, pieces[a]);
  auto Pb = make_piece(g, pieces[b]);
  Vid xbar = nearest(*Pa, x, chk.separators[a]);
  Vid xpbar = nearest(*Pb, xp, chk.separators[b - 1]);
  push_segment(c, false, piece_geodesic(*Pa, x, xbar));
  Vid prev = xbar;
  for (int j = a + 1; j < b; ++j) {
    auto S = make_piece(g, chk.separators[j - 1]);
    auto [xm, xpl] = chk.transit[j - 1];
    push_segment(c, true, piece_geodesic(*S, prev, xm));
    auto Q = make_piece(g, pieces[j]);
    push_segment(c, false, piece_geodesic(*Q, xm, xpl));
    prev = xpl;
  }
  auto S = make_piece(g, chk.separators[b - 1]);
  push_segment(c, true, piece_geodesic(*S, prev, xpbar));
  push_segment(c, false, piece_geodesic(*Pb, xpbar, xp));
  if (c.segments.empty()) c.segments.push_back({false, {x}});
  return c;
}

FullCombing full_combing_path(const TotalSpace& X, Vid x, Vid y, const CombParams& p) {
  return full_combing_path(X, flow_context(X), x, y, p);
}

FullCombing full_combing_path(const TotalSpace& X, const FlowContext& ctx, Vid x, Vid y, const CombParams& p) {
  if (x < 0 || y < 0 || x >= X.size() || y >= X.size() || X.pi(x).is_edge || X.pi(y).is_edge)
    throw PreconditionError("full combing needs fibre vertices");
  const auto& T = X.tree();
  FullCombing F;
  F.J = T.path(X.pi(x).id, X.pi(y).id);
  int m = static_cast<int>(F.J.size()) - 1;
  auto solve = [&](bool bounded) {
    std::vector<std::vector<double>> ent(m + 1), ex(m + 1);
    std::vector<std::vector<int>> ent_from(m + 1), ex_from(m + 1);
    for (int j = 0; j <= m; ++j) {
      int n = X.tos().vertex_spaces[F.J[j]].size();
      ent[j].assign(n, kInf);
      ex[j].assign(n, kInf);
      ent_from[j].assign(n, -1);
      ex_from[j].assign(n, -1);
    }
    ent[0][X.local_index(x)] = 0;
    for (int j = 0; j <= m; ++j) {
      int v = F.J[j];
      const auto& P = X.fiber_piece(v);
      int n = static_cast<int>(ent[j].size());
      for (int q = 0; q < n; ++q)
        for (int a = 0; a < n; ++a)
          if (ent[j][a] + P.d(a, q) < ex[j][q] - kTol) {
            ex[j][q] = ent[j][a] + P.d(a, q);
            ex_from[j][q] = a;
          }
      if (j == m) break;
      int w = F.J[j + 1];
      const auto& U = X.union_piece(T.edge_between(v, w));
      int nw = static_cast<int>(ent[j + 1].size());
      for (int b = 0; b < nw; ++b)
        for (int q = 0; q < n; ++q) {
          double h = U.dist(X.fiber_vertex(v, q), X.fiber_vertex(w, b));
          if (bounded && h > p.K + kTol) continue;
          if (ex[j][q] + h < ent[j + 1][b] - kTol) {
            ent[j + 1][b] = ex[j][q] + h;
            ent_from[j + 1][b] = q;
          }
        }
    }
    std::vector<Vid> en(m + 1, -1), xo(m + 1, -1);
    if (!(ex[m][X.local_index(y)] < kInf)) return std::make_pair(en, xo);
    int q = X.local_index(y);
    for (int j = m; j >= 0; --j) {
      xo[j] = X.fiber_vertex(F.J[j], q);
      int a = ex_from[j][q];
      en[j] = X.fiber_vertex(F.J[j], a);
      if (j > 0) q = ent_from[j][a];
    }
    return std::make_pair(en, xo);
  };
  auto [en, xo] = solve(true);
  if (en[0] < 0) {
    F.hop_over_K = true;
    std::tie(en, xo) = solve(false);
    F.path.notes.push_back("no hop sequence within K; a longer hop was used");
  }
  F.entry = en;
  F.exit = xo;
  F.path.from = x;
  F.path.to = y;
  F.path.provenance = "full";
  for (int j = 0; j <= m; ++j) {
    int v = F.J[j];
    if (en[j] != xo[j]) {
      auto alpha = fibre_geodesic(X, en[j], xo[j]);
      auto L = build_ladder(X, ctx.delta0, v, alpha, p.ladder_K, kInf, kInf);
      auto V = vertical_subdivision(X, L, p.C);
      F.vertical_pieces.push_back(static_cast<int>(V.pieces.size()));
      std::vector<int> marks = V.x;
      if (marks.back() != static_cast<int>(alpha.size()) - 1) marks.push_back(static_cast<int>(alpha.size()) - 1);
      for (size_t k = 1; k < marks.size(); ++k) {
        auto lp = ladder_path(X, L, alpha[marks[k - 1]], alpha[marks[k]], p.M);
        for (auto& s : lp.segments) F.path.segments.push_back(std::move(s));
      }
    } else {
      F.vertical_pieces.push_back(0);
    }
    if (j < m) {
      const auto& U = X.union_piece(T.edge_between(v, F.J[j + 1]));
      push_segment(F.path, true, piece_geodesic(U, xo[j], en[j + 1]));
    }
  }
  if (F.path.segments.empty()) F.path.segments.push_back({false, {x}});
  F.hsub = horizontal_subdivision(X, ctx, F.J.front(), F.J.back(), p.R);
  return F;
}

double bowditch_m(double h) {
  auto f = [h](double m) { return m - 2 * h * (6 + std::log2(m + 2)); };
  double lo = 0, hi = 1;
  while (f(hi) < 0) hi *= 2;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return hi;
}

SlimnessReport verify_slim_combing(const MetricGraph& g, const DistanceMatrix& d, const std::vector<Vid>& net0,
                                   const PathFamily& paths, double D0, double measured_delta, std::uint64_t seed,
                                   std::size_t exhaustive_limit, std::size_t samples) {
  SlimnessReport r;
  r.D0 = D0;
  r.seed = seed;
  auto net = make_subset(net0);
  for (Vid x = 0; x < g.size(); ++x)
    if (dist_to_set(d, x, net) > D0 + kTol)
      throw PreconditionError("net point set is not a D0-net at vertex " + g.label(x));
  auto get = [&](Vid a, Vid b) -> std::vector<Vid> {
    auto it = paths.find({a, b});
    if (it != paths.end()) return it->second;
    it = paths.find({b, a});
    if (it != paths.end()) return {it->second.rbegin(), it->second.rend()};
    throw StructuralError("combing family misses the pair " + g.label(a) + ", " + g.label(b));
  };
  size_t N = net.size();
  // distance from every vertex to every path
  std::vector<std::vector<std::vector<double>>> to(N, std::vector<std::vector<double>>(N));
  std::vector<std::vector<std::vector<Vid>>> P(N, std::vector<std::vector<Vid>>(N));
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) {
      if (i == j) {
        P[i][j] = {net[i]};
      } else {
        P[i][j] = get(net[i], net[j]);
        if (P[i][j].empty() || P[i][j].front() != net[i] || P[i][j].back() != net[j] || !is_edge_path(g, P[i][j]))
          throw StructuralError("combing path " + g.label(net[i]) + " -> " + g.label(net[j]) + " is malformed");
      }
      auto& t = to[i][j];
      t.assign(g.size(), kInf);
      for (Vid v = 0; v < g.size(); ++v)
        for (Vid q : P[i][j]) t[v] = std::min(t[v], d(v, q));
      if (d(net[i], net[j]) <= 1 + 2 * D0 + kTol) r.D1 = std::max(r.D1, path_length(g, P[i][j]));
    }
  auto side = [&](size_t x, size_t y, size_t z) {
    for (Vid p : P[x][y]) {
      double dd = std::min(to[x][z][p], to[z][y][p]);
      if (dd > r.D2 + kTol) {
        r.D2 = dd;
        r.wx = net[x];
        r.wy = net[y];
        r.wz = net[z];
        r.wp = p;
      }
    }
  };
  if (N <= exhaustive_limit) {
    for (size_t x = 0; x < N; ++x)
      for (size_t y = 0; y < N; ++y)
        for (size_t z = 0; z < N; ++z) {
          if (x == y || y == z || x == z) continue;
          side(x, y, z);
          ++r.triples;
        }
  } else {
    r.mode = "sampled";
    std::mt19937_64 rng(seed);
    for (size_t s = 0; s < samples; ++s) {
      size_t x = rng() % N, y = rng() % N, z = rng() % N;
      if (x == y || y == z || x == z) continue;
      side(x, y, z);
      ++r.triples;
    }
  }
  r.h = std::max(r.D1 + 1, 2 + D0 + r.D2);
  r.m = bowditch_m(r.h);
  r.m_ok = 2 * r.h * (6 + std::log2(r.m + 2)) <= r.m + 1e-9;
  r.k = std::ceil((3 * r.m - 10 * r.h) / 2);
  r.measured_delta = measured_delta >= 0 ? measured_delta : delta_slim(g, d, DeltaMode::SlimIntervals).delta;
  r.sound = r.k >= r.measured_delta - kTol;
  return r;
}

std::vector<Vid> cut_and_replace(const TotalSpace& X, const std::vector<int>& S, const std::vector<Vid>& c) {
  if (c.empty()) return c;
  std::vector<char> in(X.size(), 0);
  for (Vid x : X.preimage(S)) in[x] = 1;
  if (!in[c.front()] || !in[c.back()]) throw PreconditionError("path endpoints leave X_S");
  std::vector<Vid> out;
  size_t i = 0;
  while (i < c.size()) {
    if (in[c[i]]) {
      out.push_back(c[i]);
      ++i;
      continue;
    }
    Vid exit = c[i - 1];
    size_t j = i;
    while (!in[c[j]]) ++j;
    Vid back = c[j];
    BaseLoc a = X.pi(exit), b = X.pi(back);
    if (a.is_edge || b.is_edge || !(a == b))
      throw StructuralError("excursion leaves X_S through " + X.graph().label(exit) + " and returns through " +
                            X.graph().label(back));
    auto geo = fibre_geodesic(X, exit, back);
    out.insert(out.end(), geo.begin() + 1, geo.end());
    i = j + 1;
  }
  return out;
}

ConsistencyReport consistency_probe(const TotalSpace& X, const std::vector<int>& S,
                                    const std::vector<double>& Lambdas, int samples, std::uint64_t seed) {
  ConsistencyReport r;
  r.seed = seed;
  r.samples = samples;
  auto piece = X.subtree_piece(S);
  const auto& d = X.distances();
  std::vector<Vid> pts;
  for (Vid x : piece->global)
    if (!X.pi(x).is_edge) pts.push_back(x);
  Rng rng(seed);
  for (double Lam : Lambdas) {
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
      Vid u = pts[draw(rng, pts.size())], v = pts[draw(rng, pts.size())];
      auto c = sample_quasigeodesic(X.graph(), d, u, v, Lam, rng);
      auto hat = cut_and_replace(X, S, c);
      std::vector<Vid> loc;
      for (Vid x : hat) loc.push_back(piece->local(x));
      double k = quasigeodesic_constant(piece->graph, piece->d, loc);
      if (k > worst) worst = k;
      if (k > r.worst.constant) r.worst = {Lam, c, hat, k};
    }
    r.max_constant.push_back(worst);
    r.table.push_back({Lam, std::max(Lam, worst)});
  }
  return r;
}

SmallCarpetReport small_carpet_test(const TotalSpace& X, int u, const std::vector<Vid>& alpha, double K, double C,
                                    int R, double M, std::size_t budget) {
  SmallCarpetReport r;
  auto L = build_ladder(X, 0.0, u, alpha, K, kInf, kInf);
  const auto& T = X.tree();
  int n = static_cast<int>(alpha.size());
  std::vector<std::vector<int>> sec(n);
  for (int i = 0; i < n; ++i) sec[i] = L.section_indices(u, i);
  auto gap = [&](int i, int j, int b) { return X.fiber_piece(b).dist(L.seg[b][sec[i][b]], L.seg[b][sec[j][b]]); };
  const auto& Pu = X.fiber_piece(u);
  for (int i = 0; i < n && !r.partial; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (Pu.dist(alpha[i], alpha[j]) <= C + kTol) continue;
      if (++r.pairs > budget) {
        r.partial = true;
        break;
      }
      for (int b : L.order) {
        if (gap(i, j, b) > C + kTol) continue;
        auto p = T.path(u, b);
        bool separated = true;
        for (size_t k = 0; k + 1 < p.size(); ++k) separated = separated && gap(i, j, p[k]) >= M - kTol;
        if (!separated) continue;
        int depth = static_cast<int>(p.size()) - 1;
        if (depth > r.depth) {
          r.depth = depth;
          r.i = i;
          r.j = j;
          r.narrow = b;
        }
        break;
      }
    }
  r.pass = r.depth <= R;
  return r;
}

}  // namespace coarsetree
