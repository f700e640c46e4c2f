#include "coarsetree/flaring.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace coarsetree {

namespace {

using States = std::vector<char>;  // n*n, index x*n + y

struct Engine {
  const TotalSpace& X;
  double K;
  FlaringOptions opt;
  std::mt19937_64 rng;
  bool beam = false;

  Engine(const TotalSpace& x, double k, FlaringOptions o) : X(x), K(k), opt(o), rng(o.seed) {}

  int size(int v) const { return X.tos().vertex_spaces[v].size(); }
  double fd(int v, int x, int y) const { return X.fiber_piece(v).d(x, y); }

  std::vector<std::vector<char>> adjacency(int v, int w) const {
    const auto& U = X.union_piece(X.tree().edge_between(v, w));
    int a = size(v), b = size(w);
    std::vector<std::vector<char>> A(a, std::vector<char>(b, 0));
    for (int x = 0; x < a; ++x)
      for (int y = 0; y < b; ++y) A[x][y] = U.dist(X.fiber_vertex(v, x), X.fiber_vertex(w, y)) <= K + kTol;
    return A;
  }

  States expand(int v, int w, const States& s) {
    int a = size(v), b = size(w);
    auto A = adjacency(v, w);
    std::vector<char> t1(static_cast<size_t>(b) * a, 0);
    for (int x = 0; x < a; ++x)
      for (int y = 0; y < a; ++y) {
        if (!s[x * a + y]) continue;
        for (int x2 = 0; x2 < b; ++x2)
          if (A[x][x2]) t1[x2 * a + y] = 1;
      }
    States out(static_cast<size_t>(b) * b, 0);
    for (int x2 = 0; x2 < b; ++x2)
      for (int y = 0; y < a; ++y) {
        if (!t1[x2 * a + y]) continue;
        for (int y2 = 0; y2 < b; ++y2)
          if (A[y][y2]) out[x2 * b + y2] = 1;
      }
    size_t cnt = std::count(out.begin(), out.end(), 1);
    if (cnt > opt.budget) {
      beam = true;
      std::vector<size_t> on;
      for (size_t i = 0; i < out.size(); ++i)
        if (out[i]) on.push_back(i);
      std::shuffle(on.begin(), on.end(), rng);
      std::fill(out.begin(), out.end(), 0);
      for (size_t i = 0; i < opt.budget; ++i) out[on[i]] = 1;
    }
    return out;
  }

  States filter(int v, const States& s, const std::function<bool(double)>& keep) const {
    int n = size(v);
    States out = s;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (out[x * n + y] && !keep(fd(v, x, y))) out[x * n + y] = 0;
    return out;
  }

  States all_states(int v, const std::function<bool(double)>& keep) const {
    int n = size(v);
    States s(static_cast<size_t>(n) * n, 1);
    return filter(v, s, keep);
  }

  // layers along path with filters applied at every layer; returns the final state set
  std::vector<States> layers(const std::vector<int>& path, States start,
                             const std::function<States(int, const States&)>& at) {
    std::vector<States> L{at(0, start)};
    for (size_t k = 1; k < path.size(); ++k) L.push_back(at(static_cast<int>(k), expand(path[k - 1], path[k], L.back())));
    return L;
  }

  // least predecessor chain ending at `last` in the final layer
  SectionPair backtrack(const std::vector<int>& path, const std::vector<States>& L, int last) {
    SectionPair p;
    p.interval = path;
    p.K = K;
    size_t k = path.size() - 1;
    int n = size(path[k]);
    std::vector<std::pair<int, int>> st{{last / n, last % n}};
    for (; k > 0; --k) {
      int v = path[k - 1], w = path[k];
      auto A = adjacency(v, w);
      int a = size(v);
      auto [x2, y2] = st.back();
      std::pair<int, int> pick{-1, -1};
      for (int x = 0; x < a && pick.first < 0; ++x)
        for (int y = 0; y < a; ++y)
          if (L[k - 1][x * a + y] && A[x][x2] && A[y][y2]) {
            pick = {x, y};
            break;
          }
      st.push_back(pick);
    }
    std::reverse(st.begin(), st.end());
    for (size_t i = 0; i < path.size(); ++i) {
      p.g0.push_back(X.fiber_vertex(path[i], st[i].first));
      p.g1.push_back(X.fiber_vertex(path[i], st[i].second));
    }
    return p;
  }
};

double measured_L0p(const TotalSpace& X, const FlaringOptions& opt) {
  if (opt.L0p > 0) return opt.L0p;
  if (X.tree().edge_count() == 0) return 2;
  return secondary_constants(X).L0p;
}

// base paths of exactly `len` edges starting at a, avoiding `avoid` as the first step
void paths_from(const BaseTree& T, int a, int len, int avoid, std::vector<std::vector<int>>& out) {
  std::vector<int> cur{a};
  std::function<void(int)> rec = [&](int prev) {
    if (static_cast<int>(cur.size()) == len + 1) {
      out.push_back(cur);
      return;
    }
    int v = cur.back();
    for (auto [w, e] : T.incident(v)) {
      if (w == prev || (cur.size() == 1 && w == avoid)) continue;
      cur.push_back(w);
      rec(v);
      cur.pop_back();
    }
  };
  rec(-1);
}

}  // namespace

PairStats section_pair_stats(const TotalSpace& X, const SectionPair& p) {
  if (p.interval.empty() || p.g0.size() != p.interval.size() || p.g1.size() != p.interval.size())
    throw PreconditionError("section pair does not match its interval");
  PairStats s;
  for (size_t i = 0; i < p.interval.size(); ++i) {
    int v = p.interval[i];
    if (X.pi(p.g0[i]).is_edge || X.pi(p.g0[i]).id != v || X.pi(p.g1[i]).is_edge || X.pi(p.g1[i]).id != v)
      throw PreconditionError("section value outside its fibre");
    s.profile.push_back(X.fiber_piece(v).dist(p.g0[i], p.g1[i]));
  }
  s.mid = static_cast<int>(p.interval.size() - 1) / 2;
  s.Pi0 = s.profile[s.mid];
  s.Pi_max = std::max(s.profile.front(), s.profile.back());
  return s;
}

bool is_section_pair(const TotalSpace& X, const SectionPair& p) {
  for (size_t i = 1; i < p.interval.size(); ++i) {
    int e = X.tree().edge_between(p.interval[i - 1], p.interval[i]);
    if (e < 0) return false;
    const auto& U = X.union_piece(e);
    if (U.dist(p.g0[i - 1], p.g0[i]) > p.K + kTol || U.dist(p.g1[i - 1], p.g1[i]) > p.K + kTol) return false;
  }
  return true;
}

bool growth_bound_holds(const std::vector<double>& profile, double L0p, double K) {
  double a = L0p, b = 2 * L0p * K;
  size_t n = profile.size();
  for (size_t i = 0; i < n; ++i) {
    double pw = std::pow(a, static_cast<double>(i));
    if (profile[i] > pw * (profile[0] + b) + kTol) return false;
    if (profile[n - 1 - i] > pw * (profile[n - 1] + b) + kTol) return false;
  }
  return true;
}

FlaringReport verify_uniform_flaring(const TotalSpace& X, double K, double M, const std::vector<double>& D_grid,
                                     FlaringOptions opt) {
  FlaringReport r;
  r.kind = "uniform";
  r.seed = opt.seed;
  const auto& T = X.tree();
  int diam = T.diameter();
  double a = measured_L0p(X, opt);
  Engine E(X, K, opt);
  for (double D : D_grid) {
    int tau = 0;
    std::vector<int> best_path;
    int best_state = -1;
    for (int s = 0; s < T.size(); ++s) {
      auto [parent, order] = T.rooted(s);
      std::vector<States> open(T.size());
      open[s] = E.all_states(s, [&](double d) { return d <= D + kTol; });
      for (int c : order) {
        int v = parent[c];
        if (v < 0 || open[v].empty()) continue;
        if (std::find(open[v].begin(), open[v].end(), 1) == open[v].end()) continue;
        States raw = E.expand(v, c, open[v]);
        int depth = T.distance(s, c);
        int n = E.size(c);
        for (int i = 0; i < n * n; ++i)
          if (raw[i] && E.fd(c, i / n, i % n) <= D + kTol) {
            ++r.pairs_checked;
            if (depth > tau) {
              tau = depth;
              best_path = T.path(s, c);
              best_state = i;
            }
            break;
          }
        open[c] = E.filter(c, raw, [&](double d) { return d > M + kTol; });
      }
    }
    r.table.push_back({D, static_cast<double>(tau)});
    r.value = std::max(r.value, static_cast<double>(tau));
    if (!best_path.empty()) {
      auto L = E.layers(best_path, E.all_states(best_path[0], [&](double d) { return d <= D + kTol; }),
                        [&](int k, const States& s) {
                          if (k == 0 || k + 1 == static_cast<int>(best_path.size())) return s;
                          return E.filter(best_path[k], s, [&](double d) { return d > M + kTol; });
                        });
      auto pr = E.backtrack(best_path, L, best_state);
      auto st = section_pair_stats(X, pr);
      if (!growth_bound_holds(st.profile, a, K)) r.growth_ok = false;
      if (tau >= diam && diam > 1 && !r.witness) {
        r.witness = pr;
        r.witness_profile = st.profile;
      }
    }
    if (tau >= diam && diam > 1) r.pass = false;
  }
  if (E.beam) r.mode = "beam";
  r.note = "tau is the longest base interval carrying a K-pair with ends <= D and interior > M";
  return r;
}

FlaringReport verify_exponential_flaring(const TotalSpace& X, double kappa, double lambda, int n, double M,
                                         FlaringOptions opt) {
  if (!(lambda > 1)) throw PreconditionError("lambda must exceed 1");
  if (n < 1) throw PreconditionError("n must be at least 1");
  FlaringReport r;
  r.kind = "exponential";
  r.seed = opt.seed;
  const auto& T = X.tree();
  double a = measured_L0p(X, opt);
  Engine E(X, kappa, opt);
  bool any = false;
  for (int m = 0; m < T.size(); ++m) {
    std::vector<std::vector<int>> arms;
    paths_from(T, m, n, -1, arms);
    int sz = E.size(m);
    // min reachable end distance per midpoint state
    std::vector<std::vector<double>> mins;
    for (const auto& arm : arms) {
      int last = arm.back();
      int nl = E.size(last);
      std::vector<double> val(static_cast<size_t>(nl) * nl);
      for (int x = 0; x < nl; ++x)
        for (int y = 0; y < nl; ++y) val[x * nl + y] = E.fd(last, x, y);
      for (int k = static_cast<int>(arm.size()) - 2; k >= 0; --k) {
        int v = arm[k], w = arm[k + 1];
        auto A = E.adjacency(v, w);
        int p = E.size(v), q = E.size(w);
        std::vector<double> tmp(static_cast<size_t>(p) * q, kInf), nv(static_cast<size_t>(p) * p, kInf);
        for (int x = 0; x < p; ++x)
          for (int x2 = 0; x2 < q; ++x2)
            if (A[x][x2])
              for (int y2 = 0; y2 < q; ++y2) tmp[x * q + y2] = std::min(tmp[x * q + y2], val[x2 * q + y2]);
        for (int x = 0; x < p; ++x)
          for (int y = 0; y < p; ++y)
            for (int y2 = 0; y2 < q; ++y2)
              if (A[y][y2]) nv[x * p + y] = std::min(nv[x * p + y], tmp[x * q + y2]);
        val = std::move(nv);
      }
      mins.push_back(std::move(val));
    }
    for (size_t i = 0; i < arms.size(); ++i)
      for (size_t j = i + 1; j < arms.size(); ++j) {
        if (arms[i][1] == arms[j][1]) continue;
        for (int x = 0; x < sz; ++x)
          for (int y = 0; y < sz; ++y) {
            double g = E.fd(m, x, y);
            double m1 = mins[i][x * sz + y], m2 = mins[j][x * sz + y];
            if (g < M - kTol || m1 >= kInf || m2 >= kInf) continue;
            any = true;
            ++r.pairs_checked;
            double ratio = g > 0 ? std::max(m1, m2) / g : kInf;
            if (g > 0) r.value = r.value == 0 ? ratio : std::min(r.value, ratio);
            if (lambda * g > std::max(m1, m2) + kTol && r.pass) {
              r.pass = false;
              // witness: follow the arms greedily towards the minimising ends
              std::vector<int> path(arms[i].rbegin(), arms[i].rend());
              path.insert(path.end(), arms[j].begin() + 1, arms[j].end());
              int mi = n;
              std::vector<States> L;
              States s0(static_cast<size_t>(E.size(path[0])) * E.size(path[0]), 1);
              L = E.layers(path, s0, [&](int, const States& s) { return s; });
              // restrict the middle layer to (x,y) and recompute forward
              States mid(static_cast<size_t>(sz) * sz, 0);
              mid[x * sz + y] = L[mi][x * sz + y];
              std::vector<int> left(path.begin(), path.begin() + mi + 1);
              std::reverse(left.begin(), left.end());
              std::vector<int> right(path.begin() + mi, path.end());
              auto pick_end = [&](const std::vector<int>& p) {
                auto LL = E.layers(p, mid, [&](int, const States& s) { return s; });
                int last = p.back(), nl = E.size(last), best = -1;
                for (int t = 0; t < nl * nl; ++t)
                  if (LL.back()[t] && (best < 0 || E.fd(last, t / nl, t % nl) < E.fd(last, best / nl, best % nl) - kTol))
                    best = t;
                return E.backtrack(p, LL, best);
              };
              auto pl = pick_end(left), pr = pick_end(right);
              SectionPair w;
              w.K = kappa;
              for (int t = static_cast<int>(pl.interval.size()) - 1; t >= 0; --t) {
                w.interval.push_back(pl.interval[t]);
                w.g0.push_back(pl.g0[t]);
                w.g1.push_back(pl.g1[t]);
              }
              for (size_t t = 1; t < pr.interval.size(); ++t) {
                w.interval.push_back(pr.interval[t]);
                w.g0.push_back(pr.g0[t]);
                w.g1.push_back(pr.g1[t]);
              }
              r.witness = w;
              r.witness_profile = section_pair_stats(X, w).profile;
              if (!growth_bound_holds(r.witness_profile, a, kappa)) r.growth_ok = false;
            }
          }
      }
  }
  if (!any) {
    r.vacuous = true;
    r.note = "no kappa-pair of girth >= M over a length-2n interval";
  } else {
    r.note = "value is the least observed Pi_max / Pi_0";
  }
  if (E.beam) r.mode = "beam";
  return r;
}

namespace {

// fwd[a][v]: states at v reachable by K-pairs over [a,v] starting from `start(a)`
std::vector<std::vector<States>> reach_all(Engine& E, const std::function<States(int)>& start) {
  const auto& T = E.X.tree();
  std::vector<std::vector<States>> F(T.size(), std::vector<States>(T.size()));
  for (int a = 0; a < T.size(); ++a) {
    auto [parent, order] = T.rooted(a);
    F[a][a] = start(a);
    for (int c : order)
      if (parent[c] >= 0) F[a][c] = E.expand(parent[c], c, F[a][parent[c]]);
  }
  return F;
}

}  // namespace

FlaringReport verify_bigon_property(const TotalSpace& X, double K, double C, FlaringOptions opt) {
  FlaringReport r;
  r.kind = "bigon";
  r.seed = opt.seed;
  const auto& T = X.tree();
  double a = measured_L0p(X, opt);
  Engine E(X, K, opt);
  auto F = reach_all(E, [&](int v) { return E.all_states(v, [&](double d) { return d <= C + kTol; }); });
  bool any = false;
  std::vector<int> wpath;
  int wv = -1, wstate = -1;
  for (int s = 0; s < T.size(); ++s)
    for (int t = s + 1; t < T.size(); ++t) {
      auto path = T.path(s, t);
      int n = E.size(t);
      bool ok = false;
      for (int i = 0; i < n * n && !ok; ++i) ok = F[s][t][i] && E.fd(t, i / n, i % n) <= C + kTol;
      if (!ok) continue;
      any = true;
      ++r.pairs_checked;
      for (size_t k = 0; k < path.size(); ++k) {
        int v = path[k], m = E.size(v);
        for (int i = 0; i < m * m; ++i)
          if (F[s][v][i] && F[t][v][i] && E.fd(v, i / m, i % m) > r.value + kTol) {
            r.value = E.fd(v, i / m, i % m);
            wpath = path;
            wv = static_cast<int>(k);
            wstate = i;
          }
      }
    }
  if (!any) {
    r.vacuous = true;
    r.note = "no K-pair with both ends <= C; vacuous";
  } else {
    r.note = "value is the empirical R(K,C)";
  }
  if (!wpath.empty()) {
    // split at the interior vertex and glue the two halves
    std::vector<int> left(wpath.begin(), wpath.begin() + wv + 1), right(wpath.begin() + wv, wpath.end());
    std::reverse(right.begin(), right.end());
    auto lay = [&](const std::vector<int>& p) {
      return E.layers(p, E.all_states(p[0], [&](double d) { return d <= C + kTol; }),
                      [&](int, const States& s) { return s; });
    };
    auto Ll = lay(left), Lr = lay(right);
    int m = E.size(wpath[wv]);
    States both(static_cast<size_t>(m) * m, 0);
    both[wstate] = 1;
    Ll.back() = both;
    Lr.back() = both;
    auto pl = E.backtrack(left, Ll, wstate), pr = E.backtrack(right, Lr, wstate);
    SectionPair w;
    w.K = K;
    w.interval = wpath;
    w.g0 = pl.g0;
    w.g1 = pl.g1;
    for (int t = static_cast<int>(pr.interval.size()) - 2; t >= 0; --t) {
      w.g0.push_back(pr.g0[t]);
      w.g1.push_back(pr.g1[t]);
    }
    r.witness = w;
    r.witness_profile = section_pair_stats(X, w).profile;
    r.growth_ok = growth_bound_holds(r.witness_profile, a, K);
  }
  if (E.beam) r.mode = "beam";
  return r;
}

FlaringReport verify_acylindricity(const TotalSpace& X, double kappa, int tau, double M, FlaringOptions opt) {
  if (tau < 1) throw PreconditionError("tau must be at least 1");
  FlaringReport r;
  r.kind = "acylindrical";
  r.seed = opt.seed;
  const auto& T = X.tree();
  if (tau > T.diameter()) {
    r.vacuous = true;
    r.note = "tau exceeds the base diameter; vacuous pass";
    return r;
  }
  double a = measured_L0p(X, opt);
  Engine E(X, kappa, opt);
  auto F = reach_all(E, [&](int v) { return E.all_states(v, [](double) { return true; }); });
  for (int s = 0; s < T.size(); ++s)
    for (int t = s + 1; t < T.size(); ++t) {
      if (T.distance(s, t) != tau) continue;
      auto path = T.path(s, t);
      ++r.pairs_checked;
      for (size_t k = 0; k < path.size(); ++k) {
        int v = path[k], m = E.size(v);
        for (int i = 0; i < m * m; ++i) {
          if (!F[s][v][i] || !F[t][v][i]) continue;
          double d = E.fd(v, i / m, i % m);
          r.value = std::max(r.value, d);
          if (d > M + kTol && r.pass) {
            r.pass = false;
            std::vector<int> left(path.begin(), path.begin() + k + 1), right(path.begin() + k, path.end());
            std::reverse(right.begin(), right.end());
            auto lay = [&](const std::vector<int>& p) {
              return E.layers(p, E.all_states(p[0], [](double) { return true; }),
                              [&](int, const States& st) { return st; });
            };
            auto Ll = lay(left), Lr = lay(right);
            States one(static_cast<size_t>(m) * m, 0);
            one[i] = 1;
            Ll.back() = one;
            Lr.back() = one;
            auto pl = E.backtrack(left, Ll, i), pr = E.backtrack(right, Lr, i);
            SectionPair w;
            w.K = kappa;
            w.interval = path;
            w.g0 = pl.g0;
            w.g1 = pl.g1;
            for (int q = static_cast<int>(pr.interval.size()) - 2; q >= 0; --q) {
              w.g0.push_back(pr.g0[q]);
              w.g1.push_back(pr.g1[q]);
            }
            r.witness = w;
            r.witness_profile = section_pair_stats(X, w).profile;
            r.growth_ok = growth_bound_holds(r.witness_profile, a, kappa);
          }
        }
      }
    }
  r.note = "value is the largest fibre distance of a kappa-pair over an interval of length tau";
  if (E.beam) r.mode = "beam";
  return r;
}

}  // namespace coarsetree
