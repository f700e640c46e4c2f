#include "coarsetree/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coarsetree {

double gromov_product(const DistanceMatrix& d, Vid y, Vid z, Vid x) {
  return 0.5 * (d(x, y) + d(x, z) - d(y, z));
}

const char* to_string(DeltaMode m) {
  switch (m) {
    case DeltaMode::FourPoint: return "four_point";
    case DeltaMode::SlimIntervals: return "slim_intervals";
    case DeltaMode::SlimExhaustive: return "slim_exhaustive";
  }
  return "?";
}

DeltaMode delta_mode_from_string(const std::string& s) {
  if (s == "four_point") return DeltaMode::FourPoint;
  if (s == "slim_intervals") return DeltaMode::SlimIntervals;
  if (s == "slim_exhaustive") return DeltaMode::SlimExhaustive;
  throw PreconditionError("unknown delta mode: " + s);
}

static double snap(double x) { return x < kTol ? 0.0 : x; }

DeltaResult delta_four_point(const DistanceMatrix& d) {
  DeltaResult r;
  r.mode = DeltaMode::FourPoint;
  int n = d.size();
  double best = 0.0;
  std::array<Vid, 4> wit{0, 0, 0, 0};
  for (Vid a = 0; a < n; ++a)
    for (Vid b = a + 1; b < n; ++b) {
      double dab = d(a, b);
      for (Vid c = b + 1; c < n; ++c) {
        double dac = d(a, c), dbc = d(b, c);
        const double* rc = d.row(c);
        for (Vid e = c + 1; e < n; ++e) {
          double s1 = dab + rc[e];
          double s2 = dac + d(b, e);
          double s3 = dbc + d(a, e);
          double hi = std::max({s1, s2, s3});
          double lo = std::min({s1, s2, s3});
          double mid = s1 + s2 + s3 - hi - lo;
          double v = 0.5 * (hi - mid);
          if (v > best + kTol) {
            best = v;
            wit = {a, b, c, e};
          }
        }
      }
    }
  // pick base point and labelling so the witness matches the product form
  if (best > 0.0) {
    auto [a, b, c, e] = wit;
    std::array<Vid, 4> q{a, b, c, e};
    double top = -1.0;
    std::array<Vid, 4> bw = q;
    std::sort(q.begin(), q.end());
    do {
      Vid w = q[0], x = q[1], y = q[2], z = q[3];
      double v = std::min(gromov_product(d, x, z, w), gromov_product(d, y, z, w)) - gromov_product(d, x, y, w);
      if (v > top + kTol) {
        top = v;
        bw = {w, x, y, z};
      }
    } while (std::next_permutation(q.begin(), q.end()));
    wit = bw;
  }
  r.delta = snap(best);
  r.witness = wit;
  return r;
}

std::uint64_t count_geodesics(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v) {
  auto iv = interval_set(d, u, v);
  std::vector<std::uint64_t> cnt(g.size(), 0);
  std::vector<char> in(g.size(), 0);
  for (Vid w : iv) in[w] = 1;
  cnt[u] = 1;
  for (Vid w : iv) {
    if (w == u) continue;
    std::uint64_t c = 0;
    for (auto [y, wt] : g.neighbors(w))
      if (in[y] && std::abs(d(u, y) + wt - d(u, w)) <= kTol) {
        c = (c > UINT64_MAX - cnt[y]) ? UINT64_MAX : c + cnt[y];
      }
    cnt[w] = c;
  }
  return cnt[v];
}

// bottleneck dynamic program over the geodesic DAG from u to v
static void bottleneck_all(const MetricGraph& g, const DistanceMatrix& d, Vid u, const std::vector<Vid>& iv,
                           const std::vector<char>& in, std::vector<double>& out) {
  int n = g.size();
  out.assign(n, 0.0);
  std::vector<double> best(n);
  // predecessor lists in the DAG
  std::vector<std::vector<Vid>> pred(iv.size());
  std::vector<int> pos(n, -1);
  for (size_t i = 0; i < iv.size(); ++i) pos[iv[i]] = static_cast<int>(i);
  for (size_t i = 0; i < iv.size(); ++i) {
    Vid w = iv[i];
    for (auto [y, wt] : g.neighbors(w))
      if (in[y] && std::abs(d(u, y) + wt - d(u, w)) <= kTol) pred[i].push_back(pos[y]);
  }
  for (Vid p = 0; p < n; ++p) {
    const double* rp = d.row(p);
    for (size_t i = 0; i < iv.size(); ++i) {
      double here = rp[iv[i]];
      if (pred[i].empty()) {
        best[i] = here;
        continue;
      }
      double m = -1.0;
      for (int j : pred[i]) m = std::max(m, best[j]);
      best[i] = std::min(here, m);
    }
    out[p] = best[iv.size() - 1];
  }
}

std::vector<double> farthest_geodesic_distance(const MetricGraph& g, const DistanceMatrix& d, Vid u, Vid v) {
  auto iv = interval_set(d, u, v);
  std::vector<char> in(g.size(), 0);
  for (Vid w : iv) in[w] = 1;
  std::vector<double> out;
  bottleneck_all(g, d, u, iv, in, out);
  return out;
}

DeltaResult delta_slim(const MetricGraph& g, const DistanceMatrix& d, DeltaMode mode, std::uint64_t geodesic_cap) {
  if (mode == DeltaMode::FourPoint) return delta_four_point(d);
  int n = g.size();
  DeltaResult r;
  r.mode = mode;
  r.witness = {0, 0, 0, 0};
  std::vector<std::vector<Vid>> ivs(static_cast<size_t>(n) * n);
  for (Vid x = 0; x < n; ++x)
    for (Vid y = x; y < n; ++y) ivs[static_cast<size_t>(x) * n + y] = interval_set(d, x, y);
  auto iv = [&](Vid a, Vid b) -> const std::vector<Vid>& {
    return a <= b ? ivs[static_cast<size_t>(a) * n + b] : ivs[static_cast<size_t>(b) * n + a];
  };
  if (mode == DeltaMode::SlimExhaustive) {
    for (Vid x = 0; x < n; ++x)
      for (Vid y = x + 1; y < n; ++y) {
        std::uint64_t c = count_geodesics(g, d, x, y);
        r.max_geodesics = std::max(r.max_geodesics, c);
        if (geodesic_cap && c > geodesic_cap)
          throw OverflowError("geodesic count between " + g.label(x) + " and " + g.label(y) + " exceeds cap " +
                              std::to_string(geodesic_cap));
      }
  }
  // M[w][p]: distance from p to the side z-w (interval, or worst geodesic)
  std::vector<double> M(static_cast<size_t>(n) * n);
  std::vector<char> in(n);
  std::vector<double> tmp;
  double best = 0.0;
  for (Vid z = 0; z < n; ++z) {
    for (Vid w = 0; w < n; ++w) {
      double* mw = M.data() + static_cast<size_t>(w) * n;
      const auto& I = iv(z, w);
      if (mode == DeltaMode::SlimIntervals) {
        for (Vid p = 0; p < n; ++p) {
          const double* rp = d.row(p);
          double m = kInf;
          for (Vid q : I) m = std::min(m, rp[q]);
          mw[p] = m;
        }
      } else {
        std::fill(in.begin(), in.end(), 0);
        for (Vid q : I) in[q] = 1;
        // the DAG is rooted at z; I is sorted by distance from min(z,w)
        std::vector<Vid> ord = I;
        std::stable_sort(ord.begin(), ord.end(), [&](Vid a, Vid b) { return d(z, a) < d(z, b) - kTol; });
        bottleneck_all(g, d, z, ord, in, tmp);
        std::copy(tmp.begin(), tmp.end(), mw);
      }
    }
    for (Vid x = 0; x < n; ++x)
      for (Vid y = x + 1; y < n; ++y) {
        const double* mx = M.data() + static_cast<size_t>(x) * n;
        const double* my = M.data() + static_cast<size_t>(y) * n;
        for (Vid p : iv(x, y)) {
          double v = std::min(mx[p], my[p]);
          if (v > best + kTol) {
            best = v;
            r.witness = {x, y, z, p};
          }
        }
      }
  }
  r.delta = snap(best);
  return r;
}

DeltaResult delta_hyperbolicity(const MetricGraph& g, const DistanceMatrix& d, DeltaMode mode,
                                std::uint64_t geodesic_cap) {
  if (mode == DeltaMode::FourPoint) return delta_four_point(d);
  return delta_slim(g, d, mode, geodesic_cap);
}

}  // namespace coarsetree
