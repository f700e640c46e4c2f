#include "coarsetree/coarse.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace coarsetree {

Subset make_subset(std::vector<Vid> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool contains(const Subset& A, Vid x) { return std::binary_search(A.begin(), A.end(), x); }

double dist_to_set(const DistanceMatrix& d, Vid x, const Subset& A) {
  double m = kInf;
  const double* r = d.row(x);
  for (Vid a : A) m = std::min(m, r[a]);
  return m;
}

double set_diameter(const DistanceMatrix& d, const Subset& A) {
  double m = 0;
  for (Vid a : A)
    for (Vid b : A) m = std::max(m, d(a, b));
  return m;
}

Subset neighborhood(const DistanceMatrix& d, const Subset& A, double R) {
  Subset out;
  for (Vid x = 0; x < d.size(); ++x)
    if (dist_to_set(d, x, A) <= R + kTol) out.push_back(x);
  return out;
}

Subset set_union(const Subset& A, const Subset& B) {
  Subset out;
  std::set_union(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(out));
  return out;
}

Subset set_intersection(const Subset& A, const Subset& B) {
  Subset out;
  std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(out));
  return out;
}

Quasiconvexity quasiconvexity_constant(const DistanceMatrix& d, const Subset& A) {
  if (A.empty()) throw PreconditionError("quasiconvexity of an empty set");
  Quasiconvexity q;
  q.a = q.b = q.far = A.front();
  std::vector<double> toA(d.size());
  for (Vid x = 0; x < d.size(); ++x) toA[x] = dist_to_set(d, x, A);
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = i + 1; j < A.size(); ++j) {
      Vid a = A[i], b = A[j];
      double dab = d(a, b);
      for (Vid x = 0; x < d.size(); ++x)
        if (d(a, x) + d(x, b) <= dab + kTol && toA[x] > q.lambda + kTol) {
          q.lambda = toA[x];
          q.a = a;
          q.b = b;
          q.far = x;
        }
    }
  return q;
}

static Subset geodesic_union(const DistanceMatrix& d, const Subset& A) {
  std::vector<char> in(d.size(), 0);
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = i; j < A.size(); ++j) {
      double dab = d(A[i], A[j]);
      for (Vid x = 0; x < d.size(); ++x)
        if (d(A[i], x) + d(x, A[j]) <= dab + kTol) in[x] = 1;
    }
  Subset out;
  for (Vid x = 0; x < d.size(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

Subset quasiconvex_hull(const DistanceMatrix& d, const Subset& A, double eps) {
  if (eps < 0) throw PreconditionError("hull radius must be nonnegative");
  if (A.empty()) return {};
  return neighborhood(d, geodesic_union(d, A), eps);
}

Subset quasiconvex_hull_within(const MetricGraph& g, const Subset& host, const Subset& A, double eps) {
  MetricGraph h = g.induced(host);
  DistanceMatrix dh = shortest_path_metric(h);
  Subset loc;
  for (Vid a : A) {
    auto it = std::lower_bound(host.begin(), host.end(), a);
    if (it == host.end() || *it != a) throw PreconditionError("hull seed outside host");
    loc.push_back(static_cast<Vid>(it - host.begin()));
  }
  Subset out;
  for (Vid x : quasiconvex_hull(dh, loc, eps)) out.push_back(host[x]);
  return make_subset(out);
}

ProjectionMap nearest_point_projection(const MetricGraph& g, const DistanceMatrix& d, const Subset& A) {
  if (A.empty()) throw PreconditionError("projection onto an empty set");
  ProjectionMap P;
  P.image.resize(d.size());
  for (Vid x = 0; x < d.size(); ++x) {
    const double* r = d.row(x);
    Vid best = A.front();
    for (Vid a : A)
      if (r[a] < r[best] - kTol) best = a;
    P.image[x] = best;
  }
  for (const auto& e : g.edges()) {
    double v = d(P.image[e.a], P.image[e.b]) / (d(e.a, e.b) + 1.0);
    if (v > P.L_star + kTol) {
      P.L_star = v;
      P.wx = e.a;
      P.wy = e.b;
    }
  }
  return P;
}

Subset project_set(const ProjectionMap& P, const Subset& B) {
  std::vector<Vid> out;
  for (Vid b : B) out.push_back(P.image[b]);
  return make_subset(out);
}

double hausdorff_distance(const DistanceMatrix& d, const Subset& A, const Subset& B) {
  if (A.empty() || B.empty()) return (A.empty() && B.empty()) ? 0.0 : kInf;
  double h = 0;
  for (Vid a : A) h = std::max(h, dist_to_set(d, a, B));
  for (Vid b : B) h = std::max(h, dist_to_set(d, b, A));
  return h;
}

Coboundedness coboundedness(const MetricGraph& g, const DistanceMatrix& d, const Subset& A, const Subset& B) {
  if (A.empty() || B.empty()) throw PreconditionError("coboundedness of an empty set");
  Coboundedness c;
  auto PA = nearest_point_projection(g, d, A);
  auto PB = nearest_point_projection(g, d, B);
  c.diam_PA_B = set_diameter(d, project_set(PA, B));
  c.diam_PB_A = set_diameter(d, project_set(PB, A));
  c.C = std::max(c.diam_PA_B, c.diam_PB_A);
  return c;
}

CoarseConstants map_distortion(const std::vector<Vid>& f, const DistanceMatrix& dX, const DistanceMatrix& dY,
                               DistortionTolerance tol) {
  if (static_cast<int>(f.size()) != dX.size()) throw PreconditionError("map is not total");
  CoarseConstants c;
  c.L = 0;
  int n = dX.size();
  std::map<double, double> tab;
  double worst_low = -1;
  for (Vid x = 0; x < n; ++x)
    for (Vid y = x + 1; y < n; ++y) {
      double a = dX(x, y), b = dY(f[x], f[y]);
      c.L = std::max(c.L, b / a);
      c.L0 = std::max(c.L0, b / (a + 1.0));
      double low = 0.5 * (-b + std::sqrt(b * b + 4 * a));
      c.lower_L = std::max(c.lower_L, low);
      double key = std::round(a * 1e9) / 1e9;
      auto [it, fresh] = tab.emplace(key, b);
      if (!fresh) it->second = std::max(it->second, b);
      bool collapsed = a > tol.eps_tol && b <= tol.eps_tol;
      if (collapsed && c.qi_embedding) {
        c.qi_embedding = false;
        c.wx = x;
        c.wy = y;
      }
      if (c.qi_embedding && low > worst_low) {
        worst_low = low;
        c.wx = x;
        c.wy = y;
      }
    }
  if (n <= 1) c.L = 1;
  c.L0 = std::max(c.L0, c.lower_L);
  if (c.L0 > tol.L_tol) c.qi_embedding = false;
  for (Vid x = 0; x < n; ++x)
    for (Vid y = x + 1; y < n; ++y) c.eps = std::max(c.eps, dY(f[x], f[y]) - c.L * dX(x, y));
  c.eps = c.eps < kTol ? 0 : c.eps;
  double run = 0;
  for (auto [t, m] : tab) {
    run = std::max(run, m);
    c.eta.push_back({t, run});
  }
  return c;
}

}  // namespace coarsetree
