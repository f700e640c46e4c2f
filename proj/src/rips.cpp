#include "coarsetree/rips.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coarsetree {

RipsResult rips_graph(const DistanceMatrix& d, double R) {
  if (R < 0) throw PreconditionError("Rips parameter must be nonnegative");
  RipsResult r;
  int n = d.size();
  r.graph = MetricGraph(n);
  for (Vid i = 0; i < n; ++i)
    for (Vid j = i + 1; j < n; ++j)
      if (d(i, j) <= R + kTol) {
        r.graph.add_edge(i, j, 1.0);
        ++r.edge_count;
      }
  r.connected = r.graph.connected();
  return r;
}

NetApproximation net_approximation(const MetricGraph& g, const DistanceMatrix& d, const std::vector<Vid>& Y,
                                   double R) {
  if (Y.empty()) throw PreconditionError("empty net");
  NetApproximation out;
  out.Y = Y;
  out.R = R;
  out.r = std::max(1.0, g.max_edge_weight());
  for (Vid x = 0; x < g.size(); ++x) {
    double m = kInf;
    for (Vid y : Y) m = std::min(m, d(x, y));
    out.net_constant = std::max(out.net_constant, m);
  }
  if (R + kTol < out.r + 2 * out.net_constant) {
    std::ostringstream os;
    os << "net precondition fails: R=" << R << " < r+2D=" << out.r + 2 * out.net_constant;
    throw PreconditionError(os.str());
  }
  int m = static_cast<int>(Y.size());
  out.Z = MetricGraph(m);
  for (int i = 0; i < m; ++i) out.Z.set_label(i, g.label(Y[i]));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (d(Y[i], Y[j]) <= R + kTol) out.Z.add_edge(i, j, 1.0);
  if (!out.Z.connected()) throw PreconditionError("Rips graph on the net is disconnected");
  DistanceMatrix dz = shortest_path_metric(out.Z);
  out.lemma_K = std::max(R, 2.0 / out.r);
  out.lemma_eps = std::max(4 * R, 3.0) + 2 * std::max(1.0, out.r);
  double K = 1.0, eps = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double a = dz(i, j), b = d(Y[i], Y[j]);
      K = std::max({K, a / b, b / a});
      eps = std::max({eps, a - out.lemma_K * b, b / out.lemma_K - a});
    }
  out.measured_K = K;
  out.measured_eps = eps;
  out.within_bound = eps <= out.lemma_eps + kTol;
  return out;
}

}  // namespace coarsetree
