#include <cmath>
#include <random>

#include "coarsetree/hyperbolicity.hpp"
#include "coarsetree/metric_graph.hpp"
#include "coarsetree/quasigeodesic.hpp"
#include "coarsetree/rips.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coarsetree;

TEST_CASE("shortest path metric matches Floyd-Warshall") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = oracle::random_connected(12, 0.15, rng, true);
    auto d = shortest_path_metric(g, true);
    auto f = oracle::floyd(g);
    for (int i = 0; i < g.size(); ++i)
      for (int j = 0; j < g.size(); ++j) CHECK(d(i, j) == doctest::Approx(f[i][j]));
  }
}

TEST_CASE("shortest path metric small cases") {
  auto p3 = path_graph(3);
  CHECK(shortest_path_metric(p3)(0, 2) == 2);
  MetricGraph one(1);
  auto d1 = shortest_path_metric(one);
  CHECK(d1.size() == 1);
  CHECK(d1(0, 0) == 0);
  MetricGraph tri(3);
  tri.add_edge(0, 1, 1);
  tri.add_edge(1, 2, 1);
  tri.add_edge(0, 2, 3);
  CHECK(shortest_path_metric(tri)(0, 2) == 2);
}

TEST_CASE("disconnected input names a stray component") {
  MetricGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  try {
    shortest_path_metric(g);
    FAIL("expected rejection");
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()).find("{2,3}") != std::string::npos);
  }
}

TEST_CASE("graph construction rejects loops and bad weights") {
  MetricGraph g(2);
  CHECK_THROWS_AS(g.add_edge(0, 0), StructuralError);
  CHECK_THROWS_AS(g.add_edge(0, 1, 0.0), StructuralError);
  CHECK_THROWS_AS(g.add_edge(0, 1, -1.0), StructuralError);
}

TEST_CASE("canonical geodesic") {
  auto p = path_graph(5);
  auto d = shortest_path_metric(p);
  auto g0 = canonical_geodesic(p, d, 2, 2);
  CHECK(g0.vertices.size() == 1);
  CHECK(g0.length == 0);
  auto g1 = canonical_geodesic(p, d, 0, 4);
  CHECK(g1.vertices == std::vector<Vid>{0, 1, 2, 3, 4});

  auto c4 = cycle_graph(4);
  auto dc = shortest_path_metric(c4);
  auto all = oracle::all_geodesics(c4, dc, 0, 2);
  REQUIRE(all.size() == 2);
  auto least = std::min(all[0], all[1]);
  CHECK(canonical_geodesic(c4, dc, 0, 2).vertices == least);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto g = oracle::random_connected(10, 0.2, rng, true);
    auto dg = shortest_path_metric(g);
    for (Vid u = 0; u < 10; ++u)
      for (Vid v = 0; v < 10; ++v) {
        auto geo = canonical_geodesic(g, dg, u, v);
        CHECK(is_edge_path(g, geo.vertices));
        CHECK(path_length(g, geo.vertices) == doctest::Approx(dg(u, v)));
        auto all2 = oracle::all_geodesics(g, dg, u, v);
        CHECK(geo.vertices == *std::min_element(all2.begin(), all2.end()));
      }
  }
}

TEST_CASE("interval set") {
  auto c6 = cycle_graph(6);
  auto d = shortest_path_metric(c6);
  CHECK(interval_set(d, 0, 3).size() == 6);
  auto I = interval_set(d, 0, 2);
  CHECK(I == std::vector<Vid>{0, 1, 2});
  for (Vid w : I) CHECK(d(0, w) <= d(0, 2));
}

TEST_CASE("gromov product") {
  std::mt19937_64 rng(11);
  auto t = oracle::random_tree(15, rng);
  auto d = shortest_path_metric(t);
  for (Vid x = 0; x < 15; ++x)
    for (Vid y = 0; y < 15; ++y)
      for (Vid z = 0; z < 15; ++z) {
        double gpv = gromov_product(d, y, z, x);
        CHECK(gpv == doctest::Approx(oracle::dist_set(d, x, oracle::interval(d, y, z))).epsilon(1e-9));
        CHECK(gpv == doctest::Approx(gromov_product(d, z, y, x)));
        CHECK(gpv >= -1e-9);
        CHECK(gpv <= std::min(d(x, y), d(x, z)) + 1e-9);
      }
  CHECK(gromov_product(d, 3, 3, 0) == doctest::Approx(d(0, 3)));
}

TEST_CASE("gromov product is bounded by the distance to the interval in graphs") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    auto g = oracle::random_connected(14, 0.15, rng);
    auto d = shortest_path_metric(g);
    for (Vid x = 0; x < 14; ++x)
      for (Vid y = 0; y < 14; ++y)
        for (Vid z = 0; z < 14; ++z)
          CHECK(gromov_product(d, y, z, x) <= oracle::dist_set(d, x, oracle::interval(d, y, z)) + 1e-9);
  }
}

// four points o,p,q,z on the graph of |x| with Euclidean distances
static DistanceMatrix abs_graph_quadruple(double n) {
  double o[2] = {0, 0}, p[2] = {-n, n}, q[2] = {n, n}, z[2] = {2 * n, 2 * n};
  const double* pts[4] = {o, p, q, z};
  DistanceMatrix d(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d.at(i, j) = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
  return d;
}

TEST_CASE("gromov product on the |x| graph quadruple") {
  for (int n = 1; n <= 3; ++n) {
    auto d = abs_graph_quadruple(n);
    CHECK(gromov_product(d, 1, 2, 0) == doctest::Approx((std::sqrt(2.0) - 1) * n).epsilon(1e-12));
  }
}

TEST_CASE("four point delta matches the ordered-quadruple oracle") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 15; ++t) {
    auto g = oracle::random_connected(9, 0.2, rng, t % 2);
    auto d = shortest_path_metric(g);
    auto r = delta_four_point(d);
    CHECK(r.delta == doctest::Approx(oracle::four_point(d)));
    auto [w, x, y, z] = r.witness;
    if (r.delta > 0)
      CHECK(std::min(gromov_product(d, x, z, w), gromov_product(d, y, z, w)) - gromov_product(d, x, y, w) ==
            doctest::Approx(r.delta));
  }
}

TEST_CASE("trees are 0-hyperbolic in every mode") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 5; ++t) {
    auto g = oracle::random_tree(30, rng);
    auto d = shortest_path_metric(g);
    for (auto m : {DeltaMode::FourPoint, DeltaMode::SlimIntervals, DeltaMode::SlimExhaustive})
      CHECK(delta_hyperbolicity(g, d, m).delta == 0.0);
  }
}

TEST_CASE("slim_intervals on C6 matches the brute-force triple oracle") {
  auto c6 = cycle_graph(6);
  auto d = shortest_path_metric(c6);
  auto r = delta_slim(c6, d, DeltaMode::SlimIntervals);
  CHECK(r.delta == doctest::Approx(oracle::slim_intervals(d)));
  auto ex = delta_slim(c6, d, DeltaMode::SlimExhaustive);
  CHECK(ex.delta == doctest::Approx(oracle::slim_geodesic_triples(c6, d)));
  CHECK(ex.max_geodesics == 2);
}

TEST_CASE("slim_exhaustive matches explicit geodesic triples") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 12; ++t) {
    auto g = oracle::random_connected(8, 0.25, rng);
    auto d = shortest_path_metric(g);
    auto ex = delta_slim(g, d, DeltaMode::SlimExhaustive);
    CHECK(ex.delta == doctest::Approx(oracle::slim_geodesic_triples(g, d)));
    CHECK(delta_slim(g, d, DeltaMode::SlimIntervals).delta == doctest::Approx(oracle::slim_intervals(d)));
  }
}

TEST_CASE("slim_exhaustive reports overflow past the cap") {
  auto g = grid_graph(4, 4);
  auto d = shortest_path_metric(g);
  CHECK_THROWS_AS(delta_slim(g, d, DeltaMode::SlimExhaustive, 5), OverflowError);
  CHECK(count_geodesics(g, d, 0, 15) == 20);
}

TEST_CASE("gromov and rips constants compare as expected") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    auto g = oracle::random_connected(12, 0.12, rng);
    auto d = shortest_path_metric(g);
    double dg = delta_four_point(d).delta;
    double ri = delta_slim(g, d, DeltaMode::SlimIntervals).delta;
    double re = delta_slim(g, d, DeltaMode::SlimExhaustive).delta;
    CHECK(ri <= re + 1e-9);
    CHECK(dg <= 3 * re + 1e-9);
    CHECK(re <= 2 * dg + 1e-9);
  }
}

TEST_CASE("rips graph") {
  auto p = path_graph(3);
  auto d = shortest_path_metric(p);
  auto r0 = rips_graph(d, 0.5);
  CHECK(r0.edge_count == 0);
  CHECK_FALSE(r0.connected);
  auto r1 = rips_graph(d, 1);
  CHECK(r1.edge_count == 2);
  CHECK(r1.connected);
  CHECK(shortest_path_metric(r1.graph)(0, 2) == 2);

  std::mt19937_64 rng(41);
  auto g = oracle::random_connected(20, 0.1, rng, true);
  auto dg = shortest_path_metric(g);
  std::vector<double> all;
  for (int i = 0; i < 20; ++i)
    for (int j = i + 1; j < 20; ++j) all.push_back(dg(i, j));
  std::sort(all.begin(), all.end());
  double R = all[all.size() / 2];
  int cnt = 0;
  for (double x : all) cnt += x <= R;
  CHECK(rips_graph(dg, R).edge_count == cnt);
  CHECK_THROWS_AS(rips_graph(dg, -1), PreconditionError);
}

TEST_CASE("rips graph is monotone in R") {
  std::mt19937_64 rng(43);
  auto g = oracle::random_connected(15, 0.1, rng, true);
  auto d = shortest_path_metric(g);
  for (double R1 = 0; R1 < 8; R1 += 1.5) {
    auto a = rips_graph(d, R1), b = rips_graph(d, R1 + 1);
    for (const auto& e : a.graph.edges()) CHECK(edge_weight(b.graph, e.a, e.b) == 1.0);
  }
}

TEST_CASE("net approximation") {
  auto g = cycle_graph(7);
  auto d = shortest_path_metric(g);
  std::vector<Vid> all{0, 1, 2, 3, 4, 5, 6};
  auto na = net_approximation(g, d, all, 1);
  CHECK(na.measured_K == 1);
  CHECK(na.measured_eps == 0);

  auto p = path_graph(11);
  auto dp = shortest_path_metric(p);
  std::vector<Vid> even{0, 2, 4, 6, 8, 10};
  auto ne = net_approximation(p, dp, even, 3);
  CHECK(ne.Z.connected());
  CHECK(ne.within_bound);
  auto dz = shortest_path_metric(ne.Z);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      CHECK(dz(i, j) <= ne.measured_K * dp(even[i], even[j]) + 1e-9);
      CHECK(dp(even[i], even[j]) <= ne.measured_K * dz(i, j) + 1e-9);
    }

  auto p3 = path_graph(3);
  CHECK_THROWS_AS(net_approximation(p3, shortest_path_metric(p3), {0}, 1), PreconditionError);
}

TEST_CASE("quasigeodesic constant and sampler") {
  auto p = path_graph(6);
  auto d = shortest_path_metric(p);
  CHECK(quasigeodesic_constant(p, d, {0, 1, 2, 3}) == 1);
  // a back-and-forth step: length 2 between equal endpoints
  CHECK(quasigeodesic_constant(p, d, {0, 1, 0}) == doctest::Approx(std::sqrt(2.0)));
  Rng rng(5);
  auto g = grid_graph(5, 5);
  auto dg = shortest_path_metric(g);
  for (int t = 0; t < 30; ++t) {
    Vid u = static_cast<Vid>(draw(rng, 25)), v = static_cast<Vid>(draw(rng, 25));
    auto q = sample_quasigeodesic(g, dg, u, v, 3.0, rng);
    CHECK(q.front() == u);
    CHECK(q.back() == v);
    CHECK(is_edge_path(g, q));
    CHECK(quasigeodesic_constant(g, dg, q) <= 3.0 + 1e-9);
  }
}
