#include <algorithm>
#include <cmath>

#include "coarsetree/combing.hpp"
#include "coarsetree/quasigeodesic.hpp"
#include "coarsetree/scenes.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coarsetree;

namespace {

bool all_over(const TotalSpace& X, const std::vector<Vid>& p, int v) {
  return std::all_of(p.begin(), p.end(), [&](Vid x) { return X.pi(x) == BaseLoc{false, v}; });
}

double hd(const DistanceMatrix& d, std::vector<Vid> a, std::vector<Vid> b) {
  return hausdorff_distance(d, make_subset(std::move(a)), make_subset(std::move(b)));
}

// n x cols grid with vertex r*cols+c
MetricGraph grid(int rows, int cols) { return grid_graph(rows, cols); }

Subset columns(int rows, int cols, int c0, int c1) {
  Subset s;
  for (int r = 0; r < rows; ++r)
    for (int c = c0; c <= c1; ++c) s.push_back(r * cols + c);
  return make_subset(s);
}

}  // namespace

TEST_CASE("carpet paths") {
  auto X = build_total_space(scenes::doubling_bundle(4, 1));
  auto alpha = X->fiber(4);
  auto A = build_ladder(*X, 4, alpha, 1);
  auto& g = X->graph();
  auto self = carpet_path(*X, A, alpha[3], alpha[3], 1);
  CHECK(self.vertices() == std::vector<Vid>{alpha[3]});
  CHECK(verify_combing_path(g, self));

  auto narrow = carpet_path(*X, A, X->fiber_vertex(0, 0), X->fiber_vertex(0, 1), 1);
  CHECK(verify_combing_path(g, narrow));
  CHECK(all_over(*X, narrow.vertices(), 0));

  auto wide = carpet_path(*X, A, alpha.front(), alpha.back(), 1);
  CHECK(verify_combing_path(g, wide));
  CHECK(wide.provenance == "carpet");
  CHECK(wide.length(g) == doctest::Approx(2 * 4 + 1));
  CHECK(wide.length(g) >= X->distances()(alpha.front(), alpha.back()) - 1e-9);
  bool reaches_narrow = false;
  for (Vid x : wide.vertices()) reaches_narrow |= X->pi(x) == BaseLoc{false, 0};
  CHECK(reaches_narrow);
}

TEST_CASE("ladder paths") {
  auto X = build_total_space(scenes::doubling_bundle(4, 1));
  auto alpha = X->fiber(4);
  auto L = build_ladder(*X, 4, alpha, 1);
  auto& g = X->graph();
  auto s = L.section_through(*X, 4, 8);
  auto flat = ladder_path(*X, L, s.at[4], s.at[1], 1);
  CHECK(verify_combing_path(g, flat));
  for (const auto& seg : flat.segments) CHECK(seg.horizontal);
  CHECK(flat.length(g) == doctest::Approx(3));

  auto adj = ladder_path(*X, L, alpha[5], alpha[6], 1);
  CHECK(adj.provenance == "ladder-type1");
  CHECK(adj.length(g) == doctest::Approx(1));

  auto far = ladder_path(*X, L, alpha.front(), alpha.back(), 1);
  CHECK(verify_combing_path(g, far));
  CHECK(far.provenance == "ladder-type2");
  CHECK(far.length(g) < path_length(g, alpha));
}

TEST_CASE("chain amalgam of a single piece and of two glued trees") {
  auto g = path_graph(6);
  auto one = chain_amalgam_path(g, {{0, 1, 2, 3, 4, 5}}, 1, 4);
  CHECK(one.vertices() == std::vector<Vid>{1, 2, 3, 4});

  MetricGraph t(7);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 6}}) t.add_edge(a, b);
  auto c = chain_amalgam_path(t, {{0, 1, 2, 3}, {3, 4, 5, 6}}, 0, 5);
  CHECK(verify_combing_path(t, c));
  auto v = c.vertices();
  CHECK(std::find(v.begin(), v.end(), 3) != v.end());
  CHECK(v == std::vector<Vid>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("chain of grids against exhaustive transit search") {
  const int rows = 4, cols = 10;
  auto g = grid(rows, cols);
  std::vector<Subset> pieces{columns(rows, cols, 0, 3), columns(rows, cols, 3, 6), columns(rows, cols, 6, 9)};
  auto chk = check_chain(g, pieces);
  REQUIRE(chk.separators.size() == 2);
  CHECK(chk.separators[0] == columns(rows, cols, 3, 3));
  auto mid = g.induced(pieces[1]);
  auto dm = oracle::floyd(mid);
  auto loc = [&](Vid x) { return static_cast<int>(std::lower_bound(pieces[1].begin(), pieces[1].end(), x) - pieces[1].begin()); };
  double best = kInf;
  for (Vid a : chk.separators[0])
    for (Vid b : chk.separators[1]) best = std::min(best, dm[loc(a)][loc(b)]);
  REQUIRE(chk.min_distance.size() == 1);
  CHECK(chk.min_distance[0] == best);
  CHECK(chk.transit_distance[0] <= best + chk.C + 1e-9);
  const auto& d = shortest_path_metric(g);
  for (Vid x : pieces[0])
    for (Vid y : pieces[2]) {
      auto c = chain_amalgam_path(g, pieces, chk, x, y);
      CHECK(verify_combing_path(g, c));
      CHECK(c.length(g) <= d(x, y) + 2 * chk.C + 2 * (rows - 1) + 1e-9);
    }

  auto bad = g;
  bad.add_edge(0, 9);
  CHECK_THROWS_AS(check_chain(bad, pieces), StructuralError);
}

TEST_CASE("full combing on simple scenes") {
  auto S = build_total_space(scenes::single_vertex(cycle_graph(8)));
  auto f = full_combing_path(*S, 0, 4, {});
  CHECK(f.path.length(S->graph()) == 4);
  CHECK(all_over(*S, f.path.vertices(), 0));

  auto C = build_total_space(scenes::constant_bundle(1, path_graph(6)));
  auto h = full_combing_path(*C, C->fiber_vertex(0, 1), C->fiber_vertex(1, 4), {});
  CHECK(verify_combing_path(C->graph(), h.path));
  CHECK(h.path.length(C->graph()) == doctest::Approx(4));
  CHECK_FALSE(h.hop_over_K);
}

TEST_CASE("full combing on the acylindrical chain tracks geodesics") {
  auto X = build_total_space(scenes::acylindrical_chain(4));
  const auto& g = X->graph();
  const auto& d = X->distances();
  CombParams p;
  double worst = 0;
  std::vector<Vid> fv;
  for (int v = 0; v < X->tree().size(); ++v)
    for (Vid x : X->fiber(v)) fv.push_back(x);
  for (std::size_t i = 0; i < fv.size(); i += 2)
    for (std::size_t j = 1; j < fv.size(); j += 3) {
      Vid x = fv[i], y = fv[j];
      auto c = full_combing_path(*X, x, y, p);
      CHECK(verify_combing_path(g, c.path));
      auto geo = canonical_geodesic(g, d, x, y).vertices;
      worst = std::max(worst, hd(d, c.path.vertices(), geo));
    }
  CHECK(worst <= 3);
}

TEST_CASE("Bowditch constant") {
  double m = bowditch_m(1);
  CHECK(2 * (6 + std::log2(m + 2)) <= m + 1e-9);
  CHECK(2 * (6 + std::log2(m + 2)) == doctest::Approx(m).epsilon(1e-9));
  double m3 = bowditch_m(3);
  CHECK(6 * (6 + std::log2(m3 + 2)) <= m3 + 1e-9);
  CHECK(m3 > m);
}

TEST_CASE("geodesic combing of a tree") {
  std::mt19937_64 rng(5);
  auto t = oracle::random_tree(12, rng, false);
  auto d = shortest_path_metric(t);
  PathFamily fam;
  std::vector<Vid> net;
  for (Vid x = 0; x < t.size(); ++x) {
    net.push_back(x);
    for (Vid y = x + 1; y < t.size(); ++y) fam[{x, y}] = canonical_geodesic(t, d, x, y).vertices;
  }
  auto r = verify_slim_combing(t, d, net, fam, 0);
  CHECK(r.D2 == 0);
  CHECK(r.measured_delta == 0);
  CHECK(r.m_ok);
  CHECK(r.sound);
  CHECK(std::isfinite(r.k));
  fam.erase({0, 1});
  CHECK_THROWS_AS(verify_slim_combing(t, d, net, fam, 0), StructuralError);
}

TEST_CASE("planted detour is the D2 witness") {
  MetricGraph t(11);
  for (int i = 0; i < 7; ++i) t.add_edge(i, i + 1);
  t.add_edge(3, 8);
  t.add_edge(8, 9);
  t.add_edge(9, 10);
  auto d = shortest_path_metric(t);
  PathFamily fam;
  std::vector<Vid> net;
  for (Vid x = 0; x < 11; ++x) {
    net.push_back(x);
    for (Vid y = x + 1; y < 11; ++y) fam[{x, y}] = canonical_geodesic(t, d, x, y).vertices;
  }
  fam[{0, 7}] = {0, 1, 2, 3, 8, 9, 10, 9, 8, 3, 4, 5, 6, 7};
  auto r = verify_slim_combing(t, d, net, fam, 0);
  CHECK(r.D2 == 3);
  CHECK(r.wp == 10);
  CHECK(std::min(r.wx, r.wy) == 0);
  CHECK(std::max(r.wx, r.wy) == 7);
}

TEST_CASE("cut and replace") {
  auto X = build_total_space(scenes::separated_tripod());
  std::vector<int> S{0, 1};
  std::vector<Vid> inside{X->fiber_vertex(0, 0), X->edge_vertex(0, 0), X->fiber_vertex(1, 0), X->fiber_vertex(1, 1)};
  CHECK(cut_and_replace(*X, S, inside) == inside);
  std::vector<Vid> exc{X->fiber_vertex(0, 3), X->fiber_vertex(0, 4), X->edge_vertex(1, 0), X->fiber_vertex(2, 0),
                       X->fiber_vertex(2, 1), X->edge_vertex(1, 1), X->fiber_vertex(0, 5), X->fiber_vertex(0, 6)};
  auto c = cut_and_replace(*X, S, exc);
  CHECK(c == std::vector<Vid>{X->fiber_vertex(0, 3), X->fiber_vertex(0, 4), X->fiber_vertex(0, 5),
                              X->fiber_vertex(0, 6)});

  // a geodesic across a pruned doubling branch becomes a quasigeodesic in X_S
  auto D = build_total_space(scenes::doubling_bundle(3, 1));
  std::vector<int> S2{0, 1, 2};
  auto P = D->subtree_piece(S2);
  auto geo = canonical_geodesic(D->graph(), D->distances(), D->fiber_vertex(2, 0), D->fiber_vertex(2, 4)).vertices;
  auto r = cut_and_replace(*D, S2, geo);
  CHECK(r.front() == geo.front());
  CHECK(r.back() == geo.back());
  for (Vid x : r) CHECK(P->local(x) >= 0);
  std::vector<Vid> loc;
  for (Vid x : r) loc.push_back(P->local(x));
  CHECK(is_edge_path(P->graph, loc));
  CHECK(path_length(P->graph, loc) >= P->d(loc.front(), loc.back()) - 1e-9);
  CHECK(std::isfinite(quasigeodesic_constant(P->graph, P->d, loc)));
}

TEST_CASE("consistency probe") {
  auto X = build_total_space(scenes::caterpillar(3));
  std::vector<int> all(X->tree().size());
  for (int i = 0; i < X->tree().size(); ++i) all[i] = i;
  auto whole = consistency_probe(*X, all, {1, 2}, 30, 3);
  for (auto [lam, th] : whole.table) CHECK(th == doctest::Approx(lam));
  auto spine = consistency_probe(*X, scenes::caterpillar_spine(3), {1, 2}, 30, 3);
  for (auto [lam, th] : spine.table) {
    CHECK(th >= lam);
    CHECK(std::isfinite(th));
  }
  auto again = consistency_probe(*X, scenes::caterpillar_spine(3), {1, 2}, 30, 3);
  CHECK(again.table == spine.table);
}

TEST_CASE("small carpet test") {
  auto P = build_total_space(scenes::single_vertex(path_graph(9)));
  auto p = small_carpet_test(*P, 0, P->fiber(0), 1, 1, 1);
  CHECK(p.depth == 0);
  CHECK(p.pass);

  auto D = build_total_space(scenes::doubling_bundle(4, 1));
  auto alpha = D->fiber(4);
  auto r = small_carpet_test(*D, 4, alpha, 1, 1, 1);
  CHECK(r.depth == 4);
  CHECK_FALSE(r.pass);
  CHECK(small_carpet_test(*D, 4, alpha, 1, 1, 4).pass);
  auto shortr = small_carpet_test(*D, 4, {alpha[0], alpha[1]}, 1, 2, 0);
  CHECK(shortr.pass);
}
