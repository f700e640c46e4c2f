#include "coarsetree/scenes.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace coarsetree::scenes {

namespace {

std::vector<Vid> identity_map(int n) {
  std::vector<Vid> f(n);
  for (int i = 0; i < n; ++i) f[i] = i;
  return f;
}

MetricGraph point() { return MetricGraph(1); }

void add_edge_space(TreeOfSpaces& t, int v, int w, MetricGraph g, std::vector<Vid> fv, std::vector<Vid> fw) {
  t.tree.add_edge(v, w);
  t.edge_spaces.push_back(std::move(g));
  t.inc_first.push_back(std::move(fv));
  t.inc_second.push_back(std::move(fw));
}

TreeOfSpaces base_path(int length) {
  TreeOfSpaces t;
  for (int i = 0; i <= length; ++i) t.tree.add_vertex();
  return t;
}

}  // namespace

TreeOfSpaces single_vertex(MetricGraph fibre) {
  TreeOfSpaces t;
  t.tree.add_vertex();
  t.vertex_spaces.push_back(std::move(fibre));
  return t;
}

TreeOfSpaces constant_bundle(int length, const MetricGraph& fibre) {
  auto t = base_path(length);
  for (int i = 0; i <= length; ++i) t.vertex_spaces.push_back(fibre);
  for (int i = 0; i < length; ++i)
    add_edge_space(t, i, i + 1, fibre, identity_map(fibre.size()), identity_map(fibre.size()));
  return t;
}

TreeOfSpaces doubling_bundle(int levels, int base_width) {
  auto t = base_path(levels);
  for (int i = 0; i <= levels; ++i) t.vertex_spaces.push_back(path_graph((base_width << i) + 1));
  for (int i = 0; i < levels; ++i) {
    int n = (base_width << i) + 1;
    std::vector<Vid> up(n);
    for (int j = 0; j < n; ++j) up[j] = 2 * j;
    add_edge_space(t, i, i + 1, path_graph(n), identity_map(n), up);
  }
  return t;
}

TreeOfSpaces contracting_bundle() {
  auto t = base_path(3);
  t.vertex_spaces = {path_graph(3), path_graph(2), point(), point()};
  add_edge_space(t, 0, 1, path_graph(2), {0, 2}, {0, 1});
  add_edge_space(t, 1, 2, point(), {0}, {0});
  add_edge_space(t, 2, 3, point(), {0}, {0});
  return t;
}

TreeOfSpaces acylindrical_chain(int edges) {
  auto t = base_path(edges);
  for (int i = 0; i <= edges; ++i) t.vertex_spaces.push_back(cycle_graph(6));
  for (int i = 0; i < edges; ++i) add_edge_space(t, i, i + 1, point(), {3}, {0});
  return t;
}

TreeOfSpaces acylindrical_tree(const BaseTree& base) {
  base.validate();
  TreeOfSpaces t;
  t.tree = BaseTree();
  for (int v = 0; v < base.size(); ++v) t.tree.add_vertex(base.label(v));
  for (int v = 0; v < base.size(); ++v) t.vertex_spaces.push_back(cycle_graph(12));
  auto slot = [&](int v, int w) {
    std::vector<int> nb;
    for (auto [x, e] : base.incident(v)) nb.push_back(x);
    std::sort(nb.begin(), nb.end());
    int k = static_cast<int>(std::find(nb.begin(), nb.end(), w) - nb.begin());
    return static_cast<Vid>((4 * k) % 12);
  };
  for (int e = 0; e < base.edge_count(); ++e) {
    auto [v, w] = base.edge(e);
    t.tree.add_edge(v, w, base.edge_label(e));
    t.edge_spaces.push_back(point());
    t.inc_first.push_back({slot(v, w)});
    t.inc_second.push_back({slot(w, v)});
  }
  return t;
}

TreeOfSpaces separated_tripod() {
  TreeOfSpaces t;
  for (int i = 0; i < 4; ++i) t.tree.add_vertex();
  t.vertex_spaces = {path_graph(9), path_graph(2), path_graph(2), path_graph(2)};
  add_edge_space(t, 0, 1, path_graph(2), {0, 1}, {0, 1});
  add_edge_space(t, 0, 2, path_graph(2), {4, 5}, {0, 1});
  add_edge_space(t, 0, 3, path_graph(2), {7, 8}, {0, 1});
  return t;
}

TreeOfSpaces grid_bundle(int rows, int cols, int length) {
  return constant_bundle(length, grid_graph(rows, cols));
}

TreeOfSpaces f2_ball_scene(const FreeGroupAutomorphism& f, int radius, int edge_radius) {
  auto t = base_path(1);
  auto big = cayley_ball(f.rank, radius);
  auto small = cayley_ball(f.rank, edge_radius);
  std::vector<Vid> incl, img;
  for (Vid x = 0; x < small.size(); ++x) {
    Word w = parse_word(small.label(x));
    incl.push_back(find_word(big, w));
    Vid y = find_word(big, f.apply(w));
    if (y < 0) throw StructuralError("automorphism image leaves the ball: " + format_word(f.apply(w)));
    img.push_back(y);
  }
  t.vertex_spaces = {big, big};
  add_edge_space(t, 0, 1, small, incl, img);
  return t;
}

TreeOfSpaces caterpillar(int spine) {
  if (spine < 1) throw PreconditionError("caterpillar needs a spine vertex");
  TreeOfSpaces t;
  for (int i = 0; i < spine; ++i) t.tree.add_vertex("s" + std::to_string(i));
  for (int i = 0; i < spine; ++i) t.tree.add_vertex("p" + std::to_string(i));
  for (int i = 0; i < spine; ++i) t.vertex_spaces.push_back(cycle_graph(8));
  for (int i = 0; i < spine; ++i) t.vertex_spaces.push_back(path_graph(2));
  for (int i = 0; i + 1 < spine; ++i) add_edge_space(t, i, i + 1, point(), {0}, {4});
  for (int i = 0; i < spine; ++i) {
    MetricGraph e(2);
    e.add_edge(0, 1, 4.0);
    add_edge_space(t, i, spine + i, e, {2, 6}, {0, 1});
  }
  return t;
}

std::vector<int> caterpillar_spine(int spine) {
  std::vector<int> s(spine);
  for (int i = 0; i < spine; ++i) s[i] = i;
  return s;
}

std::vector<std::vector<Vid>> cyclic_coset_segments(const MetricGraph& ball, int generator, std::size_t min_size) {
  std::map<Word, std::vector<Vid>> cosets;
  for (Vid x = 0; x < ball.size(); ++x) {
    Word w = parse_word(ball.label(x));
    while (!w.empty() && std::abs(w.back()) == generator + 1) w.pop_back();
    cosets[w].push_back(x);
  }
  std::vector<std::vector<Vid>> out;
  for (auto& [rep, vs] : cosets)
    if (vs.size() >= min_size) out.push_back(vs);
  return out;
}

}  // namespace coarsetree::scenes
