#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "coarsetree/scene_io.hpp"
#include "coarsetree/scenes.hpp"

using namespace coarsetree;

namespace {

void write(const std::filesystem::path& dir, const std::string& name, Scene s) {
  s.name = name;
  auto doc = scene_to_json(s);
  parse_scene(doc);
  std::ofstream out(dir / (name + ".json"));
  out << doc.dump(1) << '\n';
  std::cout << name << '\n';
}

Scene with_params(Scene s, std::map<std::string, json> p) {
  s.params = std::move(p);
  return s;
}

Scene peripheral_scene(const std::string& host, const MetricGraph& g, std::vector<std::vector<Vid>> subsets) {
  Scene s = scene_from_graph("", host, g);
  s.peripherals = PeripheralSpec{host, std::move(subsets)};
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "scenes";
  std::filesystem::create_directories(dir);

  write(dir, "doubling_bundle",
        with_params(scene_from_tree("", scenes::doubling_bundle(5, 1)),
                    {{"default", {{"R", 1}}},
                     {"uniform", {{"kind", "uniform"}, {"K", 1}, {"M", 0}, {"D_grid", {1, 2, 4, 8, 16}}}},
                     {"exponential", {{"kind", "exponential"}, {"kappa", 1}, {"lambda", 2}, {"n", 1}, {"M", 1}}},
                     {"bigon", {{"kind", "bigon"}, {"K", 1}, {"C", 4}}},
                     {"ladder", {{"u", "4"}, {"K", 2}, {"C", 1}}}}));
  write(dir, "constant_bundle",
        with_params(scene_from_tree("", scenes::constant_bundle(4, path_graph(4))),
                    {{"uniform", {{"kind", "uniform"}, {"K", 1}, {"M", 0}, {"D_grid", {3}}}}}));
  write(dir, "acylindrical_chain",
        with_params(scene_from_tree("", scenes::acylindrical_chain(4)),
                    {{"default", {{"R", 1}}},
                     {"acylindrical", {{"kind", "acylindrical"}, {"kappa", 1}, {"tau", 2}, {"M", 0}}},
                     {"comb", {{"K", 1}, {"C", 1}, {"M", 0}, {"R", 1}, {"ladder_K", 1}}}}));
  write(dir, "contracting_bundle", scene_from_tree("", scenes::contracting_bundle()));
  write(dir, "separated_tripod", scene_from_tree("", scenes::separated_tripod()));
  for (int n : {3, 4, 5}) {
    json S = json::array();
    for (int i = 0; i < n; ++i) S.push_back("s" + std::to_string(i));
    write(dir, "caterpillar_" + std::to_string(n),
          with_params(scene_from_tree("", scenes::caterpillar(n)),
                      {{"default", {{"S", S}, {"Lambdas", {1, 2, 3}}, {"samples", 100}}}}));
  }
  {
    Scene s = scene_from_tree("", scenes::f2_ball_scene(fibonacci_automorphism()));
    s.automorphisms["fibonacci"] = {2, {"ab", "a"}, {"b", "Ba"}};
    s.automorphisms["identity"] = {2, {"a", "b"}, {"a", "b"}};
    s.automorphisms["inner_a"] = {2, {"a", "abA"}, {"a", "Aba"}};
    s.params["default"] = {{"m", 3}, {"lambda", 1.5}, {"ball", 5}, {"exceptional", 1}, {"h0", "a"}, {"K", 0}, {"steps", 6}};
    write(dir, "f2_fibonacci", s);
  }
  {
    auto ball = cayley_ball(2, 3);
    write(dir, "f2_electric",
          with_params(peripheral_scene("ball", ball, scenes::cyclic_coset_segments(ball, 0)),
                      {{"default", {{"T", 3}, {"mode", "four_point"}, {"sweep", false}}}}));
  }
  {
    MetricGraph h;
    h.add_vertex("z1");
    h.add_vertex("z2");
    h.add_edge(0, 1, std::exp(2.0));
    write(dir, "horoball_pair", with_params(peripheral_scene("H", h, {{0, 1}}), {{"default", {{"T", 4}}}}));
  }
  {
    auto g = grid_graph(6, 6);
    std::vector<Vid> all(g.size());
    for (Vid i = 0; i < g.size(); ++i) all[i] = i;
    write(dir, "grid_horoball", with_params(peripheral_scene("grid", g, {all}), {{"default", {{"T", 6}}}}));
    write(dir, "grid_plain", with_params(peripheral_scene("grid", g, {}), {{"default", {{"T", 2}}}}));
  }
  {
    // binary tree of depth 3, the two subtrees below the root's children as peripherals
    MetricGraph t(15);
    for (Vid i = 1; i < 15; ++i) t.add_edge((i - 1) / 2, i);
    write(dir, "tree_branches",
          with_params(peripheral_scene("tree", t, {{1, 3, 4, 7, 8, 9, 10}, {2, 5, 6, 11, 12, 13, 14}}),
                      {{"default", {{"T", 6}}}}));
  }
  return 0;
}
