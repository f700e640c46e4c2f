#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "coarsetree/commands.hpp"

using namespace coarsetree;

int main(int argc, char** argv) {
  CLI::App app{"coarsetree: desk-scale geometry of trees of hyperbolic spaces"};
  app.require_subcommand(1);
  std::string scene_path, params, format = "json", cache_dir;
  std::uint64_t seed = 1;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--scene", scene_path, "scene file")->required();
    sub->add_option("--params", params, "inline JSON object, parameter set name or file");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--cache-dir", cache_dir, "directory for cached distance matrices");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Scene scene = load_scene(scene_path);
    json p = resolve_params(scene, params);
    Report r = run_command(command, scene, p, seed, {cache_dir});
    std::cout << emit(r, format);
    if (format == "json")
      for (const auto& t : r.timings) std::cerr << t << '\n';
    return r.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
