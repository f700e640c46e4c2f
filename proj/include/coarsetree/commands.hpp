#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarsetree/scene_io.hpp"

namespace coarsetree {

struct Report {
  std::string command;
  json doc;
  bool verdict_fail = false;
  std::vector<std::string> timings;  // text output only
  int exit_code() const { return verdict_fail ? 2 : 0; }
};

struct RunOptions {
  std::string cache_dir;
};

const std::vector<std::string>& command_names();

// params: the scene's "default" set overlaid by the given object
Report run_command(const std::string& command, const Scene& scene, const json& params, std::uint64_t seed,
                   const RunOptions& opt = {});

// format: "json" or "text"
std::string emit(const Report& r, const std::string& format);

// 12 significant digits; infinities become "inf"; NaN throws
json num(double x);

// --params value: inline JSON object, a named set of the scene, or a file path
json resolve_params(const Scene& scene, const std::string& spec);

}  // namespace coarsetree
