#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coarsetree/tree_of_spaces.hpp"

namespace coarsetree {

using json = nlohmann::json;

inline constexpr const char* kSceneSchemaVersion = "1.0";
inline constexpr const char* kReportSchemaVersion = "1.0";

struct AutomorphismSpec {
  int rank = 2;
  std::vector<std::string> images;
  std::vector<std::string> inverse;
};

struct PeripheralSpec {
  std::string host;
  std::vector<std::vector<Vid>> subsets;  // ids in the host graph
};

struct Scene {
  std::string schema_version = kSceneSchemaVersion;
  std::string name;
  std::map<std::string, MetricGraph> graphs;  // vertex labels are the scene ids
  std::optional<TreeOfSpaces> tos;
  std::vector<std::string> fibre_names;  // per base vertex
  std::vector<std::string> edge_names;   // per base edge
  std::optional<PeripheralSpec> peripherals;
  std::map<std::string, AutomorphismSpec> automorphisms;
  std::map<std::string, json> params;
  std::string hash;  // FNV-1a of the canonical document
};

// errors are StructuralError with a JSON pointer prefix, e.g. "/graphs/G/edges/3/w: ..."
Scene parse_scene(const json& doc);
Scene load_scene(const std::string& path);
json scene_to_json(const Scene& s);

// a scene holding one tree of spaces, fibres named by base vertex
Scene scene_from_tree(const std::string& name, const TreeOfSpaces& tos);
// a scene holding one graph
Scene scene_from_graph(const std::string& name, const std::string& graph_name, const MetricGraph& g);

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 1469598103934665603ULL);
std::string hex64(std::uint64_t h);
// content hash over vertex count, labels and edges
std::string graph_hash(const MetricGraph& g);

// decimal weight strings
double parse_weight(const std::string& s);
std::string format_weight(double w);

// all-pairs matrices on disk keyed by graph content hash
class DistanceCache {
 public:
  explicit DistanceCache(std::string dir = {});
  DistanceMatrix get(const MetricGraph& g);
  int hits() const { return hits_; }
  int misses() const { return misses_; }

 private:
  std::string dir_;
  int hits_ = 0;
  int misses_ = 0;
};

}  // namespace coarsetree
