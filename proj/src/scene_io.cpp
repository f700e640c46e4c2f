#include "coarsetree/scene_io.hpp"

#include "coarsetree/free_group.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace coarsetree {

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) {
  throw StructuralError((ptr.empty() ? std::string("/") : ptr) + ": " + msg);
}

std::string esc(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + esc(key); }
std::string at(const std::string& ptr, size_t i) { return ptr + "/" + std::to_string(i); }

void only_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(ptr, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(at(ptr, it.key()), "unknown field '" + it.key() + "'");
  }
}

const json& need(const json& j, const std::string& ptr, const char* key) {
  if (!j.contains(key)) fail(ptr, std::string("missing required field '") + key + "'");
  return j.at(key);
}

std::string need_string(const json& j, const std::string& ptr) {
  if (!j.is_string()) fail(ptr, "expected a string");
  return j.get<std::string>();
}

const json& need_array(const json& j, const std::string& ptr, size_t min_items = 0) {
  if (!j.is_array()) fail(ptr, "expected an array");
  if (j.size() < min_items) fail(ptr, "expected at least " + std::to_string(min_items) + " items");
  return j;
}

MetricGraph parse_graph(const json& j, const std::string& ptr) {
  only_keys(j, ptr, {"vertices", "edges"});
  const auto& vs = need_array(need(j, ptr, "vertices"), at(ptr, "vertices"), 1);
  MetricGraph g;
  std::set<std::string> seen;
  for (size_t i = 0; i < vs.size(); ++i) {
    auto id = need_string(vs[i], at(at(ptr, "vertices"), i));
    if (id.empty()) fail(at(at(ptr, "vertices"), i), "empty vertex id");
    if (!seen.insert(id).second) fail(at(at(ptr, "vertices"), i), "duplicate vertex id '" + id + "'");
    g.add_vertex(id);
  }
  if (j.contains("edges")) {
    const auto& es = need_array(j.at("edges"), at(ptr, "edges"));
    for (size_t i = 0; i < es.size(); ++i) {
      auto p = at(at(ptr, "edges"), i);
      only_keys(es[i], p, {"a", "b", "w"});
      auto a = need_string(need(es[i], p, "a"), at(p, "a"));
      auto b = need_string(need(es[i], p, "b"), at(p, "b"));
      Vid va = g.find_label(a), vb = g.find_label(b);
      if (va < 0) fail(at(p, "a"), "unknown vertex '" + a + "'");
      if (vb < 0) fail(at(p, "b"), "unknown vertex '" + b + "'");
      double w = 1;
      if (es[i].contains("w")) {
        try {
          w = parse_weight(need_string(es[i].at("w"), at(p, "w")));
        } catch (const StructuralError& e) {
          fail(at(p, "w"), e.what());
        }
      }
      try {
        g.add_edge(va, vb, w);
      } catch (const StructuralError& e) {
        fail(p, e.what());
      }
    }
  }
  return g;
}

json graph_to_json(const MetricGraph& g) {
  json j;
  j["vertices"] = json::array();
  for (Vid x = 0; x < g.size(); ++x) j["vertices"].push_back(g.label(x));
  j["edges"] = json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({{"a", g.label(e.a)}, {"b", g.label(e.b)}, {"w", format_weight(e.w)}});
  return j;
}

std::vector<Vid> parse_map(const json& j, const std::string& ptr, const MetricGraph& from, const MetricGraph& to) {
  if (!j.is_object()) fail(ptr, "expected an object");
  std::vector<Vid> f(from.size(), -1);
  for (auto it = j.begin(); it != j.end(); ++it) {
    Vid x = from.find_label(it.key());
    if (x < 0) fail(at(ptr, it.key()), "unknown edge-space vertex '" + it.key() + "'");
    auto y = need_string(it.value(), at(ptr, it.key()));
    Vid vy = to.find_label(y);
    if (vy < 0) fail(at(ptr, it.key()), "unknown fibre vertex '" + y + "'");
    f[x] = vy;
  }
  for (Vid x = 0; x < from.size(); ++x)
    if (f[x] < 0) fail(ptr, "edge-space vertex '" + from.label(x) + "' is not mapped");
  return f;
}

json map_to_json(const std::vector<Vid>& f, const MetricGraph& from, const MetricGraph& to) {
  json j = json::object();
  for (Vid x = 0; x < from.size(); ++x) j[from.label(x)] = to.label(f[x]);
  return j;
}

}  // namespace

double parse_weight(const std::string& s) {
  static const std::regex re(R"(^[0-9]+(\.[0-9]+)?([eE][+-]?[0-9]+)?$)");
  if (!std::regex_match(s, re)) throw StructuralError("weight '" + s + "' is not a decimal string");
  double w = std::strtod(s.c_str(), nullptr);
  if (!(w > 0) || !std::isfinite(w)) throw StructuralError("weight '" + s + "' must be positive and finite");
  return w;
}

std::string format_weight(double w) {
  char buf[64];
  for (int p = 1; p <= 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, w);
    if (std::strtod(buf, nullptr) == w) break;
  }
  std::string s = buf;
  // keep to the decimal grammar accepted by parse_weight
  auto e = s.find('e');
  if (e != std::string::npos && s[e + 1] == '+') s.erase(e + 1, 1);
  return s;
}

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string graph_hash(const MetricGraph& g) {
  std::ostringstream os;
  os.precision(17);
  os << g.size() << '\n';
  for (Vid x = 0; x < g.size(); ++x) os << g.label(x) << '\n';
  for (const auto& e : g.edges()) os << e.a << ' ' << e.b << ' ' << e.w << '\n';
  return hex64(fnv1a(os.str()));
}

Scene parse_scene(const json& doc) {
  only_keys(doc, "", {"schema_version", "name", "graphs", "tree", "peripherals", "automorphisms", "params"});
  Scene s;
  s.schema_version = need_string(need(doc, "", "schema_version"), "/schema_version");
  if (s.schema_version != kSceneSchemaVersion)
    fail("/schema_version", "unsupported schema version '" + s.schema_version + "'");
  if (doc.contains("name")) s.name = need_string(doc.at("name"), "/name");
  const auto& gs = need(doc, "", "graphs");
  if (!gs.is_object()) fail("/graphs", "expected an object");
  if (gs.empty()) fail("/graphs", "a scene needs at least one graph");
  for (auto it = gs.begin(); it != gs.end(); ++it) s.graphs[it.key()] = parse_graph(it.value(), at("/graphs", it.key()));
  auto graph_ref = [&](const json& j, const std::string& ptr) -> const MetricGraph& {
    auto name = need_string(j, ptr);
    auto it = s.graphs.find(name);
    if (it == s.graphs.end()) fail(ptr, "unknown graph '" + name + "'");
    return it->second;
  };
  if (doc.contains("tree")) {
    const auto& t = doc.at("tree");
    only_keys(t, "/tree", {"vertices", "edges"});
    TreeOfSpaces tos;
    const auto& vs = need_array(need(t, "/tree", "vertices"), "/tree/vertices", 1);
    for (size_t i = 0; i < vs.size(); ++i) {
      auto p = at("/tree/vertices", i);
      only_keys(vs[i], p, {"id", "space"});
      auto id = need_string(need(vs[i], p, "id"), at(p, "id"));
      if (tos.tree.find_label(id) >= 0) fail(at(p, "id"), "duplicate base vertex '" + id + "'");
      tos.tree.add_vertex(id);
      tos.vertex_spaces.push_back(graph_ref(need(vs[i], p, "space"), at(p, "space")));
      s.fibre_names.push_back(vs[i].at("space").get<std::string>());
    }
    if (t.contains("edges")) {
      const auto& es = need_array(t.at("edges"), "/tree/edges");
      for (size_t i = 0; i < es.size(); ++i) {
        auto p = at("/tree/edges", i);
        only_keys(es[i], p, {"id", "from", "to", "space", "map_from", "map_to"});
        auto a = need_string(need(es[i], p, "from"), at(p, "from"));
        auto b = need_string(need(es[i], p, "to"), at(p, "to"));
        int va = tos.tree.find_label(a), vb = tos.tree.find_label(b);
        if (va < 0) fail(at(p, "from"), "unknown base vertex '" + a + "'");
        if (vb < 0) fail(at(p, "to"), "unknown base vertex '" + b + "'");
        std::string id = es[i].contains("id") ? need_string(es[i].at("id"), at(p, "id")) : std::string();
        try {
          tos.tree.add_edge(va, vb, id);
        } catch (const StructuralError& e) {
          fail(p, e.what());
        }
        const auto& E = graph_ref(need(es[i], p, "space"), at(p, "space"));
        tos.edge_spaces.push_back(E);
        s.edge_names.push_back(es[i].at("space").get<std::string>());
        tos.inc_first.push_back(parse_map(need(es[i], p, "map_from"), at(p, "map_from"), E, tos.vertex_spaces[va]));
        tos.inc_second.push_back(parse_map(need(es[i], p, "map_to"), at(p, "map_to"), E, tos.vertex_spaces[vb]));
      }
    }
    try {
      tos.validate();
    } catch (const StructuralError& e) {
      fail("/tree", e.what());
    }
    s.tos = std::move(tos);
  }
  if (doc.contains("peripherals")) {
    const auto& pj = doc.at("peripherals");
    only_keys(pj, "/peripherals", {"host", "subsets"});
    PeripheralSpec P;
    P.host = need_string(need(pj, "/peripherals", "host"), "/peripherals/host");
    const auto& host = graph_ref(pj.at("host"), "/peripherals/host");
    const auto& ss = need_array(need(pj, "/peripherals", "subsets"), "/peripherals/subsets");
    for (size_t i = 0; i < ss.size(); ++i) {
      auto p = at("/peripherals/subsets", i);
      const auto& arr = need_array(ss[i], p, 1);
      std::vector<Vid> H;
      for (size_t k = 0; k < arr.size(); ++k) {
        auto id = need_string(arr[k], at(p, k));
        Vid x = host.find_label(id);
        if (x < 0) fail(at(p, k), "unknown vertex '" + id + "'");
        H.push_back(x);
      }
      std::sort(H.begin(), H.end());
      H.erase(std::unique(H.begin(), H.end()), H.end());
      if (!host.induced(H).connected()) fail(p, "peripheral subset is not connected in the host");
      P.subsets.push_back(H);
    }
    s.peripherals = std::move(P);
  }
  if (doc.contains("automorphisms")) {
    const auto& aj = doc.at("automorphisms");
    if (!aj.is_object()) fail("/automorphisms", "expected an object");
    for (auto it = aj.begin(); it != aj.end(); ++it) {
      auto p = at("/automorphisms", it.key());
      only_keys(it.value(), p, {"rank", "images", "inverse"});
      AutomorphismSpec A;
      const auto& r = need(it.value(), p, "rank");
      if (!r.is_number_integer() || r.get<int>() < 1) fail(at(p, "rank"), "expected a positive integer");
      A.rank = r.get<int>();
      const auto& im = need_array(need(it.value(), p, "images"), at(p, "images"));
      if (static_cast<int>(im.size()) != A.rank) fail(at(p, "images"), "expected one image per generator");
      for (size_t k = 0; k < im.size(); ++k) A.images.push_back(need_string(im[k], at(at(p, "images"), k)));
      const auto& inv = need_array(need(it.value(), p, "inverse"), at(p, "inverse"));
      if (inv.size() != im.size()) fail(at(p, "inverse"), "expected one image per generator");
      for (size_t k = 0; k < inv.size(); ++k) A.inverse.push_back(need_string(inv[k], at(at(p, "inverse"), k)));
      try {
        make_automorphism(A.rank, A.images, A.inverse);
      } catch (const std::exception& e) {
        fail(p, e.what());
      }
      s.automorphisms[it.key()] = A;
    }
  }
  if (doc.contains("params")) {
    const auto& pj = doc.at("params");
    if (!pj.is_object()) fail("/params", "expected an object");
    for (auto it = pj.begin(); it != pj.end(); ++it) {
      if (!it.value().is_object()) fail(at("/params", it.key()), "expected an object");
      s.params[it.key()] = it.value();
    }
  }
  s.hash = hex64(fnv1a(doc.dump()));
  return s;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError(path + ": cannot open scene file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError(path + ": " + e.what());
  }
  return parse_scene(doc);
}

json scene_to_json(const Scene& s) {
  json j;
  j["schema_version"] = s.schema_version;
  if (!s.name.empty()) j["name"] = s.name;
  j["graphs"] = json::object();
  for (const auto& [name, g] : s.graphs) j["graphs"][name] = graph_to_json(g);
  if (s.tos) {
    const auto& t = *s.tos;
    json tj;
    tj["vertices"] = json::array();
    for (int v = 0; v < t.tree.size(); ++v) tj["vertices"].push_back({{"id", t.tree.label(v)}, {"space", s.fibre_names[v]}});
    tj["edges"] = json::array();
    for (int e = 0; e < t.tree.edge_count(); ++e) {
      auto [a, b] = t.tree.edge(e);
      tj["edges"].push_back({{"id", t.tree.edge_label(e)},
                             {"from", t.tree.label(a)},
                             {"to", t.tree.label(b)},
                             {"space", s.edge_names[e]},
                             {"map_from", map_to_json(t.inc_first[e], t.edge_spaces[e], t.vertex_spaces[a])},
                             {"map_to", map_to_json(t.inc_second[e], t.edge_spaces[e], t.vertex_spaces[b])}});
    }
    j["tree"] = tj;
  }
  if (s.peripherals) {
    const auto& host = s.graphs.at(s.peripherals->host);
    json sub = json::array();
    for (const auto& H : s.peripherals->subsets) {
      json h = json::array();
      for (Vid x : H) h.push_back(host.label(x));
      sub.push_back(h);
    }
    j["peripherals"] = {{"host", s.peripherals->host}, {"subsets", sub}};
  }
  if (!s.automorphisms.empty()) {
    j["automorphisms"] = json::object();
    for (const auto& [name, a] : s.automorphisms) j["automorphisms"][name] = {{"rank", a.rank}, {"images", a.images}, {"inverse", a.inverse}};
  }
  if (!s.params.empty()) {
    j["params"] = json::object();
    for (const auto& [name, p] : s.params) j["params"][name] = p;
  }
  return j;
}

Scene scene_from_tree(const std::string& name, const TreeOfSpaces& tos) {
  Scene s;
  s.name = name;
  for (int v = 0; v < tos.tree.size(); ++v) {
    auto g = "X_" + tos.tree.label(v);
    s.graphs[g] = tos.vertex_spaces[v];
    s.fibre_names.push_back(g);
  }
  for (int e = 0; e < tos.tree.edge_count(); ++e) {
    auto g = "E_" + tos.tree.edge_label(e);
    s.graphs[g] = tos.edge_spaces[e];
    s.edge_names.push_back(g);
  }
  s.tos = tos;
  s.hash = hex64(fnv1a(scene_to_json(s).dump()));
  return s;
}

Scene scene_from_graph(const std::string& name, const std::string& graph_name, const MetricGraph& g) {
  Scene s;
  s.name = name;
  s.graphs[graph_name] = g;
  s.hash = hex64(fnv1a(scene_to_json(s).dump()));
  return s;
}

DistanceCache::DistanceCache(std::string dir) : dir_(std::move(dir)) {}

DistanceMatrix DistanceCache::get(const MetricGraph& g) {
  if (dir_.empty()) {
    ++misses_;
    return shortest_path_metric(g);
  }
  namespace fs = std::filesystem;
  std::string h = graph_hash(g);
  fs::path file = fs::path(dir_) / (h + ".dist");
  const std::string magic = "coarsetree-dist-1\n";
  {
    std::ifstream in(file, std::ios::binary);
    if (in) {
      std::string m(magic.size(), '\0'), hh(16, '\0');
      std::int32_t n = -1;
      in.read(m.data(), m.size());
      in.read(hh.data(), hh.size());
      in.read(reinterpret_cast<char*>(&n), sizeof n);
      if (in && m == magic && hh == h && n == g.size()) {
        DistanceMatrix d(n);
        for (Vid i = 0; i < n && in; ++i) in.read(reinterpret_cast<char*>(&d.at(i, 0)), sizeof(double) * n);
        if (in) {
          ++hits_;
          return d;
        }
      }
    }
  }
  ++misses_;
  auto d = shortest_path_metric(g);
  std::error_code ec;
  fs::create_directories(dir_, ec);
  fs::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    std::int32_t n = g.size();
    out.write(magic.data(), magic.size());
    out.write(h.data(), h.size());
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    for (Vid i = 0; i < n; ++i) out.write(reinterpret_cast<const char*>(d.row(i)), sizeof(double) * n);
  }
  fs::rename(tmp, file, ec);
  return d;
}

}  // namespace coarsetree
