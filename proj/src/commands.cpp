#include "coarsetree/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "coarsetree/combing.hpp"
#include "coarsetree/flaring.hpp"
#include "coarsetree/free_group.hpp"
#include "coarsetree/hyperbolicity.hpp"
#include "coarsetree/ladders.hpp"
#include "coarsetree/relhyp.hpp"
#include "coarsetree/rips.hpp"

namespace coarsetree {

json num(double x) {
  if (std::isnan(x)) throw StructuralError("NaN reached a report");
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  if (r == std::floor(r) && std::abs(r) < 9e15) return static_cast<long long>(r);
  return r;
}

namespace {

struct Ctx {
  const Scene& scene;
  json p;
  std::uint64_t seed;
  DistanceCache cache;
  json measured = json::object();
  json pvm = json::array();
  json witnesses = json::object();
  bool fail = false;
  std::vector<std::string> timings;
  std::shared_ptr<TotalSpace> X;

  double dbl(const char* key, double def) const {
    if (!p.contains(key)) return def;
    const auto& v = p.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string() && v.get<std::string>() == "inf") return kInf;
    throw StructuralError(std::string("/params/") + key + ": expected a number");
  }
  int integer(const char* key, int def) const {
    if (!p.contains(key)) return def;
    if (!p.at(key).is_number_integer()) throw StructuralError(std::string("/params/") + key + ": expected an integer");
    return p.at(key).get<int>();
  }
  bool flag(const char* key, bool def) const {
    if (!p.contains(key)) return def;
    if (!p.at(key).is_boolean()) throw StructuralError(std::string("/params/") + key + ": expected a boolean");
    return p.at(key).get<bool>();
  }
  std::string str(const char* key, const std::string& def) const {
    if (!p.contains(key)) return def;
    if (!p.at(key).is_string()) throw StructuralError(std::string("/params/") + key + ": expected a string");
    return p.at(key).get<std::string>();
  }
  std::vector<double> dbls(const char* key, std::vector<double> def) const {
    if (!p.contains(key)) return def;
    std::vector<double> out;
    if (!p.at(key).is_array()) throw StructuralError(std::string("/params/") + key + ": expected an array");
    for (const auto& v : p.at(key)) {
      if (!v.is_number()) throw StructuralError(std::string("/params/") + key + ": expected numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  std::vector<std::string> strs(const char* key) const {
    std::vector<std::string> out;
    if (!p.contains(key)) return out;
    if (!p.at(key).is_array()) throw StructuralError(std::string("/params/") + key + ": expected an array");
    for (const auto& v : p.at(key)) {
      if (!v.is_string()) throw StructuralError(std::string("/params/") + key + ": expected strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  void compare(const std::string& quantity, double bound, double value, bool holds) {
    pvm.push_back({{"quantity", quantity}, {"bound", num(bound)}, {"measured", num(value)}, {"holds", holds}});
  }

  const TotalSpace& total() {
    if (!scene.tos) throw StructuralError("/tree: this command needs a tree of spaces");
    if (!X) {
      auto t0 = std::chrono::steady_clock::now();
      X = build_total_space(*scene.tos);
      X->preload_distances(cache.get(X->graph()));
      timings.push_back("total space distances: " +
                        std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) +
                        " s");
    }
    return *X;
  }
  int base_vertex(const char* key, int def) {
    const auto& T = total().tree();
    if (!p.contains(key)) return def;
    auto s = str(key, "");
    int v = T.find_label(s);
    if (v < 0) throw StructuralError(std::string("/params/") + key + ": unknown base vertex '" + s + "'");
    return v;
  }
  std::vector<int> base_vertices(const char* key, std::vector<int> def) {
    if (!p.contains(key)) return def;
    std::vector<int> out;
    for (const auto& s : strs(key)) {
      int v = total().tree().find_label(s);
      if (v < 0) throw StructuralError(std::string("/params/") + key + ": unknown base vertex '" + s + "'");
      out.push_back(v);
    }
    return out;
  }
  Vid total_vertex(const std::string& key, const std::string& s) {
    Vid x = total().graph().find_label(s);
    if (x < 0) throw StructuralError("/params/" + key + ": unknown vertex '" + s + "'");
    return x;
  }
  Vid fibre_vertex(int v, const std::string& key, const std::string& s) {
    Vid x = scene.tos->vertex_spaces[v].find_label(s);
    if (x < 0) throw StructuralError("/params/" + key + ": unknown vertex '" + s + "' of X_" + total().tree().label(v));
    return total().fiber_vertex(v, x);
  }
  // alpha: endpoints [a, b] in X_u; default a diameter pair
  std::vector<Vid> fibre_geodesic_param(int u) {
    const auto& P = total().fiber_piece(u);
    Vid a = 0, b = 0;
    if (p.contains("alpha")) {
      auto ab = strs("alpha");
      if (ab.size() != 2) throw StructuralError("/params/alpha: expected two fibre vertex ids");
      a = P.local(fibre_vertex(u, "alpha", ab[0]));
      b = P.local(fibre_vertex(u, "alpha", ab[1]));
    } else {
      double best = -1;
      for (Vid i = 0; i < P.graph.size(); ++i)
        for (Vid j = i + 1; j < P.graph.size(); ++j)
          if (P.d(i, j) > best + kTol) {
            best = P.d(i, j);
            a = i;
            b = j;
          }
    }
    std::vector<Vid> out;
    for (Vid x : canonical_geodesic(P.graph, P.d, a, b).vertices) out.push_back(P.global[x]);
    return out;
  }
  json labels(const std::vector<Vid>& vs) {
    json a = json::array();
    for (Vid x : vs) a.push_back(x >= 0 ? total().graph().label(x) : std::string("-"));
    return a;
  }
  json base_labels(const std::vector<int>& vs) {
    json a = json::array();
    for (int v : vs) a.push_back(total().tree().label(v));
    return a;
  }
};

json delta_json(const MetricGraph& g, const DeltaResult& r) {
  json w = json::array();
  for (Vid x : r.witness)
    if (x >= 0) w.push_back(g.label(x));
  json j = {{"delta", num(r.delta)}, {"witness", w}};
  if (r.mode == DeltaMode::SlimExhaustive) j["max_geodesics"] = r.max_geodesics;
  return j;
}

void cmd_analyze(Ctx& c) {
  std::string which = c.str("graph", c.scene.tos ? "total" : c.scene.graphs.begin()->first);
  const MetricGraph* g = nullptr;
  DistanceMatrix dm;
  const DistanceMatrix* d = nullptr;
  if (which == "total") {
    g = &c.total().graph();
    d = &c.total().distances();
  } else {
    auto it = c.scene.graphs.find(which);
    if (it == c.scene.graphs.end()) throw StructuralError("/params/graph: unknown graph '" + which + "'");
    g = &it->second;
    dm = c.cache.get(*g);
    d = &dm;
  }
  auto& m = c.measured;
  m["graph"] = which;
  m["vertices"] = g->size();
  m["edges"] = g->edges().size();
  m["diameter"] = num(d->diameter());
  std::vector<std::string> modes = c.strs("modes");
  if (modes.empty()) modes = {"four_point", "slim_intervals"};
  auto cap = static_cast<std::uint64_t>(c.integer("geodesic_cap", 0));
  double slim = -1;
  for (const auto& s : modes) {
    auto r = delta_hyperbolicity(*g, *d, delta_mode_from_string(s), cap);
    m["delta"][s] = delta_json(*g, r);
    if (r.mode == DeltaMode::SlimIntervals) slim = r.delta;
  }
  if (c.p.contains("subset")) {
    Subset A;
    for (const auto& s : c.strs("subset")) {
      Vid x = g->find_label(s);
      if (x < 0) throw StructuralError("/params/subset: unknown vertex '" + s + "'");
      A.push_back(x);
    }
    A = make_subset(A);
    if (slim < 0) slim = delta_slim(*g, *d, DeltaMode::SlimIntervals).delta;
    auto q = quasiconvexity_constant(*d, A);
    auto P = nearest_point_projection(*g, *d, A);
    double bound = lip_proj_bound(q.lambda, slim);
    m["subset"] = {{"size", A.size()}, {"lambda", num(q.lambda)}, {"L_star", num(P.L_star)}};
    bool ok = P.L_star <= bound + kTol;
    c.compare("projection Lipschitz constant <= max(2, 2 lambda + 9 delta)", bound, P.L_star, ok);
    if (!ok) {
      c.fail = true;
      c.witnesses["projection_edge"] = {g->label(P.wx), g->label(P.wy)};
    }
  }
  if (c.p.contains("rips_R")) {
    auto R = rips_graph(*d, c.dbl("rips_R", 1));
    m["rips"] = {{"R", num(c.dbl("rips_R", 1))}, {"edges", R.edge_count}, {"connected", R.connected}};
  }
}

void cmd_build_total(Ctx& c) {
  const auto& X = c.total();
  auto& m = c.measured;
  m["base_vertices"] = X.tree().size();
  m["base_edges"] = X.tree().edge_count();
  m["total_vertices"] = X.size();
  m["total_edges"] = X.graph().edges().size();
  auto mode = delta_mode_from_string(c.str("mode", "slim_intervals"));
  auto H = verify_axiom_H(*c.scene.tos, {}, mode);
  json pieces = json::array();
  for (const auto& r : H.pieces) pieces.push_back({{"piece", r.piece}, {"delta", num(r.delta)}});
  m["axiom_H"] = {{"pass", H.pass}, {"delta0", num(H.delta0)}, {"L0", num(H.L0)}, {"pieces", pieces}};
  if (!H.pass) {
    c.fail = true;
    if (H.failing >= 0) {
      const auto& r = H.incidences[H.failing];
      c.witnesses["incidence"] = {{"edge", X.tree().edge_label(r.edge)},
                                  {"vertex", X.tree().label(r.vertex)},
                                  {"L0", num(r.c.L0)}};
    }
  }
  auto S = secondary_constants(X);
  m["secondary"] = {{"lambda0", num(S.lambda0)},        {"delta0p", num(S.delta0p)},
                    {"lambda0p", num(S.lambda0p)},      {"lambda0p_formula", num(S.lambda0p_formula)},
                    {"L0p", num(S.L0p)},                {"L1p", num(S.L1p)},
                    {"K0", S.K0.exact.empty() ? json(num(static_cast<double>(S.K0.value))) : json(S.K0.exact)},
                    {"K_star", S.K_star}};
  c.compare("L'0 >= 2", 2, S.L0p, S.L0p >= 2);
  if (c.p.contains("subtree")) {
    auto Sv = c.base_vertices("subtree", {});
    auto R = restrict_to_subtree(X, Sv);
    m["subtree"] = {{"vertices", c.base_labels(R.S)}, {"max_ratio", num(R.max_ratio)}, {"superlinear", R.superlinear}};
  }
}

json family_json(const FamilyReport& r) {
  return {{"pass", r.pass},     {"lambda", num(r.lambda)}, {"leaf_K", num(r.leaf_K)}, {"E", num(r.E)},
          {"K_edge", num(r.K_edge)}, {"D", num(r.D)},      {"cond1", r.cond1},          {"cond2", r.cond2},
          {"cond3", r.cond3},   {"cond4", r.cond4}};
}

json mitra_json(const MitraRetraction& m) {
  return {{"L", num(m.L)}, {"max_jump", num(m.max_jump)}, {"fixes_family", m.fixes_family}, {"idempotent", m.idempotent}};
}

void cmd_flow(Ctx& c) {
  const auto& X = c.total();
  auto ctx = flow_context(X);
  int u = c.base_vertex("u", 0);
  double R = c.dbl("R", 1);
  Subset Q;
  if (c.p.contains("Q"))
    for (const auto& s : c.strs("Q")) Q.push_back(c.fibre_vertex(u, "Q", s));
  else
    Q = X.fiber(u);
  auto F = flow_space(X, ctx, u, make_subset(Q), R);
  auto fam = F.family();
  auto rep = verify_semicontinuous_family(X, fam);
  auto& m = c.measured;
  m["context"] = {{"delta0", num(ctx.delta0)}, {"delta0p", num(ctx.delta0p)}, {"lambda0p", num(ctx.lambda0p)},
                  {"L0p", num(ctx.L0p)}};
  m["S"] = c.base_labels(F.base());
  m["implied_K"] = num(F.implied_K);
  m["D0"] = num(F.D0);
  m["E"] = num(F.E);
  m["lambda"] = num(F.lambda);
  json sizes = json::object();
  for (int v : F.base()) sizes[X.tree().label(v)] = F.Q_v[v].size();
  m["Q_sizes"] = sizes;
  m["family"] = family_json(rep);
  c.compare("leaf constant <= implied K", F.implied_K, rep.leaf_K, rep.leaf_K <= F.implied_K + kTol);
  bool leaves = true;
  for (const auto& Y : fam.Y_v)
    for (Vid x : Y) leaves = leaves && rep.leaf_cost[x] < kInf;
  m["every_vertex_has_leaf"] = leaves;
  if (c.flag("retraction", true)) m["retraction"] = mitra_json(mitra_retraction(X, fam));
  if (c.flag("incidence", false)) {
    auto I = flow_incidence_graph(X, ctx, R);
    m["incidence"] = {{"monotone", I.monotone}, {"separation", I.separation}, {"edges", I.gamma.edges().size()}};
    if (!I.witness.empty()) c.witnesses["incidence"] = c.base_labels(I.witness);
  }
  c.fail = !rep.pass || !leaves;
}

void cmd_ladder(Ctx& c) {
  const auto& X = c.total();
  auto ctx = flow_context(X);
  int u = c.base_vertex("u", 0);
  auto alpha = c.fibre_geodesic_param(u);
  auto L = build_ladder(X, ctx.delta0, u, alpha, c.dbl("K", 1), c.dbl("D", kInf), c.dbl("E", kInf));
  auto& m = c.measured;
  m["alpha"] = c.labels(alpha);
  m["S"] = c.base_labels(L.base());
  json segs = json::object();
  for (int v : L.order) segs[X.tree().label(v)] = c.labels(L.seg[v]);
  m["segments"] = segs;
  json cons = json::array();
  for (int v : L.order)
    if (L.constant[v]) cons.push_back(X.tree().label(v));
  m["constant_maps"] = cons;
  m["measured_K"] = num(L.measured_K);
  m["axioms"] = {{"L0", L.L0}, {"L1", L.L1}, {"L2", L.L2}, {"L3", L.L3}};
  m["family"] = family_json(L.family_report);
  c.compare("measured section jump <= K", L.K, L.measured_K, L.measured_K <= L.K + kTol);
  if (c.flag("retraction", true)) {
    auto fam = L.family();
    if (!(fam.D < kInf)) {
      fam.D = L.family_report.D;
      m["retraction_D"] = "measured";
    }
    m["retraction"] = mitra_json(mitra_retraction(X, fam));
  }
  c.fail = !(L.L0 && L.L1 && L.L2 && L.L3);
}

void cmd_subdivide(Ctx& c) {
  const auto& X = c.total();
  auto ctx = flow_context(X);
  auto kind = c.str("kind", "horizontal");
  auto& m = c.measured;
  m["kind"] = kind;
  if (kind == "horizontal") {
    int u = c.base_vertex("u", 0);
    int v = c.base_vertex("v", X.tree().size() - 1);
    auto H = horizontal_subdivision(X, ctx, u, v, c.dbl("R", 1));
    m["J"] = c.base_labels(H.J);
    json steps = json::array();
    for (const auto& s : H.steps)
      steps.push_back({{"u", X.tree().label(s.u)},
                       {"u2", s.u2 >= 0 ? X.tree().label(s.u2) : "-"},
                       {"u1_next", s.u1_next >= 0 ? X.tree().label(s.u1_next) : "-"},
                       {"u_next", s.u_next >= 0 ? X.tree().label(s.u_next) : "-"},
                       {"reach", c.base_labels(s.reach)}});
    m["steps"] = steps;
    m["pieces"] = H.pieces();
  } else if (kind == "vertical") {
    int u = c.base_vertex("u", 0);
    auto alpha = c.fibre_geodesic_param(u);
    auto L = build_ladder(X, ctx.delta0, u, alpha, c.dbl("K", 1), kInf, kInf);
    double C = c.dbl("C", 1);
    auto V = vertical_subdivision(X, L, C);
    m["alpha"] = c.labels(alpha);
    m["x"] = V.x;
    m["xprime"] = V.xprime;
    json pieces = json::array();
    double worst = 0;
    for (const auto& P : V.pieces) {
      pieces.push_back({{"lo", P.lo},
                        {"hi", P.hi},
                        {"carpet_hi", P.carpet_hi},
                        {"narrow", X.tree().label(P.narrow)},
                        {"interval", c.base_labels(P.interval)},
                        {"narrow_length", num(P.narrow_length)},
                        {"cobdd", num(P.cobdd)}});
      worst = std::max(worst, P.narrow_length);
    }
    m["pieces"] = pieces;
    c.compare("narrow end length <= C", C, worst, worst <= C + kTol);
  } else {
    throw StructuralError("/params/kind: expected 'horizontal' or 'vertical'");
  }
}

void cmd_flaring(Ctx& c) {
  const auto& X = c.total();
  FlaringOptions opt;
  opt.seed = c.seed;
  opt.budget = static_cast<std::size_t>(c.integer("budget", 1 << 22));
  opt.L0p = c.dbl("L0p", -1);
  auto kind = c.str("kind", "uniform");
  FlaringReport r;
  if (kind == "uniform")
    r = verify_uniform_flaring(X, c.dbl("K", 1), c.dbl("M", 0), c.dbls("D_grid", {1, 2, 4, 8}), opt);
  else if (kind == "exponential")
    r = verify_exponential_flaring(X, c.dbl("kappa", 1), c.dbl("lambda", 2), c.integer("n", 1), c.dbl("M", 0), opt);
  else if (kind == "bigon")
    r = verify_bigon_property(X, c.dbl("K", 1), c.dbl("C", 1), opt);
  else if (kind == "acylindrical")
    r = verify_acylindricity(X, c.dbl("kappa", 1), c.integer("tau", 2), c.dbl("M", 0), opt);
  else
    throw StructuralError("/params/kind: expected uniform, exponential, bigon or acylindrical");
  auto& m = c.measured;
  m["kind"] = r.kind;
  m["pass"] = r.pass;
  m["vacuous"] = r.vacuous;
  m["mode"] = r.mode;
  m["value"] = num(r.value);
  json tab = json::array();
  for (auto [D, t] : r.table) tab.push_back({num(D), num(t)});
  m["table"] = tab;
  m["growth_ok"] = r.growth_ok;
  m["pairs_checked"] = r.pairs_checked;
  if (!r.note.empty()) m["note"] = r.note;
  if (r.witness) {
    json prof = json::array();
    for (double x : r.witness_profile) prof.push_back(num(x));
    c.witnesses["pair"] = {{"interval", c.base_labels(r.witness->interval)},
                           {"g0", c.labels(r.witness->g0)},
                           {"g1", c.labels(r.witness->g1)},
                           {"profile", prof}};
  }
  c.fail = !r.pass;
}

void cmd_comb(Ctx& c) {
  const auto& X = c.total();
  auto ctx = flow_context(X);
  CombParams cp;
  cp.K = c.dbl("K", 1);
  cp.C = c.dbl("C", 1);
  cp.M = c.dbl("M", 0);
  cp.R = c.dbl("R", 1);
  cp.ladder_K = c.dbl("ladder_K", 1);
  auto& m = c.measured;
  if (c.p.contains("x") || c.p.contains("y")) {
    Vid x = c.total_vertex("x", c.str("x", "")), y = c.total_vertex("y", c.str("y", ""));
    auto F = full_combing_path(X, ctx, x, y, cp);
    m["path"] = c.labels(F.path.vertices());
    m["length"] = num(F.path.length(X.graph()));
    m["distance"] = num(X.distances()(x, y));
    m["J"] = c.base_labels(F.J);
    m["hop_over_K"] = F.hop_over_K;
    m["vertical_pieces"] = F.vertical_pieces;
    m["horizontal_pieces"] = F.hsub.pieces();
    json prov = json::array();
    for (const auto& s : F.path.segments) prov.push_back(s.horizontal ? "h" : "v");
    m["segments"] = prov;
    m["valid"] = verify_combing_path(X.graph(), F.path);
    c.fail = !verify_combing_path(X.graph(), F.path);
    return;
  }
  std::vector<Vid> net;
  if (c.p.contains("net"))
    for (const auto& s : c.strs("net")) net.push_back(c.total_vertex("net", s));
  else
    for (int v = 0; v < X.tree().size(); ++v)
      for (Vid x : X.fiber(v)) net.push_back(x);
  net = make_subset(net);
  double D0 = 0;
  for (Vid x = 0; x < X.size(); ++x) D0 = std::max(D0, dist_to_set(X.distances(), x, net));
  D0 = c.dbl("D0", D0);
  PathFamily fam;
  bool hop = false;
  for (size_t i = 0; i < net.size(); ++i)
    for (size_t j = i + 1; j < net.size(); ++j) {
      auto F = full_combing_path(X, ctx, net[i], net[j], cp);
      hop = hop || F.hop_over_K;
      fam[{net[i], net[j]}] = F.path.vertices();
    }
  auto r = verify_slim_combing(X.graph(), X.distances(), net, fam, D0, -1, c.seed,
                               static_cast<std::size_t>(c.integer("exhaustive_limit", 40)),
                               static_cast<std::size_t>(c.integer("samples", 20000)));
  m["net_size"] = net.size();
  m["paths"] = fam.size();
  m["hop_over_K"] = hop;
  m["D0"] = num(r.D0);
  m["D1"] = num(r.D1);
  m["D2"] = num(r.D2);
  m["h"] = num(r.h);
  m["m"] = num(r.m);
  m["k"] = num(r.k);
  m["measured_delta"] = num(r.measured_delta);
  m["mode"] = r.mode;
  m["triples"] = r.triples;
  c.compare("2h(6 + log2(m + 2)) <= m", r.m, 2 * r.h * (6 + std::log2(r.m + 2)), r.m_ok);
  c.compare("measured slim constant <= certified k", r.k, r.measured_delta, r.sound);
  if (r.wx >= 0) c.witnesses["worst_triple"] = c.labels({r.wx, r.wy, r.wz, r.wp});
  c.fail = !(r.m_ok && r.sound);
}

void cmd_cut_replace(Ctx& c) {
  const auto& X = c.total();
  std::vector<int> all(X.tree().size());
  for (int v = 0; v < X.tree().size(); ++v) all[v] = v;
  auto S = c.base_vertices("S", all);
  if (!X.tree().is_subtree(S)) throw StructuralError("/params/S: not a subtree");
  auto& m = c.measured;
  m["S"] = c.base_labels(S);
  if (c.p.contains("path")) {
    std::vector<Vid> path;
    for (const auto& s : c.strs("path")) path.push_back(c.total_vertex("path", s));
    auto hat = cut_and_replace(X, S, path);
    m["replaced"] = c.labels(hat);
  }
  auto r = consistency_probe(X, S, c.dbls("Lambdas", {1, 2, 3}), c.integer("samples", 100), c.seed);
  json tab = json::array();
  for (size_t i = 0; i < r.table.size(); ++i)
    tab.push_back({{"Lambda", num(r.table[i].first)}, {"theta", num(r.table[i].second)},
                   {"max_constant", num(r.max_constant[i])}});
  m["table"] = tab;
  m["samples"] = r.samples;
  if (!r.worst.replaced.empty())
    c.witnesses["worst"] = {{"Lambda", num(r.worst.Lambda)},
                            {"path", c.labels(r.worst.path)},
                            {"replaced", c.labels(r.worst.replaced)},
                            {"constant", num(r.worst.constant)}};
}

void cmd_relhyp(Ctx& c) {
  if (!c.scene.peripherals) throw StructuralError("/peripherals: this command needs a peripheral structure");
  const auto& host = c.scene.graphs.at(c.scene.peripherals->host);
  PeripheralStructure P{c.scene.peripherals->subsets};
  int T = c.integer("T", 4);
  auto mode = delta_mode_from_string(c.str("mode", "slim_intervals"));
  auto r = relhyp_check(host, P, T, mode, c.dbl("delta_bound", 2.5), c.flag("sweep", true));
  auto& m = c.measured;
  m["T"] = T;
  m["mode"] = to_string(mode);
  m["delta_Y"] = num(r.delta_Y);
  m["delta_h"] = num(r.delta_h);
  m["delta_l"] = num(r.delta_l);
  json sweep = json::array();
  for (auto [t, d] : r.T_sweep) sweep.push_back({t, num(d)});
  m["T_sweep"] = sweep;
  json qc = json::array(), hqc = json::array(), cob = json::array();
  for (double x : r.qc) qc.push_back(num(x));
  for (double x : r.horoball_qc) hqc.push_back(num(x));
  for (const auto& row : r.cobdd) {
    json a = json::array();
    for (double x : row) a.push_back(num(x));
    cob.push_back(a);
  }
  m["qc"] = qc;
  m["horoball_qc"] = hqc;
  m["cobdd"] = cob;
  m["contraction_ok"] = r.contraction_ok;
  m["columns_isometric"] = r.columns_isometric;
  auto Yh = horoballify(host, P, T);
  auto diag = horoball_diagnostics(Yh, shortest_path_metric(Yh.graph));
  m["horoball_law"] = {{"max_error", num(diag.max_error)}, {"slack", num(diag.slack)}, {"truncated", diag.truncated}};
  m["warnings"] = r.warnings;
  c.compare("delta(Y^h) <= bound", r.delta_bound, r.delta_h, r.pass_h);
  c.compare("delta(Y^l) <= bound", r.delta_bound, r.delta_l, r.pass_l);
  c.compare("|d^h - (1 + 2 log d_H)| <= 2", diag.slack, diag.max_error, diag.max_error <= diag.slack + kTol);
  c.fail = !r.pass;
}

void cmd_automorphism(Ctx& c) {
  if (c.scene.automorphisms.empty()) throw StructuralError("/automorphisms: this command needs an automorphism");
  auto name = c.str("name", c.scene.automorphisms.begin()->first);
  auto it = c.scene.automorphisms.find(name);
  if (it == c.scene.automorphisms.end()) throw StructuralError("/params/name: unknown automorphism '" + name + "'");
  auto f = make_automorphism(it->second.rank, it->second.images, it->second.inverse);
  auto& m = c.measured;
  int mm = c.integer("m", 3), ball = c.integer("ball", 5), exc = c.integer("exceptional", 1);
  double lam = c.dbl("lambda", 1.5);
  auto w = weak_hyperbolicity_test(f, mm, lam, ball, exc);
  m["name"] = name;
  m["weak"] = {{"pass", w.pass}, {"checked", w.checked}, {"violators", w.violators.size()}};
  json viol = json::array();
  for (size_t i = 0; i < w.violators.size(); ++i)
    viol.push_back({{"word", format_word(w.violators[i])},
                    {"forward", w.violator_lengths[i].first},
                    {"backward", w.violator_lengths[i].second}});
  if (!w.violators.empty()) c.witnesses["violators"] = viol;
  auto policy = c.str("policy", "exact");
  if (policy != "exact" && policy != "greedy") throw StructuralError("/params/policy: expected exact or greedy");
  auto o = automorphism_pseudo_orbit(f, parse_word(c.str("h0", "a")), c.integer("K", 0), c.integer("steps", 6),
                                     policy == "exact" ? OrbitPolicy::Exact : OrbitPolicy::Greedy);
  json terms = json::array();
  for (const auto& t : o.terms) terms.push_back(format_word(t));
  m["pseudo_orbit"] = {{"terms", terms}, {"lengths", o.lengths}, {"K", o.K}, {"valid", o.valid}};
  c.compare("violating words outside the exceptional ball", 0, static_cast<double>(w.violators.size()), w.pass);
  c.fail = !w.pass;
}

const std::map<std::string, std::function<void(Ctx&)>>& table() {
  static const std::map<std::string, std::function<void(Ctx&)>> t = {
      {"analyze", cmd_analyze},         {"build-total", cmd_build_total}, {"flow", cmd_flow},
      {"ladder", cmd_ladder},           {"subdivide", cmd_subdivide},     {"flaring", cmd_flaring},
      {"comb", cmd_comb},               {"cut-replace", cmd_cut_replace}, {"relhyp", cmd_relhyp},
      {"automorphism", cmd_automorphism}};
  return t;
}

void text_value(std::ostringstream& os, const std::string& key, const json& v) {
  os << "  " << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"analyze", "build-total", "flow",        "ladder", "subdivide",
                                                 "flaring", "comb",        "cut-replace", "relhyp", "automorphism"};
  return names;
}

json resolve_params(const Scene& scene, const std::string& spec) {
  if (spec.empty()) return json::object();
  json j;
  auto first = spec.find_first_not_of(" \t\n");
  if (first != std::string::npos && spec[first] == '{') {
    try {
      j = json::parse(spec);
    } catch (const json::parse_error& e) {
      throw StructuralError(std::string("--params: ") + e.what());
    }
  } else if (scene.params.count(spec)) {
    j = scene.params.at(spec);
  } else {
    std::ifstream in(spec);
    if (!in) throw StructuralError("--params: '" + spec + "' is neither JSON, a parameter set nor a readable file");
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw StructuralError(spec + ": " + e.what());
    }
  }
  if (!j.is_object()) throw StructuralError("--params: expected a JSON object");
  return j;
}

Report run_command(const std::string& command, const Scene& scene, const json& params, std::uint64_t seed,
                   const RunOptions& opt) {
  auto it = table().find(command);
  if (it == table().end()) throw PreconditionError("unknown command '" + command + "'");
  json p = scene.params.count("default") ? scene.params.at("default") : json::object();
  if (!params.is_null()) {
    if (!params.is_object()) throw StructuralError("--params: expected a JSON object");
    for (auto jt = params.begin(); jt != params.end(); ++jt) p[jt.key()] = jt.value();
  }
  Ctx c{scene, p, seed, DistanceCache(opt.cache_dir)};
  auto t0 = std::chrono::steady_clock::now();
  it->second(c);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Report r;
  r.command = command;
  r.verdict_fail = c.fail;
  r.doc = {{"report_schema_version", kReportSchemaVersion},
           {"command", command},
           {"scene", scene.name},
           {"scene_hash", scene.hash},
           {"seed", seed},
           {"params", p},
           {"verdict", c.fail ? "fail" : "pass"},
           {"measured", c.measured},
           {"paper_vs_measured", c.pvm},
           {"witnesses", c.witnesses}};
  r.timings = c.timings;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f s", secs);
  r.timings.push_back(std::string("command: ") + buf);
  r.timings.push_back("distance cache: " + std::to_string(c.cache.hits()) + " hits, " +
                      std::to_string(c.cache.misses()) + " misses");
  return r;
}

std::string emit(const Report& r, const std::string& format) {
  if (format == "json") return r.doc.dump(2) + "\n";
  if (format != "text") throw PreconditionError("unknown format '" + format + "'");
  std::ostringstream os;
  os << "command: " << r.command << '\n';
  os << "scene: " << r.doc.at("scene").get<std::string>() << " (" << r.doc.at("scene_hash").get<std::string>() << ")\n";
  os << "seed: " << r.doc.at("seed").dump() << '\n';
  os << "verdict: " << r.doc.at("verdict").get<std::string>() << '\n';
  os << "measured:\n";
  const json measured = r.doc.at("measured").flatten();
  for (const auto& [k, v] : measured.items()) text_value(os, k, v);
  os << "paper vs measured:\n";
  for (const auto& row : r.doc.at("paper_vs_measured"))
    os << "  " << row.at("quantity").get<std::string>() << ": bound " << row.at("bound").dump() << ", measured "
       << row.at("measured").dump() << ", " << (row.at("holds").get<bool>() ? "holds" : "VIOLATED") << '\n';
  if (!r.doc.at("witnesses").empty()) {
    os << "witnesses:\n";
    const json wit = r.doc.at("witnesses").flatten();
    for (const auto& [k, v] : wit.items()) text_value(os, k, v);
  }
  os << "timings:\n";
  for (const auto& t : r.timings) os << "  " << t << '\n';
  return os.str();
}

}  // namespace coarsetree
