#include "gbp/json_io.hpp"

#include <algorithm>

namespace gbp {

using nlohmann::json;

namespace {

std::int64_t as_integer(const json& value, const char* what) {
  if (!value.is_number_integer()) throw InputError(ErrorCode::kParse, std::string(what) + " must be an integer");
  return value.get<std::int64_t>();
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(ErrorCode::kParse, std::string("missing key '") + key + "'");
  return doc.at(key);
}

}  // namespace

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError(ErrorCode::kParse, "instance must be a JSON object");
  Instance instance;
  const std::int64_t n = as_integer(require(doc, "vertices"), "vertices");
  if (n < 0 || n > (1 << 30)) throw InputError(ErrorCode::kParse, "vertex count out of range");
  instance.vertex_count = static_cast<int>(n);

  const json& edges = require(doc, "edges");
  if (!edges.is_array()) throw InputError(ErrorCode::kParse, "edges must be an array");
  for (const json& e : edges) {
    if (!e.is_object()) throw InputError(ErrorCode::kParse, "edge must be an object");
    Edge edge;
    const std::int64_t u = as_integer(require(e, "u"), "u");
    const std::int64_t v = as_integer(require(e, "v"), "v");
    if (u < 0 || v < 0 || u >= n || v >= n) throw InputError(ErrorCode::kVertexId, "edge endpoint out of range");
    edge.u = static_cast<VertexId>(u);
    edge.v = static_cast<VertexId>(v);
    edge.cost = e.contains("cost") ? as_integer(e.at("cost"), "cost") : 0;
    if (e.contains("forced")) {
      if (!e.at("forced").is_boolean()) throw InputError(ErrorCode::kParse, "forced must be a boolean");
      edge.forced = e.at("forced").get<bool>();
    }
    instance.edges.push_back(edge);
  }

  const json& habitats = require(doc, "habitats");
  if (!habitats.is_array()) throw InputError(ErrorCode::kParse, "habitats must be an array");
  for (const json& h : habitats) {
    if (!h.is_array()) throw InputError(ErrorCode::kParse, "habitat must be an array");
    std::vector<VertexId> hv;
    for (const json& v : h) {
      const std::int64_t x = as_integer(v, "habitat vertex");
      if (x < 0 || x >= n) throw InputError(ErrorCode::kVertexId, "habitat vertex out of range");
      hv.push_back(static_cast<VertexId>(x));
    }
    instance.habitats.push_back(std::move(hv));
  }

  if (doc.contains("budget") && !doc.at("budget").is_null()) instance.budget = as_integer(doc.at("budget"), "budget");

  if (doc.contains("embedding") && !doc.at("embedding").is_null()) {
    const json& emb = doc.at("embedding");
    if (!emb.is_array()) throw InputError(ErrorCode::kParse, "embedding must be an array");
    std::vector<Point> pts;
    for (const json& p : emb) {
      if (!p.is_array() || p.size() != 2) throw InputError(ErrorCode::kParse, "embedding point must be [x, y]");
      pts.push_back({as_integer(p[0], "x"), as_integer(p[1], "y")});
    }
    instance.embedding = std::move(pts);
  }

  canonicalize(instance);
  validate(instance);
  return instance;
}

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(ErrorCode::kParse, e.what());
  }
  return instance_from_json(doc);
}

json instance_to_json(const Instance& instance) {
  json doc;
  doc["vertices"] = instance.vertex_count;
  json edges = json::array();
  for (const Edge& e : instance.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"cost", e.cost}, {"forced", e.forced}});
  doc["edges"] = std::move(edges);
  json habitats = json::array();
  for (const auto& h : instance.habitats) habitats.push_back(h);
  doc["habitats"] = std::move(habitats);
  if (instance.budget) doc["budget"] = *instance.budget;
  if (instance.embedding) {
    json emb = json::array();
    for (const Point& p : *instance.embedding) emb.push_back({p.x, p.y});
    doc["embedding"] = std::move(emb);
  }
  return doc;
}

std::string serialize_instance(const Instance& instance) { return instance_to_json(instance).dump(1) + "\n"; }

json solution_to_json(const Instance& instance, std::span<const EdgeId> edges, bool feasible) {
  std::vector<EdgeId> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  json list = json::array();
  for (EdgeId id : sorted) list.push_back({instance.edges[id].u, instance.edges[id].v});
  return {{"edges", std::move(list)}, {"cost", cost_of(instance, sorted)}, {"feasible", feasible}};
}

std::vector<EdgeId> edges_from_json(const Instance& instance, const json& doc) {
  const json& list = doc.is_array() ? doc : require(doc, "edges");
  if (!list.is_array()) throw InputError(ErrorCode::kParse, "edges must be an array");
  std::vector<EdgeId> out;
  for (const json& pair : list) {
    if (!pair.is_array() || pair.size() != 2) throw InputError(ErrorCode::kParse, "edge must be [u, v]");
    const auto id = find_edge(instance, static_cast<VertexId>(as_integer(pair[0], "u")),
                              static_cast<VertexId>(as_integer(pair[1], "v")));
    if (!id) throw InputError(ErrorCode::kEdgeId, "solution names an edge not in the graph");
    out.push_back(*id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gbp

namespace gbp {

VcInstance vc_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError(ErrorCode::kParse, "vertex-cover document must be an object");
  VcInstance vc;
  try {
    vc.vertex_count = doc.at("vertices").get<int>();
    for (const json& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError(ErrorCode::kParse, "edge must be a pair");
      vc.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    if (doc.contains("rotation")) vc.rotation = doc["rotation"].get<std::vector<std::vector<int>>>();
    if (doc.contains("k")) vc.k = doc["k"].get<int>();
  } catch (const json::exception& ex) {
    throw InputError(ErrorCode::kParse, ex.what());
  }
  return vc;
}

json vc_to_json(const VcInstance& vc) {
  json j;
  j["vertices"] = vc.vertex_count;
  j["edges"] = json::array();
  for (auto [u, v] : vc.edges) j["edges"].push_back({u, v});
  if (vc.rotation) j["rotation"] = *vc.rotation;
  if (vc.k) j["k"] = *vc.k;
  return j;
}

json gadget_map_to_json(const GadgetMap& map) {
  json j;
  j["construction"] = static_cast<int>(map.construction);
  j["target_offset"] = map.target_offset;
  j["vertex_gadgets"] = map.vertex_gadget;
  j["edge_gadgets"] = map.edge_gadget;
  j["source_edges"] = json::array();
  for (auto [u, v] : map.source_edges) j["source_edges"].push_back({u, v});
  j["anti_crossing"] = map.anti_crossing;
  j["docking"] = json::array();
  for (const DockRecord& d : map.docking_log)
    j["docking"].push_back({{"vertex", d.source_vertex},
                            {"pair", d.pair_index},
                            {"edge", d.source_edge},
                            {"side", d.edge_side}});
  return j;
}

json ledger_to_json(const ReductionLedger& ledger) {
  json j;
  j["verdict"] = ledger.verdict == Verdict::kContinue ? "continue" : "no-instance";
  if (ledger.violating_habitat) j["violating_habitat"] = *ledger.violating_habitat;
  j["budget_delta"] = ledger.budget_delta;
  j["newly_forced"] = ledger.newly_forced;
  j["fixed_edges"] = ledger.fixed_edges;
  j["removed_habitats"] = ledger.removed_habitats;
  j["removed_components"] = json::array();
  for (const RemovedComponent& c : ledger.removed_components)
    j["removed_components"].push_back({{"vertices", c.vertices}, {"chosen", c.chosen}, {"cost", c.cost}});
  j["vertex_origin"] = ledger.vertex_origin;
  j["edge_origin"] = ledger.edge_origin;
  j["habitat_origin"] = ledger.habitat_origin;
  return j;
}

}  // namespace gbp
