#include "gbp/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "local_graph.hpp"

namespace gbp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kVertexId: return "vertex-id";
    case ErrorCode::kEdgeId: return "edge-id";
    case ErrorCode::kSelfLoop: return "self-loop";
    case ErrorCode::kDuplicateEdge: return "duplicate-edge";
    case ErrorCode::kNegativeCost: return "negative-cost";
    case ErrorCode::kSmallHabitat: return "small-habitat";
    case ErrorCode::kRepeatedHabitatVertex: return "repeated-habitat-vertex";
    case ErrorCode::kEmbeddingSize: return "embedding-size";
    case ErrorCode::kEmbeddingCrossing: return "embedding-crossing";
    case ErrorCode::kCollinearHabitat: return "collinear-habitat";
    case ErrorCode::kNotCanonical: return "not-canonical";
  }
  return "unknown";
}

void canonicalize(Instance& instance) {
  for (Edge& e : instance.edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::stable_sort(instance.edges.begin(), instance.edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (auto& h : instance.habitats) std::sort(h.begin(), h.end());
}

namespace {

void check_embedding(const Instance& instance) {
  const auto& pts = *instance.embedding;
  if (static_cast<int>(pts.size()) != instance.vertex_count)
    throw InputError(ErrorCode::kEmbeddingSize, "embedding must list one point per vertex");
  for (int a = 0; a < instance.vertex_count; ++a)
    for (int b = a + 1; b < instance.vertex_count; ++b)
      if (pts[a] == pts[b])
        throw InputError(ErrorCode::kEmbeddingCrossing,
                         "vertices " + std::to_string(a) + " and " + std::to_string(b) + " share a point");
  const auto& es = instance.edges;
  for (const Edge& e : es)
    for (int w = 0; w < instance.vertex_count; ++w)
      if (w != e.u && w != e.v && on_segment(pts[w], pts[e.u], pts[e.v]))
        throw InputError(ErrorCode::kEmbeddingCrossing,
                         "vertex " + std::to_string(w) + " lies on edge {" + std::to_string(e.u) + "," +
                             std::to_string(e.v) + "}");
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j) {
      const Edge& a = es[i];
      const Edge& b = es[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
      if (segments_intersect(pts[a.u], pts[a.v], pts[b.u], pts[b.v]))
        throw InputError(ErrorCode::kEmbeddingCrossing,
                         "edges {" + std::to_string(a.u) + "," + std::to_string(a.v) + "} and {" +
                             std::to_string(b.u) + "," + std::to_string(b.v) + "} cross");
    }
  for (const auto& h : instance.habitats)
    if (h.size() == 3 && orientation(pts[h[0]], pts[h[1]], pts[h[2]]) == 0)
      throw InputError(ErrorCode::kCollinearHabitat, "habitat triangle is collinear");
}

}  // namespace

InstanceStats validate(const Instance& instance) {
  const int n = instance.vertex_count;
  if (n < 0) throw InputError(ErrorCode::kVertexId, "negative vertex count");
  for (size_t i = 0; i < instance.edges.size(); ++i) {
    const Edge& e = instance.edges[i];
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw InputError(ErrorCode::kVertexId, "edge endpoint out of range");
    if (e.u == e.v) throw InputError(ErrorCode::kSelfLoop, "self-loop at " + std::to_string(e.u));
    if (e.u > e.v) throw InputError(ErrorCode::kNotCanonical, "edge endpoints not ordered");
    if (e.cost < 0) throw InputError(ErrorCode::kNegativeCost, "negative edge cost");
    if (i > 0) {
      const Edge& p = instance.edges[i - 1];
      if (p.u == e.u && p.v == e.v)
        throw InputError(ErrorCode::kDuplicateEdge,
                         "duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
      if (p.u > e.u || (p.u == e.u && p.v > e.v))
        throw InputError(ErrorCode::kNotCanonical, "edges not sorted");
    }
  }
  for (const auto& h : instance.habitats) {
    if (h.size() < 2) throw InputError(ErrorCode::kSmallHabitat, "habitat with fewer than two vertices");
    for (size_t i = 0; i < h.size(); ++i) {
      if (h[i] < 0 || h[i] >= n) throw InputError(ErrorCode::kVertexId, "habitat vertex out of range");
      if (i > 0 && h[i - 1] == h[i])
        throw InputError(ErrorCode::kRepeatedHabitatVertex, "habitat lists a vertex twice");
      if (i > 0 && h[i - 1] > h[i]) throw InputError(ErrorCode::kNotCanonical, "habitat not sorted");
    }
  }
  if (instance.embedding) check_embedding(instance);
  return stats(instance);
}

Instance make_instance(int vertex_count, std::vector<Edge> edges, std::vector<std::vector<VertexId>> habitats,
                       std::optional<Cost> budget, std::optional<std::vector<Point>> embedding) {
  Instance instance{vertex_count, std::move(edges), std::move(habitats), budget, std::move(embedding)};
  canonicalize(instance);
  validate(instance);
  return instance;
}

std::optional<EdgeId> find_edge(const Instance& instance, VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  const auto it = std::lower_bound(instance.edges.begin(), instance.edges.end(), std::pair{u, v},
                                   [](const Edge& e, const std::pair<int, int>& key) {
                                     return e.u != key.first ? e.u < key.first : e.v < key.second;
                                   });
  if (it == instance.edges.end() || it->u != u || it->v != v) return std::nullopt;
  return static_cast<EdgeId>(it - instance.edges.begin());
}

Adjacency::Adjacency(const Instance& instance) : offset_(instance.vertex_count + 1, 0) {
  for (const Edge& e : instance.edges) {
    ++offset_[e.u + 1];
    ++offset_[e.v + 1];
  }
  std::partial_sum(offset_.begin(), offset_.end(), offset_.begin());
  arcs_.resize(offset_.back());
  std::vector<int> fill(offset_.begin(), offset_.end() - 1);
  for (EdgeId id = 0; id < static_cast<EdgeId>(instance.edges.size()); ++id) {
    const Edge& e = instance.edges[id];
    arcs_[fill[e.u]++] = {e.v, id};
    arcs_[fill[e.v]++] = {e.u, id};
  }
  for (int v = 0; v + 1 < static_cast<int>(offset_.size()); ++v)
    std::sort(arcs_.begin() + offset_[v], arcs_.begin() + offset_[v + 1],
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
}

int Adjacency::max_degree() const {
  int best = 0;
  for (int v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
  return best;
}

std::optional<EdgeId> Adjacency::edge_between(VertexId u, VertexId v) const {
  const auto list = arcs(u);
  const auto it = std::lower_bound(list.begin(), list.end(), v, [](const Arc& a, VertexId x) { return a.to < x; });
  if (it == list.end() || it->to != v) return std::nullopt;
  return it->edge;
}

std::vector<EdgeId> habitat_edges(const Adjacency& adjacency, std::span<const VertexId> habitat) {
  std::vector<EdgeId> out;
  for (VertexId v : habitat)
    for (const Arc& a : adjacency.arcs(v))
      if (a.to > v && detail::local_index(habitat, a.to) >= 0) out.push_back(a.edge);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_habitat(const Instance& instance, std::span<const VertexId> habitat) {
  for (VertexId v : habitat)
    if (v < 0 || v >= instance.vertex_count) throw InputError(ErrorCode::kVertexId, "unknown habitat vertex");
}

// Habitats given to the public diameter query need not be sorted.
std::vector<VertexId> sorted_unique(std::span<const VertexId> habitat) {
  std::vector<VertexId> h(habitat.begin(), habitat.end());
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

}  // namespace

int habitat_diameter(const Instance& instance, const std::vector<char>& edge_mask,
                     std::span<const VertexId> habitat) {
  check_habitat(instance, habitat);
  const std::vector<VertexId> h = sorted_unique(habitat);
  detail::LocalGraph g(static_cast<int>(h.size()));
  for (size_t id = 0; id < instance.edges.size(); ++id) {
    if (id >= edge_mask.size() || !edge_mask[id]) continue;
    const int a = detail::local_index(h, instance.edges[id].u);
    const int b = detail::local_index(h, instance.edges[id].v);
    if (a >= 0 && b >= 0) g.add_edge(a, b);
  }
  return g.diameter();
}

int habitat_diameter(const Instance& instance, std::span<const EdgeId> edge_set, std::span<const VertexId> habitat) {
  std::vector<char> mask(instance.edges.size(), 0);
  for (EdgeId id : edge_set) {
    if (id < 0 || id >= static_cast<EdgeId>(instance.edges.size()))
      throw InputError(ErrorCode::kEdgeId, "unknown edge id");
    mask[id] = 1;
  }
  return habitat_diameter(instance, mask, habitat);
}

Cost cost_of(const Instance& instance, std::span<const EdgeId> edges) {
  Cost total = 0;
  for (EdgeId id : edges) total += instance.edges[id].cost;
  return total;
}

Solution is_solution(const Instance& instance, std::span<const EdgeId> edges) {
  Solution s;
  std::vector<char> mask(instance.edges.size(), 0);
  for (EdgeId id : edges)
    if (id >= 0 && id < static_cast<EdgeId>(instance.edges.size()) && !mask[id]) {
      mask[id] = 1;
      s.edges.push_back(id);
    }
  std::sort(s.edges.begin(), s.edges.end());
  s.cost = cost_of(instance, s.edges);
  for (EdgeId id = 0; id < static_cast<EdgeId>(instance.edges.size()); ++id)
    if (instance.edges[id].forced && !mask[id]) s.missing_forced.push_back(id);
  const Adjacency adjacency(instance);
  for (HabitatId h = 0; h < static_cast<HabitatId>(instance.habitats.size()); ++h) {
    const auto& hv = instance.habitats[h];
    detail::LocalGraph g(static_cast<int>(hv.size()));
    for (EdgeId id : habitat_edges(adjacency, hv))
      if (mask[id]) g.add_edge(detail::local_index(hv, instance.edges[id].u), detail::local_index(hv, instance.edges[id].v));
    if (!g.diameter_at_most_two()) s.violated_habitats.push_back(h);
  }
  s.over_budget = instance.budget && s.cost > *instance.budget;
  s.feasible = s.missing_forced.empty() && s.violated_habitats.empty() && !s.over_budget;
  return s;
}

InstanceStats stats(const Instance& instance) {
  InstanceStats st;
  st.vertex_count = instance.vertex_count;
  st.edge_count = static_cast<int>(instance.edges.size());
  std::vector<int> degree(instance.vertex_count, 0);
  for (const Edge& e : instance.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  for (int d : degree) st.max_degree = std::max(st.max_degree, d);
  for (const auto& h : instance.habitats) st.max_habitat_size = std::max(st.max_habitat_size, static_cast<int>(h.size()));
  st.habitat_count = static_cast<int>(instance.habitats.size());
  st.is_planar_embedded = instance.embedding.has_value();
  return st;
}

bool preferred(const Instance& instance, std::span<const EdgeId> a, std::span<const EdgeId> b) {
  const Cost ca = cost_of(instance, a);
  const Cost cb = cost_of(instance, b);
  if (ca != cb) return ca < cb;
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Projection project(const Instance& instance, const std::vector<char>& keep_vertex, const std::vector<char>& keep_edge,
                   const std::vector<char>& keep_habitat) {
  Projection p;
  std::vector<int> new_id(instance.vertex_count, -1);
  for (VertexId v = 0; v < instance.vertex_count; ++v)
    if (keep_vertex[v]) {
      new_id[v] = static_cast<int>(p.vertex_origin.size());
      p.vertex_origin.push_back(v);
    }
  p.instance.vertex_count = static_cast<int>(p.vertex_origin.size());
  for (EdgeId id = 0; id < static_cast<EdgeId>(instance.edges.size()); ++id) {
    if (!keep_edge[id]) continue;
    Edge e = instance.edges[id];
    e.u = new_id[e.u];
    e.v = new_id[e.v];
    p.instance.edges.push_back(e);
    p.edge_origin.push_back(id);
  }
  for (HabitatId h = 0; h < static_cast<HabitatId>(instance.habitats.size()); ++h) {
    if (!keep_habitat[h]) continue;
    std::vector<VertexId> hv;
    for (VertexId v : instance.habitats[h]) hv.push_back(new_id[v]);
    p.instance.habitats.push_back(std::move(hv));
    p.habitat_origin.push_back(h);
  }
  p.instance.budget = instance.budget;
  if (instance.embedding) {
    std::vector<Point> pts;
    for (VertexId v : p.vertex_origin) pts.push_back((*instance.embedding)[v]);
    p.instance.embedding = std::move(pts);
  }
  return p;
}

}  // namespace gbp
