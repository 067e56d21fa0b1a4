#include "gbp/planar3.hpp"

#include <algorithm>
#include <numeric>

#include "gbp/exact.hpp"

namespace gbp {

namespace {

bool contains(const std::vector<VertexId>& sorted, VertexId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

HabitatGeometry classify(const Instance& instance, HabitatId habitat) {
  if (!instance.embedding) throw Inapplicable("classification needs an embedding");
  const auto& h = instance.habitats.at(habitat);
  if (h.size() != 3) throw Inapplicable("classification needs a triangle habitat");
  const auto& pts = *instance.embedding;
  HabitatGeometry g;
  g.habitat = habitat;
  g.triangle = {h[0], h[1], h[2]};
  for (int i = 0; i < 3; ++i) {
    const auto id = find_edge(instance, h[i], h[(i + 1) % 3]);
    if (!id) throw Inapplicable("habitat does not induce a triangle");
    g.boundary_edges[i] = *id;
  }
  std::sort(g.boundary_edges.begin(), g.boundary_edges.end());

  std::vector<char> inside(instance.vertex_count, 0);
  for (VertexId v = 0; v < instance.vertex_count; ++v) {
    if (v == h[0] || v == h[1] || v == h[2]) continue;
    if (strictly_inside_triangle(pts[v], pts[h[0]], pts[h[1]], pts[h[2]])) {
      inside[v] = 1;
      g.inside_vertices.push_back(v);
    } else {
      g.outside_vertices.push_back(v);
    }
  }
  for (EdgeId id = 0; id < static_cast<EdgeId>(instance.edges.size()); ++id) {
    if (std::find(g.boundary_edges.begin(), g.boundary_edges.end(), id) != g.boundary_edges.end()) continue;
    const Edge& e = instance.edges[id];
    (inside[e.u] || inside[e.v] ? g.inside_edges : g.outside_edges).push_back(id);
  }
  for (HabitatId other = 0; other < static_cast<HabitatId>(instance.habitats.size()); ++other) {
    if (other == habitat) continue;
    const auto& o = instance.habitats[other];
    const bool within = std::all_of(o.begin(), o.end(), [&](VertexId v) { return inside[v] || contains(h, v); });
    (within ? g.inside_habitats : g.outside_habitats).push_back(other);
  }
  return g;
}

std::vector<HabitatGeometry> classify_all(const Instance& instance) {
  std::vector<HabitatGeometry> out;
  for (HabitatId h = 0; h < static_cast<HabitatId>(instance.habitats.size()); ++h) out.push_back(classify(instance, h));
  return out;
}

std::optional<HabitatId> find_reducible(const std::vector<HabitatGeometry>& geometries) {
  for (const HabitatGeometry& g : geometries) {
    if (g.inside_habitats.empty()) continue;
    const bool reducible = std::all_of(g.inside_habitats.begin(), g.inside_habitats.end(), [&](HabitatId h) {
      return geometries[h].inside_habitats.empty();
    });
    if (reducible) return g.habitat;
  }
  return std::nullopt;
}

namespace {

// The inner graph: H, the vertices inside it, E_H, the inside edges and the
// inside habitats. Boundary edges other than `omitted` are free and forced;
// `omitted` (if any) costs more than all inside edges together.
Optimum solve_inner(const Instance& instance, const HabitatGeometry& g, std::optional<EdgeId> omitted) {
  std::vector<char> kv(instance.vertex_count, 0), ke(instance.edges.size(), 0), kh(instance.habitats.size(), 0);
  for (VertexId v : g.triangle) kv[v] = 1;
  for (VertexId v : g.inside_vertices) kv[v] = 1;
  for (EdgeId e : g.boundary_edges) ke[e] = 1;
  Cost inner_total = 0;
  for (EdgeId e : g.inside_edges) {
    ke[e] = 1;
    inner_total += instance.edges[e].cost;
  }
  for (HabitatId h : g.inside_habitats) kh[h] = 1;
  Projection p = project(instance, kv, ke, kh);
  p.instance.budget.reset();
  p.instance.embedding.reset();
  for (std::size_t i = 0; i < p.edge_origin.size(); ++i) {
    const EdgeId origin = p.edge_origin[i];
    if (std::find(g.boundary_edges.begin(), g.boundary_edges.end(), origin) == g.boundary_edges.end()) continue;
    Edge& e = p.instance.edges[i];
    if (omitted && origin == *omitted) {
      e.cost = 1 + inner_total;
      e.forced = false;
    } else {
      e.cost = 0;
      e.forced = true;
    }
  }
  const auto sol = solve_exact(p.instance);
  if (!sol) throw std::logic_error("inside instance of a reducible habitat is infeasible");
  Optimum out;
  for (EdgeId id : sol->edges) out.edges.push_back(p.edge_origin[id]);
  out.cost = sol->cost;
  if (omitted && std::find(out.edges.begin(), out.edges.end(), *omitted) != out.edges.end())
    throw std::logic_error("e-omitting optimum uses the omitted edge");
  return out;
}

}  // namespace

InsideOptima inside_optima(const Instance& instance, const HabitatGeometry& geometry) {
  InsideOptima o;
  o.habitat = geometry.habitat;
  o.boundary = geometry.boundary_edges;
  const Optimum all = solve_inner(instance, geometry, std::nullopt);
  o.opt = all.cost;
  o.witness = all.edges;
  for (int i = 0; i < 3; ++i) {
    const Optimum omit = solve_inner(instance, geometry, geometry.boundary_edges[i]);
    o.omit_opt[i] = omit.cost;
    o.omit_witness[i] = omit.edges;
  }
  return o;
}

Rule8Step apply_rule8(const Instance& instance, const HabitatGeometry& geometry, const InsideOptima& optima) {
  Rule8Step step;
  step.habitat = geometry.habitat;
  step.optima = optima;
  step.before = instance;
  Instance work = instance;
  Cost delta = 2 * optima.opt;
  for (int i = 0; i < 3; ++i) {
    Edge& e = work.edges[geometry.boundary_edges[i]];
    e.cost += optima.opt;
    if (!e.forced) {
      e.cost -= optima.omit_opt[i];
      delta -= optima.omit_opt[i];
    }
  }
  for (int i = 0; i < 3; ++i) {
    Edge& e = work.edges[geometry.boundary_edges[i]];
    if (e.cost < 0) {
      delta -= e.cost;
      e.cost = 0;
      e.forced = true;
      step.negative_edges.push_back(geometry.boundary_edges[i]);
    }
  }
  std::vector<char> kv(work.vertex_count, 1), ke(work.edges.size(), 1), kh(work.habitats.size(), 1);
  for (VertexId v : geometry.inside_vertices) kv[v] = 0;
  for (EdgeId e : geometry.inside_edges) ke[e] = 0;
  for (HabitatId h : geometry.inside_habitats) kh[h] = 0;
  Projection p = project(work, kv, ke, kh);
  if (p.instance.budget) *p.instance.budget += delta;
  step.delta = delta;
  step.after = std::move(p.instance);
  step.edge_origin = std::move(p.edge_origin);
  return step;
}

std::vector<EdgeId> unwind_rule8(const Rule8Step& step, std::span<const EdgeId> after_solution) {
  std::vector<EdgeId> out;
  for (EdgeId id : after_solution) out.push_back(step.edge_origin.at(id));
  std::sort(out.begin(), out.end());
  const auto& b = step.optima.boundary;
  int missing = -1, missing_count = 0;
  for (int i = 0; i < 3; ++i)
    if (!std::binary_search(out.begin(), out.end(), b[i])) {
      missing = i;
      ++missing_count;
    }
  if (missing_count > 1) throw std::logic_error("reduced solution drops two boundary edges of a habitat");
  const auto& witness = missing < 0 ? step.optima.witness : step.optima.omit_witness[missing];
  for (EdgeId id : witness)
    if (std::find(b.begin(), b.end(), id) == b.end()) out.push_back(id);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Planar3Result solve_planar3_traced(const Instance& instance) {
  if (!instance.embedding) throw Inapplicable("planar3 needs an embedding");
  for (const auto& h : instance.habitats)
    if (h.size() > 3) throw Inapplicable("planar3 needs habitats of size at most three");
  Planar3Result result;
  result.preprocessed = preprocess_all(instance);
  if (result.preprocessed.ledger.verdict == Verdict::kNoInstance) return result;

  Instance current = result.preprocessed.instance;
  while (true) {
    const auto geometries = classify_all(current);
    const auto reducible = find_reducible(geometries);
    if (!reducible) break;
    const HabitatGeometry& g = geometries[*reducible];
    const InsideOptima optima = inside_optima(current, g);
    result.steps.push_back(apply_rule8(current, g, optima));
    current = result.steps.back().after;
  }
  // Every remaining habitat is a face; the residual instance goes to the oracle.
  const auto residual = solve_exact(current);
  if (!residual) return result;
  std::vector<EdgeId> edges = residual->edges;
  for (auto it = result.steps.rbegin(); it != result.steps.rend(); ++it) edges = unwind_rule8(*it, edges);
  edges = lift(result.preprocessed.ledger, edges);
  result.optimum = Optimum{edges, cost_of(instance, edges)};
  return result;
}

std::optional<Optimum> solve_planar3(const Instance& instance) { return solve_planar3_traced(instance).optimum; }

}  // namespace gbp
