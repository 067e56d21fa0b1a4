#include "gbp/preprocess.hpp"

#include <algorithm>
#include <set>

#include "local_graph.hpp"

namespace gbp {

namespace {

constexpr int kSmallComponent = 6;

// Works in the id space of the input instance; deletions only clear alive
// flags, and finish() projects the survivors.
class Reducer {
 public:
  explicit Reducer(const Instance& instance)
      : inst_(instance),
        adjacency_(instance),
        alive_vertex_(instance.vertex_count, 1),
        alive_edge_(instance.edges.size(), 1),
        alive_habitat_(instance.habitats.size(), 1),
        originally_forced_(instance.edges.size(), 0) {
    for (std::size_t id = 0; id < inst_.edges.size(); ++id) originally_forced_[id] = inst_.edges[id].forced;
    vertex_habitats_.resize(instance.vertex_count);
    for (HabitatId h = 0; h < habitat_count(); ++h) {
      hedges_.push_back(habitat_edges(adjacency_, inst_.habitats[h]));
      for (VertexId v : inst_.habitats[h]) vertex_habitats_[v].push_back(h);
    }
  }

  void dedup_habitats() {
    std::set<std::vector<VertexId>> seen;
    for (HabitatId h = 0; h < habitat_count(); ++h)
      if (!seen.insert(inst_.habitats[h]).second) kill_habitat(h);
  }

  bool rule1() {
    for (HabitatId h = 0; h < habitat_count(); ++h)
      if (alive_habitat_[h] && induced(h, false).diameter() > kDiameterBound) {
        violating_ = h;
        return false;
      }
    return true;
  }

  void rule2_and_3() {
    for (HabitatId h = 0; h < habitat_count(); ++h) {
      if (!alive_habitat_[h]) continue;
      const auto& hv = inst_.habitats[h];
      const detail::LocalGraph g = induced(h, false);
      for (EdgeId id : hedges_[h]) {
        const int a = local(h, inst_.edges[id].u);
        const int b = local(h, inst_.edges[id].v);
        if (!g.common_neighbor(a, b)) force(id);
      }
      for (int v = 0; v < static_cast<int>(hv.size()); ++v)
        if (hv.size() > 2 && !g.connected_without(v))
          for (EdgeId id : hedges_[h])
            if (inst_.edges[id].u == hv[v] || inst_.edges[id].v == hv[v]) force(id);
    }
  }

  void necessary() {
    for (HabitatId h = 0; h < habitat_count(); ++h) {
      if (!alive_habitat_[h]) continue;
      detail::LocalGraph g = induced(h, false);
      for (EdgeId id : hedges_[h]) {
        const int a = local(h, inst_.edges[id].u);
        const int b = local(h, inst_.edges[id].v);
        g.remove_edge(a, b);
        if (!g.diameter_at_most_two()) force(id);
        g.add_edge(a, b);
      }
    }
  }

  bool rule5() {
    std::vector<char> used(inst_.edges.size(), 0);
    for (HabitatId h = 0; h < habitat_count(); ++h)
      if (alive_habitat_[h])
        for (EdgeId id : hedges_[h]) used[id] = 1;
    bool changed = false;
    for (EdgeId id = 0; id < edge_count(); ++id)
      if (alive_edge_[id] && !used[id]) {
        alive_edge_[id] = 0;
        if (inst_.edges[id].forced) fix(id);
        changed = true;
      }
    return changed;
  }

  bool rule4() {
    bool changed = false;
    for (HabitatId h = 0; h < habitat_count(); ++h)
      if (alive_habitat_[h] && induced(h, true).diameter_at_most_two()) {
        kill_habitat(h);
        changed = true;
      }
    return changed;
  }

  bool rule6() {
    std::vector<int> degree(inst_.vertex_count, 0);
    for (EdgeId id = 0; id < edge_count(); ++id)
      if (alive_edge_[id]) {
        ++degree[inst_.edges[id].u];
        ++degree[inst_.edges[id].v];
      }
    bool changed = false;
    for (VertexId v = 0; v < inst_.vertex_count; ++v)
      if (alive_vertex_[v] && degree[v] == 0) {
        alive_vertex_[v] = 0;
        changed = true;
      }
    return changed;
  }

  bool rule7() {
    std::vector<int> comp(inst_.vertex_count, -1);
    std::vector<std::vector<VertexId>> members;
    for (VertexId s = 0; s < inst_.vertex_count; ++s) {
      if (!alive_vertex_[s] || comp[s] >= 0) continue;
      const int c = static_cast<int>(members.size());
      members.emplace_back();
      std::vector<VertexId> stack{s};
      comp[s] = c;
      while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        members[c].push_back(x);
        for (const Arc& arc : adjacency_.arcs(x))
          if (alive_edge_[arc.edge] && comp[arc.to] < 0) {
            comp[arc.to] = c;
            stack.push_back(arc.to);
          }
      }
    }
    bool changed = false;
    for (auto& vs : members) {
      if (static_cast<int>(vs.size()) > kSmallComponent) continue;
      std::sort(vs.begin(), vs.end());
      changed |= remove_small_component(vs, comp);
    }
    return changed;
  }

  void cleanup_fixpoint(bool with_rule7) {
    bool changed = true;
    while (changed) {
      changed = false;
      changed |= rule5();
      changed |= rule4();
      changed |= rule6();
      if (with_rule7) changed |= rule7();
    }
  }

  Preprocessed finish() {
    Preprocessed out;
    ReductionLedger& ledger = out.ledger;
    if (violating_) {
      out.instance = inst_;
      out.instance.edges = original_edges();
      ledger.verdict = Verdict::kNoInstance;
      ledger.violating_habitat = violating_;
      for (VertexId v = 0; v < inst_.vertex_count; ++v) ledger.vertex_origin.push_back(v);
      for (EdgeId e = 0; e < edge_count(); ++e) ledger.edge_origin.push_back(e);
      for (HabitatId h = 0; h < habitat_count(); ++h) ledger.habitat_origin.push_back(h);
      return out;
    }
    Projection p = project(inst_, alive_vertex_, alive_edge_, alive_habitat_);
    std::sort(fixed_.begin(), fixed_.end());
    ledger.budget_delta = cost_of(inst_, fixed_);
    ledger.fixed_edges = fixed_;
    ledger.removed_components = std::move(removed_components_);
    for (HabitatId h = 0; h < habitat_count(); ++h)
      if (!alive_habitat_[h]) ledger.removed_habitats.push_back(h);
    for (EdgeId id = 0; id < edge_count(); ++id)
      if (inst_.edges[id].forced && !originally_forced_[id]) ledger.newly_forced.push_back(id);
    ledger.vertex_origin = std::move(p.vertex_origin);
    ledger.edge_origin = std::move(p.edge_origin);
    ledger.habitat_origin = std::move(p.habitat_origin);
    out.instance = std::move(p.instance);
    if (out.instance.budget) *out.instance.budget -= ledger.budget_delta;
    return out;
  }

  Instance forced_view() const { return inst_; }

 private:
  int habitat_count() const { return static_cast<int>(inst_.habitats.size()); }
  int edge_count() const { return static_cast<int>(inst_.edges.size()); }
  int local(HabitatId h, VertexId v) const { return detail::local_index(inst_.habitats[h], v); }

  std::vector<Edge> original_edges() const {
    std::vector<Edge> edges = inst_.edges;
    for (std::size_t id = 0; id < edges.size(); ++id) edges[id].forced = originally_forced_[id];
    return edges;
  }

  detail::LocalGraph induced(HabitatId h, bool forced_only) const {
    detail::LocalGraph g(static_cast<int>(inst_.habitats[h].size()));
    for (EdgeId id : hedges_[h])
      if (!forced_only || inst_.edges[id].forced) g.add_edge(local(h, inst_.edges[id].u), local(h, inst_.edges[id].v));
    return g;
  }

  void force(EdgeId id) { inst_.edges[id].forced = true; }
  void fix(EdgeId id) { fixed_.push_back(id); }
  void kill_habitat(HabitatId h) { alive_habitat_[h] = 0; }

  // Exhaustive search over the unforced component edges in the canonical
  // (cost, size, lexicographic) order.
  bool remove_small_component(const std::vector<VertexId>& vs, const std::vector<int>& comp) {
    const int c = comp[vs.front()];
    std::vector<EdgeId> forced, free;
    std::vector<HabitatId> candidates;
    for (VertexId v : vs) {
      for (const Arc& arc : adjacency_.arcs(v))
        if (alive_edge_[arc.edge] && arc.to > v) (inst_.edges[arc.edge].forced ? forced : free).push_back(arc.edge);
      candidates.insert(candidates.end(), vertex_habitats_[v].begin(), vertex_habitats_[v].end());
    }
    std::sort(forced.begin(), forced.end());
    std::sort(free.begin(), free.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<HabitatId> habs;
    for (HabitatId h : candidates) {
      if (!alive_habitat_[h]) continue;
      const auto& hv = inst_.habitats[h];
      const auto inside = std::count_if(hv.begin(), hv.end(), [&](VertexId v) { return comp[v] == c; });
      if (inside == 0) continue;
      // A habitat reaching past the component is infeasible; leave it to the diameter guard.
      if (inside != static_cast<std::ptrdiff_t>(hv.size())) return false;
      habs.push_back(h);
    }

    std::optional<std::vector<EdgeId>> best;
    const int k = static_cast<int>(free.size());
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
      std::vector<EdgeId> set = forced;
      for (int s = 0; s < k; ++s)
        if ((mask >> s) & 1U) set.push_back(free[s]);
      std::sort(set.begin(), set.end());
      if (best && !preferred(inst_, set, *best)) continue;
      bool ok = true;
      for (HabitatId h : habs) {
        detail::LocalGraph g(static_cast<int>(inst_.habitats[h].size()));
        for (EdgeId id : set) {
          const int a = local(h, inst_.edges[id].u);
          const int b = local(h, inst_.edges[id].v);
          if (a >= 0 && b >= 0) g.add_edge(a, b);
        }
        if (!g.diameter_at_most_two()) {
          ok = false;
          break;
        }
      }
      if (ok) best = std::move(set);
    }
    if (!best) throw std::logic_error("small component without a feasible local solution");
    RemovedComponent rc{vs, *best, cost_of(inst_, *best)};
    for (EdgeId id : *best) fix(id);
    for (EdgeId id : forced) alive_edge_[id] = 0;
    for (EdgeId id : free) alive_edge_[id] = 0;
    for (HabitatId h : habs) kill_habitat(h);
    for (VertexId v : vs) alive_vertex_[v] = 0;
    removed_components_.push_back(std::move(rc));
    return true;
  }

  Instance inst_;
  Adjacency adjacency_;
  std::vector<char> alive_vertex_;
  std::vector<char> alive_edge_;
  std::vector<char> alive_habitat_;
  std::vector<char> originally_forced_;
  std::vector<std::vector<EdgeId>> hedges_;
  std::vector<std::vector<HabitatId>> vertex_habitats_;
  std::vector<EdgeId> fixed_;
  std::vector<RemovedComponent> removed_components_;
  std::optional<HabitatId> violating_;
};

}  // namespace

std::optional<HabitatId> rule1_diameter_guard(const Instance& instance) {
  const Adjacency adjacency(instance);
  for (HabitatId h = 0; h < static_cast<HabitatId>(instance.habitats.size()); ++h) {
    const auto edges = habitat_edges(adjacency, instance.habitats[h]);
    if (habitat_diameter(instance, edges, instance.habitats[h]) > kDiameterBound) return h;
  }
  return std::nullopt;
}

Instance rule2_force_non_triangle_edges(const Instance& instance) {
  Reducer r(instance);
  r.rule2_and_3();
  return r.forced_view();
}

Instance force_necessary_edges(const Instance& instance) {
  Reducer r(instance);
  r.necessary();
  return r.forced_view();
}

Preprocessed rule4_to_6_cleanup(const Instance& instance) {
  Reducer r(instance);
  r.cleanup_fixpoint(false);
  return r.finish();
}

Preprocessed rule7_small_components(const Instance& instance) {
  Reducer r(instance);
  r.rule7();
  return r.finish();
}

Preprocessed preprocess_all(const Instance& instance, bool small_components) {
  Reducer r(instance);
  r.dedup_habitats();
  if (r.rule1()) {
    r.rule2_and_3();
    r.necessary();
    r.cleanup_fixpoint(small_components);
  }
  return r.finish();
}

Instance replay(const Instance& original, const ReductionLedger& ledger) {
  if (ledger.verdict == Verdict::kNoInstance) return original;
  Instance marked = original;
  for (EdgeId id : ledger.newly_forced) marked.edges[id].forced = true;
  std::vector<char> kv(original.vertex_count, 0), ke(original.edges.size(), 0), kh(original.habitats.size(), 0);
  for (VertexId v : ledger.vertex_origin) kv[v] = 1;
  for (EdgeId e : ledger.edge_origin) ke[e] = 1;
  for (HabitatId h : ledger.habitat_origin) kh[h] = 1;
  Instance reduced = project(marked, kv, ke, kh).instance;
  if (reduced.budget) *reduced.budget -= ledger.budget_delta;
  return reduced;
}

std::vector<EdgeId> lift(const ReductionLedger& ledger, std::span<const EdgeId> reduced_edges) {
  std::vector<EdgeId> out = ledger.fixed_edges;
  for (EdgeId id : reduced_edges) out.push_back(ledger.edge_origin.at(id));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gbp
