#include "gbp/intersect4.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "gbp/preprocess.hpp"

namespace gbp {

const char* to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::kPath: return "path";
    case ComponentKind::kCycle: return "cycle";
    case ComponentKind::kConstant: return "constant";
  }
  return "?";
}

namespace {

using Family = std::vector<std::vector<EdgeId>>;

bool subset_of(const std::vector<VertexId>& small, const std::vector<VertexId>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool contains_all(const std::vector<EdgeId>& big, const std::vector<EdgeId>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<std::vector<HabitatId>> habitats_by_vertex(const GenInstance& gen) {
  std::vector<std::vector<HabitatId>> out(gen.instance.vertex_count);
  for (HabitatId h = 0; h < static_cast<HabitatId>(gen.instance.habitats.size()); ++h)
    if (gen.active[h])
      for (VertexId v : gen.instance.habitats[h]) out[v].push_back(h);
  return out;
}

// Edges of G induced by the common vertices of two habitats.
std::vector<EdgeId> common_edges(const Instance& inst, const std::vector<EdgeId>& a, HabitatId hb) {
  std::vector<EdgeId> out;
  const auto& vb = inst.habitats[hb];
  for (EdgeId e : a)
    if (std::binary_search(vb.begin(), vb.end(), inst.edges[e].u) &&
        std::binary_search(vb.begin(), vb.end(), inst.edges[e].v))
      out.push_back(e);
  return out;
}

Cost union_cost(const std::vector<Cost>& cost, std::initializer_list<const std::vector<EdgeId>*> sets) {
  std::vector<EdgeId> all;
  for (const auto* s : sets) all.insert(all.end(), s->begin(), s->end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  Cost c = 0;
  for (EdgeId e : all) c += cost[e];
  return c;
}

// c(x \ (a ∪ b))
Cost fresh_cost(const std::vector<Cost>& cost, const std::vector<EdgeId>& x, const std::vector<EdgeId>& a,
                const std::vector<EdgeId>& b) {
  Cost c = 0;
  for (EdgeId e : x)
    if (!std::binary_search(a.begin(), a.end(), e) && !std::binary_search(b.begin(), b.end(), e)) c += cost[e];
  return c;
}

std::vector<EdgeId> merged(std::initializer_list<const std::vector<EdgeId>*> sets) {
  std::vector<EdgeId> all;
  for (const auto* s : sets) all.insert(all.end(), s->begin(), s->end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace

GenInstance to_gen(const Instance& instance) {
  GenInstance gen;
  gen.instance = instance;
  gen.active.assign(instance.habitats.size(), 1);
  for (HabitatId h = 0; h < static_cast<HabitatId>(instance.habitats.size()); ++h) {
    if (instance.habitats[h].size() > 4) throw Inapplicable("habitat larger than four vertices");
    gen.families.push_back(enumerate_feasible_sets(instance, h));
  }
  return gen;
}

GenInstance apply_rule9(GenInstance gen) {
  const auto& habs = gen.instance.habitats;
  const auto by_vertex = habitats_by_vertex(gen);
  const auto original = gen.families;
  std::vector<char> remove(habs.size(), 0);
  for (HabitatId h = 0; h < static_cast<HabitatId>(habs.size()); ++h) {
    if (!gen.active[h]) continue;
    std::vector<HabitatId> inner;
    for (VertexId v : habs[h])
      for (HabitatId o : by_vertex[v])
        if (o != h && subset_of(habs[o], habs[h])) inner.push_back(o);
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    for (HabitatId o : inner) {
      const bool equal = habs[o].size() == habs[h].size();
      if (equal && o < h) continue;  // the lower id survives and does the filtering
      remove[o] = 1;
      auto& sets = gen.families[h].sets;
      std::erase_if(sets, [&](const std::vector<EdgeId>& s) {
        return std::none_of(original[o].sets.begin(), original[o].sets.end(),
                            [&](const std::vector<EdgeId>& t) { return contains_all(s, t); });
      });
      if (sets.empty()) throw std::logic_error("nested habitat leaves an empty family");
    }
  }
  for (HabitatId h = 0; h < static_cast<HabitatId>(habs.size()); ++h)
    if (remove[h]) gen.active[h] = 0;
  return gen;
}

IntersectionGraph build_intersection_graph(const GenInstance& gen) {
  const Instance& inst = gen.instance;
  const int r = static_cast<int>(inst.habitats.size());
  IntersectionGraph g;
  g.neighbors.assign(r, {});
  g.component_of.assign(r, -1);

  // Active habitats through each edge.
  std::vector<std::vector<HabitatId>> through(inst.edges.size());
  for (HabitatId h = 0; h < r; ++h)
    if (gen.active[h])
      for (EdgeId e : gen.families[h].habitat_edges) through[e].push_back(h);
  for (const auto& list : through) g.max_habitats_per_edge = std::max<int>(g.max_habitats_per_edge, list.size());

  auto dominated = [&](HabitatId a, HabitatId b, const std::vector<EdgeId>& shared) {
    // Some third habitat meets `a` in a strict superset of `shared`.
    for (HabitatId c : through[shared.front()]) {
      if (c == a || c == b) continue;
      const auto other = common_edges(inst, gen.families[a].habitat_edges, c);
      if (other.size() > shared.size() && contains_all(other, shared)) return true;
    }
    return false;
  };

  for (HabitatId a = 0; a < r; ++a) {
    if (!gen.active[a]) continue;
    std::vector<HabitatId> candidates;
    for (EdgeId e : gen.families[a].habitat_edges)
      if (!inst.edges[e].forced)
        for (HabitatId b : through[e])
          if (b > a) candidates.push_back(b);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (HabitatId b : candidates) {
      const auto shared = common_edges(inst, gen.families[a].habitat_edges, b);
      if (dominated(a, b, shared) || dominated(b, a, shared)) continue;
      g.neighbors[a].push_back(b);
      g.neighbors[b].push_back(a);
    }
  }
  for (auto& list : g.neighbors) std::sort(list.begin(), list.end());

  for (HabitatId start = 0; start < r; ++start) {
    if (!gen.active[start] || g.component_of[start] >= 0) continue;
    const int id = static_cast<int>(g.components.size());
    std::vector<HabitatId> members;
    std::queue<HabitatId> queue;
    queue.push(start);
    g.component_of[start] = id;
    while (!queue.empty()) {
      const HabitatId h = queue.front();
      queue.pop();
      members.push_back(h);
      for (HabitatId o : g.neighbors[h])
        if (g.component_of[o] < 0) {
          g.component_of[o] = id;
          queue.push(o);
        }
    }
    HabitatComponent comp;
    std::size_t degree_sum = 0;
    bool low_degree = true;
    for (HabitatId h : members) {
      degree_sum += g.neighbors[h].size();
      if (g.neighbors[h].size() > 2) low_degree = false;
    }
    const std::size_t edge_count = degree_sum / 2;
    auto walk = [&](HabitatId first, HabitatId second) {
      std::vector<HabitatId> order{first};
      HabitatId prev = first, cur = second;
      while (cur >= 0 && cur != first) {
        order.push_back(cur);
        HabitatId next = -1;
        for (HabitatId o : g.neighbors[cur])
          if (o != prev) next = o;
        prev = cur;
        cur = next;
      }
      return order;
    };
    if (low_degree && edge_count + 1 == members.size()) {
      comp.kind = ComponentKind::kPath;
      HabitatId end = -1;
      for (HabitatId h : members)
        if (g.neighbors[h].size() <= 1 && (end < 0 || h < end)) end = h;
      comp.order = members.size() == 1 ? members : walk(end, g.neighbors[end].front());
    } else if (low_degree && edge_count == members.size()) {
      comp.kind = ComponentKind::kCycle;
      const HabitatId anchor = *std::min_element(members.begin(), members.end());
      comp.order = walk(anchor, g.neighbors[anchor].front());
    } else {
      comp.kind = ComponentKind::kConstant;
      comp.order = members;
    }
    g.components.push_back(std::move(comp));
  }
  return g;
}

Deg4Audit audit(const GenInstance& gen, const IntersectionGraph& graph, int cap) {
  const Instance& inst = gen.instance;
  const Adjacency adj(inst);
  Deg4Audit a;
  a.max_habitats_per_edge = graph.max_habitats_per_edge;

  std::vector<std::vector<HabitatId>> through(inst.edges.size());
  for (HabitatId h = 0; h < static_cast<HabitatId>(inst.habitats.size()); ++h)
    if (gen.active[h])
      for (EdgeId e : gen.families[h].habitat_edges) through[e].push_back(h);
  for (const auto& list : through)
    if (list.size() > 21) ++a.edge_bound_violations;

  auto docking_count = [&](HabitatId h, HabitatId towards) {
    const auto& hv = inst.habitats[h];
    const auto& tv = inst.habitats[towards];
    int count = 0;
    for (VertexId v : hv) {
      if (!std::binary_search(tv.begin(), tv.end(), v)) continue;
      bool docking = false;
      for (const Arc& arc : adj.arcs(v))
        if (std::binary_search(tv.begin(), tv.end(), arc.to) && !std::binary_search(hv.begin(), hv.end(), arc.to))
          docking = true;
      count += docking;
    }
    return count;
  };
  for (HabitatId h = 0; h < static_cast<HabitatId>(graph.neighbors.size()); ++h)
    for (HabitatId o : graph.neighbors[h]) {
      ++a.docking_pairs_checked;
      const int hi = static_cast<int>(std::max(inst.habitats[h].size(), inst.habitats[o].size())) - 1;
      const int d = docking_count(h, o);
      if (d < 2 || d > hi) ++a.docking_violations;
    }

  for (EdgeId e = 0; e < static_cast<EdgeId>(through.size()); ++e) {
    if (inst.edges[e].forced || through[e].empty()) continue;
    const int c = graph.component_of[through[e].front()];
    if (std::any_of(through[e].begin(), through[e].end(), [&](HabitatId h) { return graph.component_of[h] != c; }))
      ++a.separation_violations;
  }

  for (const HabitatComponent& comp : graph.components) {
    switch (comp.kind) {
      case ComponentKind::kPath: ++a.paths; break;
      case ComponentKind::kCycle: ++a.cycles; break;
      case ComponentKind::kConstant:
        ++a.constants;
        if (static_cast<int>(comp.order.size()) > cap) ++a.oversized_components;
        break;
    }
    if (comp.kind != ComponentKind::kConstant) {
      std::vector<int> pos(inst.habitats.size(), -1);
      for (std::size_t i = 0; i < comp.order.size(); ++i) pos[comp.order[i]] = static_cast<int>(i);
      bool bad = false;
      for (HabitatId h : comp.order)
        for (EdgeId e : gen.families[h].habitat_edges) {
          if (inst.edges[e].forced) continue;
          for (HabitatId o : through[e])
            if (pos[o] >= 0 && std::abs(pos[o] - pos[h]) >= 3) bad = true;
        }
      a.window_violations += bad;
    }
    if (comp.kind != ComponentKind::kPath || comp.order.size() < 2) continue;

    // Degrees within the union of the component's induced edges.
    std::vector<EdgeId> ce;
    for (HabitatId h : comp.order)
      ce.insert(ce.end(), gen.families[h].habitat_edges.begin(), gen.families[h].habitat_edges.end());
    std::sort(ce.begin(), ce.end());
    ce.erase(std::unique(ce.begin(), ce.end()), ce.end());
    std::vector<int> deg(inst.vertex_count, 0);
    for (EdgeId e : ce) {
      ++deg[inst.edges[e].u];
      ++deg[inst.edges[e].v];
    }
    bool proper = false;
    for (EdgeId e : ce) {
      const int du = deg[inst.edges[e].u], dv = deg[inst.edges[e].v];
      if ((du == 2 && dv == 3) || (du == 3 && dv == 2)) proper = true;
    }
    if (!proper) continue;
    ++a.paths_with_proper_docking;
    for (HabitatId end : {comp.order.front(), comp.order.back()}) {
      int witnesses = 0;
      for (VertexId v : inst.habitats[end]) {
        if (deg[v] != 2) continue;
        bool has = false;
        for (EdgeId e : gen.families[end].habitat_edges) {
          const Edge& ed = inst.edges[e];
          if (ed.u == v && deg[ed.v] == 3) has = true;
          if (ed.v == v && deg[ed.u] == 3) has = true;
        }
        witnesses += has;
      }
      if (witnesses != 1) ++a.endpoint_violations;
    }
  }
  return a;
}

std::vector<EdgeId> solve_path_dp(const std::vector<Family>& families, const std::vector<Cost>& cost) {
  const std::size_t r = families.size();
  if (r == 0) return {};
  constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
  if (r == 1) {
    std::size_t best = 0;
    Cost bc = kInf;
    for (std::size_t i = 0; i < families[0].size(); ++i) {
      const Cost c = union_cost(cost, {&families[0][i]});
      if (c < bc) bc = c, best = i;
    }
    return families[0][best];
  }
  if (r == 2) {
    std::size_t bi = 0, bj = 0;
    Cost bc = kInf;
    for (std::size_t i = 0; i < families[0].size(); ++i)
      for (std::size_t j = 0; j < families[1].size(); ++j) {
        const Cost c = union_cost(cost, {&families[0][i], &families[1][j]});
        if (c < bc) bc = c, bi = i, bj = j;
      }
    return merged({&families[0][bi], &families[1][bj]});
  }

  // table[(a, b)] = best cost of the prefix ending with choices a, b for the
  // two most recent habitats; back[step][(b, c)] = the a that achieved it.
  std::vector<Cost> table(families[0].size() * families[1].size());
  for (std::size_t a = 0; a < families[0].size(); ++a)
    for (std::size_t b = 0; b < families[1].size(); ++b)
      table[a * families[1].size() + b] = union_cost(cost, {&families[0][a], &families[1][b]});
  std::vector<std::vector<int>> back(r);
  for (std::size_t j = 2; j < r; ++j) {
    const Family& fa = families[j - 2];
    const Family& fb = families[j - 1];
    const Family& fc = families[j];
    std::vector<Cost> next(fb.size() * fc.size(), kInf);
    back[j].assign(next.size(), -1);
    for (std::size_t a = 0; a < fa.size(); ++a)
      for (std::size_t b = 0; b < fb.size(); ++b) {
        const Cost base = table[a * fb.size() + b];
        if (base >= kInf) continue;
        for (std::size_t c = 0; c < fc.size(); ++c) {
          const Cost total = base + fresh_cost(cost, fc[c], fa[a], fb[b]);
          Cost& slot = next[b * fc.size() + c];
          if (total < slot) {
            slot = total;
            back[j][b * fc.size() + c] = static_cast<int>(a);
          }
        }
      }
    table = std::move(next);
  }
  const std::size_t last = families[r - 1].size();
  const std::size_t idx = static_cast<std::size_t>(std::min_element(table.begin(), table.end()) - table.begin());
  std::vector<int> choice(r);
  choice[r - 2] = static_cast<int>(idx / last);
  choice[r - 1] = static_cast<int>(idx % last);
  for (std::size_t j = r - 1; j >= 2; --j)
    choice[j - 2] = back[j][static_cast<std::size_t>(choice[j - 1]) * families[j].size() + choice[j]];
  std::vector<EdgeId> out;
  for (std::size_t j = 0; j < r; ++j) out.insert(out.end(), families[j][choice[j]].begin(), families[j][choice[j]].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<EdgeId> solve_product(const std::vector<Family>& families, const std::vector<Cost>& cost) {
  const std::size_t r = families.size();
  std::vector<int> count(cost.size(), 0);
  std::vector<EdgeId> best;
  Cost best_cost = std::numeric_limits<Cost>::max();
  Cost current = 0;
  auto satisfied = [&](const Family& f) {
    return std::any_of(f.begin(), f.end(), [&](const std::vector<EdgeId>& s) {
      return std::all_of(s.begin(), s.end(), [&](EdgeId e) { return count[e] > 0; });
    });
  };
  auto recurse = [&](auto& self, std::size_t i) -> void {
    if (current >= best_cost) return;
    while (i < r && satisfied(families[i])) ++i;
    if (i == r) {
      best_cost = current;
      best.clear();
      for (EdgeId e = 0; e < static_cast<EdgeId>(count.size()); ++e)
        if (count[e] > 0) best.push_back(e);
      return;
    }
    for (const auto& s : families[i]) {
      for (EdgeId e : s)
        if (count[e]++ == 0) current += cost[e];
      self(self, i + 1);
      for (EdgeId e : s)
        if (--count[e] == 0) current -= cost[e];
    }
  };
  recurse(recurse, 0);
  return best;
}

namespace {

bool window_ok(const GenInstance& gen, const std::vector<HabitatId>& order) {
  const Instance& inst = gen.instance;
  std::vector<std::pair<EdgeId, int>> seen;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (EdgeId e : gen.families[order[i]].habitat_edges)
      if (!inst.edges[e].forced) seen.emplace_back(e, static_cast<int>(i));
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size();) {
    std::size_t j = i;
    while (j < seen.size() && seen[j].first == seen[i].first) ++j;
    if (seen[j - 1].second - seen[i].second >= 3) return false;
    i = j;
  }
  return true;
}

// Solutions to a component in terms of the minimal family members. Edge ids
// of forced edges may be included; they cost nothing here.
std::vector<EdgeId> solve_component(const GenInstance& gen, const HabitatComponent& comp,
                                    const std::vector<Family>& minimal, std::vector<Cost>& cost, int& fallbacks) {
  std::vector<Family> fams;
  for (HabitatId h : comp.order) fams.push_back(minimal[h]);
  const bool fits = comp.kind != ComponentKind::kConstant && window_ok(gen, comp.order);
  if (!fits) {
    if (comp.kind != ComponentKind::kConstant) ++fallbacks;
    return solve_product(fams, cost);
  }
  if (comp.kind == ComponentKind::kPath) return solve_path_dp(fams, cost);

  // Cycle: guess the anchor's member, price its edges at zero, and solve the
  // remaining path.
  const Family anchor = fams.front();
  const std::vector<Family> rest(fams.begin() + 1, fams.end());
  std::vector<EdgeId> best;
  Cost best_cost = std::numeric_limits<Cost>::max();
  for (const auto& member : anchor) {
    std::vector<Cost> saved;
    Cost member_cost = 0;
    for (EdgeId e : member) {
      saved.push_back(cost[e]);
      member_cost += cost[e];
      cost[e] = 0;
    }
    auto path = solve_path_dp(rest, cost);
    Cost total = member_cost;
    for (EdgeId e : path) total += cost[e];
    for (std::size_t i = 0; i < member.size(); ++i) cost[member[i]] = saved[i];
    if (total < best_cost) {
      best_cost = total;
      path.insert(path.end(), member.begin(), member.end());
      std::sort(path.begin(), path.end());
      path.erase(std::unique(path.begin(), path.end()), path.end());
      best = std::move(path);
    }
  }
  return best;
}

}  // namespace

Deg4Result solve_deg4_traced(const Instance& instance, bool small_components) {
  const InstanceStats st = stats(instance);
  if (st.max_degree > 4) throw Inapplicable("deg4 needs maximum degree four");
  if (st.max_habitat_size > 4) throw Inapplicable("deg4 needs habitats of size at most four");
  Deg4Result result;
  const Preprocessed pre = preprocess_all(instance, small_components);
  if (pre.ledger.verdict == Verdict::kNoInstance) return result;
  const Instance& red = pre.instance;
  result.gen = apply_rule9(to_gen(red));
  result.graph = build_intersection_graph(result.gen);
  result.audit = audit(result.gen, result.graph);

  std::vector<Family> minimal(red.habitats.size());
  for (HabitatId h = 0; h < static_cast<HabitatId>(red.habitats.size()); ++h)
    if (result.gen.active[h]) minimal[h] = minimal_members(result.gen.families[h].sets);
  std::vector<Cost> cost(red.edges.size());
  for (EdgeId e = 0; e < static_cast<EdgeId>(red.edges.size()); ++e)
    cost[e] = red.edges[e].forced ? 0 : red.edges[e].cost;

  // Components that share an unforced edge are solved together.
  const auto& comps = result.graph.components;
  std::vector<int> group(comps.size());
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](int x) {
    while (group[x] != x) x = group[x] = group[group[x]];
    return x;
  };
  std::vector<int> edge_comp(red.edges.size(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (HabitatId h : comps[c].order)
      for (EdgeId e : result.gen.families[h].habitat_edges) {
        if (red.edges[e].forced) continue;
        if (edge_comp[e] < 0) edge_comp[e] = static_cast<int>(c);
        else group[find(static_cast<int>(c))] = find(edge_comp[e]);
      }
  std::vector<std::vector<int>> members(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) members[find(static_cast<int>(c))].push_back(static_cast<int>(c));

  std::vector<char> chosen(red.edges.size(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(red.edges.size()); ++e) chosen[e] = red.edges[e].forced;
  for (const auto& list : members) {
    if (list.empty()) continue;
    std::vector<EdgeId> part;
    if (list.size() == 1) {
      part = solve_component(result.gen, comps[list.front()], minimal, cost, result.fallback_components);
    } else {
      ++result.fallback_components;
      std::vector<Family> fams;
      for (int c : list)
        for (HabitatId h : comps[c].order) fams.push_back(minimal[h]);
      part = solve_product(fams, cost);
    }
    for (EdgeId e : part) chosen[e] = 1;
  }
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < static_cast<EdgeId>(red.edges.size()); ++e)
    if (chosen[e]) edges.push_back(e);
  if (!is_solution(red, edges).violated_habitats.empty())
    throw std::logic_error("component solutions do not combine to a feasible set");
  edges = lift(pre.ledger, edges);
  result.optimum = Optimum{edges, cost_of(instance, edges)};
  return result;
}

std::optional<Optimum> solve_deg4(const Instance& instance) { return solve_deg4_traced(instance).optimum; }

}  // namespace gbp
