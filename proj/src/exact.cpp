#include "gbp/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "local_graph.hpp"

namespace gbp {

namespace {

using Weight = std::int64_t;
constexpr Weight kNoBound = std::numeric_limits<Weight>::max();
constexpr int kTabulateVars = 16;
constexpr int kTabulateVertices = 64;

enum : signed char { kFree = 0, kIn = 1, kOut = 2 };

struct LocalEdge {
  int a;
  int b;
  int slot;  // position in HabitatModel::vars, or -1 for a forced edge
};

struct HabitatModel {
  int size = 0;
  std::vector<int> vars;
  std::vector<LocalEdge> edges;
  bool tabulated = false;
  std::vector<std::uint32_t> minimal;
};

bool diameter_two(const std::vector<std::uint64_t>& adj, int n) {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!((adj[a] >> b) & 1U) && !(adj[a] & adj[b])) return false;
  return true;
}

void tabulate(HabitatModel& h) {
  const int k = static_cast<int>(h.vars.size());
  std::vector<std::uint64_t> base(h.size, 0);
  for (const LocalEdge& e : h.edges)
    if (e.slot < 0) {
      base[e.a] |= std::uint64_t{1} << e.b;
      base[e.b] |= std::uint64_t{1} << e.a;
    }
  std::vector<char> feasible(std::size_t{1} << k, 0);
  std::vector<std::uint64_t> adj(h.size);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    adj = base;
    for (const LocalEdge& e : h.edges)
      if (e.slot >= 0 && ((mask >> e.slot) & 1U)) {
        adj[e.a] |= std::uint64_t{1} << e.b;
        adj[e.b] |= std::uint64_t{1} << e.a;
      }
    feasible[mask] = diameter_two(adj, h.size);
  }
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    if (!feasible[mask]) continue;
    bool minimal = true;
    for (std::uint32_t rest = mask; rest && minimal; rest &= rest - 1)
      if (feasible[mask ^ (rest & (~rest + 1))]) minimal = false;
    if (minimal) h.minimal.push_back(mask);
  }
  h.tabulated = true;
}

struct Partial {
  Weight weight = 0;
  std::vector<int> vars;
};

class Search {
 public:
  Search(std::vector<HabitatModel> habitats, std::vector<Weight> weight, ExactStats* stats)
      : habitats_(std::move(habitats)),
        weight_(std::move(weight)),
        value_(weight_.size(), kFree),
        var_habitats_(weight_.size()),
        owner_(weight_.size(), -1),
        stamp_(weight_.size(), 0),
        share_count_(weight_.size(), 0),
        scope_(habitats_.size(), 0),
        queued_(habitats_.size(), 0),
        stats_(stats) {
    for (int h = 0; h < static_cast<int>(habitats_.size()); ++h)
      for (int var : habitats_[h].vars) var_habitats_[var].push_back(h);
  }

  std::optional<Partial> run() {
    std::vector<int> all(habitats_.size());
    std::iota(all.begin(), all.end(), 0);
    return solve(all, kNoBound);
  }

 private:
  enum class Status { kConflict, kSatisfied, kOpen };

  void masks(const HabitatModel& h, std::uint32_t& in, std::uint32_t& out) const {
    in = out = 0;
    for (int s = 0; s < static_cast<int>(h.vars.size()); ++s) {
      if (value_[h.vars[s]] == kIn) in |= std::uint32_t{1} << s;
      if (value_[h.vars[s]] == kOut) out |= std::uint32_t{1} << s;
    }
  }

  // Diameter test for habitats too large to tabulate. With optimistic set,
  // free edges count as present.
  bool fallback_ok(const HabitatModel& h, bool optimistic) const {
    detail::LocalGraph g(h.size);
    for (const LocalEdge& e : h.edges) {
      const bool present = e.slot < 0 || value_[h.vars[e.slot]] == kIn ||
                           (optimistic && value_[h.vars[e.slot]] == kFree);
      if (present) g.add_edge(e.a, e.b);
    }
    return g.diameter_at_most_two();
  }

  Status status(const HabitatModel& h, std::uint32_t& common) const {
    common = 0;
    if (!h.tabulated) {
      if (!fallback_ok(h, true)) return Status::kConflict;
      return fallback_ok(h, false) ? Status::kSatisfied : Status::kOpen;
    }
    std::uint32_t in, out;
    masks(h, in, out);
    bool compatible = false;
    std::uint32_t meet = ~std::uint32_t{0};
    for (std::uint32_t m : h.minimal) {
      if (m & out) continue;
      if ((m & ~in) == 0) return Status::kSatisfied;
      meet &= m;
      compatible = true;
    }
    if (!compatible) return Status::kConflict;
    common = meet & ~in;
    return Status::kOpen;
  }

  Weight min_completion(const HabitatModel& h) const {
    if (!h.tabulated) return 0;
    std::uint32_t in, out;
    masks(h, in, out);
    Weight best = kNoBound;
    for (std::uint32_t m : h.minimal) {
      if (m & out) continue;
      Weight w = 0;
      for (std::uint32_t rest = m & ~in; rest; rest &= rest - 1) w += weight_[h.vars[std::countr_zero(rest)]];
      best = std::min(best, w);
    }
    return best;
  }

  void assign(int var, signed char v) {
    value_[var] = v;
    trail_.push_back(var);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = kFree;
      trail_.pop_back();
    }
  }

  // Unit propagation over the habitats in scope: every variable common to all
  // still-compatible minimal sets of a habitat must be taken.
  bool propagate(const std::vector<int>& scope, std::vector<int>& open) {
    ++epoch_;
    std::vector<int> queue;
    for (int h : scope) {
      scope_[h] = epoch_;
      queued_[h] = epoch_;
      queue.push_back(h);
    }
    std::size_t head = 0;
    while (head < queue.size()) {
      const int h = queue[head++];
      queued_[h] = 0;
      std::uint32_t common;
      const Status st = status(habitats_[h], common);
      if (st == Status::kConflict) return false;
      for (std::uint32_t rest = common; rest; rest &= rest - 1) {
        const int var = habitats_[h].vars[std::countr_zero(rest)];
        if (value_[var] != kFree) continue;
        assign(var, kIn);
        for (int h2 : var_habitats_[var])
          if (scope_[h2] == epoch_ && queued_[h2] != epoch_) {
            queued_[h2] = epoch_;
            queue.push_back(h2);
          }
      }
    }
    open.clear();
    for (int h : scope) {
      std::uint32_t common;
      if (status(habitats_[h], common) == Status::kOpen) open.push_back(h);
    }
    return true;
  }

  std::vector<std::vector<int>> components(const std::vector<int>& open) {
    std::vector<int> parent(open.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<int> touched;
    for (int i = 0; i < static_cast<int>(open.size()); ++i)
      for (int var : habitats_[open[i]].vars) {
        if (value_[var] != kFree) continue;
        if (owner_[var] < 0) {
          owner_[var] = i;
          touched.push_back(var);
        } else {
          parent[find(i)] = find(owner_[var]);
        }
      }
    for (int var : touched) owner_[var] = -1;
    std::vector<int> root_index(open.size(), -1);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < static_cast<int>(open.size()); ++i) {
      const int r = find(i);
      if (root_index[r] < 0) {
        root_index[r] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[root_index[r]].push_back(open[i]);
    }
    return out;
  }

  // Sum of completion minima over a greedy packing of habitats whose free
  // variables are pairwise disjoint.
  Weight lower_bound(const std::vector<int>& open) {
    std::vector<std::pair<Weight, int>> items;
    items.reserve(open.size());
    for (int h : open) items.emplace_back(min_completion(habitats_[h]), h);
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    ++stamp_epoch_;
    Weight total = 0;
    for (const auto& [w, h] : items) {
      if (w == 0) break;
      bool disjoint = true;
      for (int var : habitats_[h].vars)
        if (value_[var] == kFree && stamp_[var] == stamp_epoch_) disjoint = false;
      if (!disjoint) continue;
      for (int var : habitats_[h].vars)
        if (value_[var] == kFree) stamp_[var] = stamp_epoch_;
      total += w;
    }
    return total;
  }

  // Every open habitat pays its cheapest completion, where each free variable
  // costs its weight divided by the number of open habitats containing it.
  // Summing over habitats never exceeds the weight of any completion.
  Weight shared_bound(const std::vector<int>& open) {
    ++stamp_epoch_;
    for (int h : open)
      for (int var : habitats_[h].vars)
        if (value_[var] == kFree) {
          if (stamp_[var] != stamp_epoch_) {
            stamp_[var] = stamp_epoch_;
            share_count_[var] = 0;
          }
          ++share_count_[var];
        }
    long double total = 0;
    for (int h : open) {
      const HabitatModel& model = habitats_[h];
      if (!model.tabulated) continue;
      std::uint32_t in, out;
      masks(model, in, out);
      long double best = -1;
      for (std::uint32_t m : model.minimal) {
        if (m & out) continue;
        long double w = 0;
        for (std::uint32_t rest = m & ~in; rest; rest &= rest - 1) {
          const int var = model.vars[std::countr_zero(rest)];
          w += static_cast<long double>(weight_[var]) / share_count_[var];
        }
        if (best < 0 || w < best) best = w;
      }
      if (best > 0) total += best;
    }
    return static_cast<Weight>(std::ceil(total - 1e-6L));
  }

  Weight bound_for(const std::vector<int>& open) { return std::max(lower_bound(open), shared_bound(open)); }

  // Cheapest completion of the given habitats with weight strictly below bound.
  std::optional<Partial> solve(const std::vector<int>& scope, Weight bound) {
    if (stats_) ++stats_->nodes;
    const std::size_t mark = trail_.size();
    std::vector<int> open;
    if (!propagate(scope, open)) {
      undo(mark);
      return std::nullopt;
    }
    Partial here;
    for (std::size_t i = mark; i < trail_.size(); ++i) {
      here.weight += weight_[trail_[i]];
      here.vars.push_back(trail_[i]);
    }
    std::optional<Partial> result;
    if (here.weight < bound) {
      if (open.empty()) {
        result = std::move(here);
      } else {
        auto comps = components(open);
        if (comps.size() == 1) {
          if (auto sub = branch(open, bound - here.weight)) result = merge(std::move(here), std::move(*sub));
        } else {
          if (stats_) ++stats_->component_splits;
          result = solve_components(std::move(here), comps, bound);
        }
      }
    }
    undo(mark);
    return result;
  }

  std::optional<Partial> solve_components(Partial acc, const std::vector<std::vector<int>>& comps, Weight bound) {
    std::vector<Weight> lbs;
    Weight rest = 0;
    for (const auto& c : comps) {
      lbs.push_back(bound_for(c));
      rest += lbs.back();
    }
    if (acc.weight + rest >= bound) return std::nullopt;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      rest -= lbs[i];
      auto sub = branch(comps[i], bound - acc.weight - rest);
      if (!sub) return std::nullopt;
      acc = merge(std::move(acc), std::move(*sub));
    }
    return acc;
  }

  static Partial merge(Partial a, Partial b) {
    a.weight += b.weight;
    a.vars.insert(a.vars.end(), b.vars.begin(), b.vars.end());
    return a;
  }

  std::optional<Partial> branch(const std::vector<int>& comp, Weight bound) {
    if (bound_for(comp) >= bound) return std::nullopt;
    int var = std::numeric_limits<int>::max();
    for (int h : comp)
      for (int v : habitats_[h].vars)
        if (value_[v] == kFree) {
          var = std::min(var, v);
          break;
        }
    std::optional<Partial> best;
    const std::size_t mark = trail_.size();
    if (weight_[var] < bound) {
      assign(var, kIn);
      if (auto sub = solve(comp, bound - weight_[var])) {
        best = Partial{weight_[var], {var}};
        best = merge(std::move(*best), std::move(*sub));
        bound = best->weight;
      }
      undo(mark);
    }
    assign(var, kOut);
    if (auto sub = solve(comp, bound)) best = std::move(sub);
    undo(mark);
    return best;
  }

  std::vector<HabitatModel> habitats_;
  std::vector<Weight> weight_;
  std::vector<signed char> value_;
  std::vector<std::vector<int>> var_habitats_;
  std::vector<int> owner_;
  std::vector<int> stamp_;
  std::vector<int> share_count_;
  std::vector<int> scope_;
  std::vector<int> queued_;
  std::vector<int> trail_;
  int epoch_ = 0;
  int stamp_epoch_ = 0;
  ExactStats* stats_;
};

}  // namespace

std::optional<Optimum> solve_exact(const Instance& instance, const std::optional<std::vector<EdgeId>>& restrict_to,
                                   ExactStats* stats) {
  const int m = static_cast<int>(instance.edges.size());
  std::vector<char> allowed(m, restrict_to ? 0 : 1);
  if (restrict_to)
    for (EdgeId id : *restrict_to) {
      if (id < 0 || id >= m) throw InputError(ErrorCode::kEdgeId, "restriction names an unknown edge");
      allowed[id] = 1;
    }
  for (EdgeId id = 0; id < m; ++id)
    if (instance.edges[id].forced) allowed[id] = 1;

  const Adjacency adjacency(instance);
  std::vector<std::vector<EdgeId>> hedges;
  std::vector<int> var_of(m, -1);
  for (const auto& h : instance.habitats) {
    hedges.push_back(habitat_edges(adjacency, h));
    for (EdgeId id : hedges.back())
      if (allowed[id] && !instance.edges[id].forced) var_of[id] = 0;
  }
  std::vector<EdgeId> edge_of_var;
  for (EdgeId id = 0; id < m; ++id)
    if (var_of[id] == 0) {
      var_of[id] = static_cast<int>(edge_of_var.size());
      edge_of_var.push_back(id);
    }
  const auto vars = static_cast<Weight>(edge_of_var.size());
  if (stats) stats->variables = vars;

  // Cost-major weights: minimizing weight minimizes cost, then edge count.
  Cost max_cost = 0;
  for (EdgeId id : edge_of_var) max_cost = std::max(max_cost, instance.edges[id].cost);
  if (max_cost > 0 && (max_cost > std::numeric_limits<Weight>::max() / (vars + 1) / (vars + 1)))
    throw InputError(ErrorCode::kNegativeCost, "edge costs too large for the exact search");
  std::vector<Weight> weight;
  for (EdgeId id : edge_of_var) weight.push_back(instance.edges[id].cost * (vars + 1) + 1);

  std::vector<HabitatModel> models;
  for (std::size_t hi = 0; hi < instance.habitats.size(); ++hi) {
    const auto& h = instance.habitats[hi];
    HabitatModel model;
    model.size = static_cast<int>(h.size());
    for (EdgeId id : hedges[hi]) {
      if (!allowed[id]) continue;
      const int a = detail::local_index(h, instance.edges[id].u);
      const int b = detail::local_index(h, instance.edges[id].v);
      int slot = -1;
      if (var_of[id] >= 0) {
        slot = static_cast<int>(model.vars.size());
        model.vars.push_back(var_of[id]);
      }
      model.edges.push_back({a, b, slot});
    }
    if (static_cast<int>(model.vars.size()) <= kTabulateVars && model.size <= kTabulateVertices) tabulate(model);
    models.push_back(std::move(model));
  }

  Search search(std::move(models), std::move(weight), stats);
  const auto result = search.run();
  if (!result) return std::nullopt;
  Optimum opt;
  for (EdgeId id = 0; id < m; ++id)
    if (instance.edges[id].forced) opt.edges.push_back(id);
  for (int var : result->vars) opt.edges.push_back(edge_of_var[var]);
  std::sort(opt.edges.begin(), opt.edges.end());
  opt.cost = cost_of(instance, opt.edges);
  return opt;
}

FeasibleFamily enumerate_feasible_sets(const Instance& instance, HabitatId habitat, int guard) {
  if (habitat < 0 || habitat >= static_cast<HabitatId>(instance.habitats.size()))
    throw InputError(ErrorCode::kVertexId, "unknown habitat id");
  const auto& h = instance.habitats[habitat];
  FeasibleFamily family;
  family.habitat = habitat;
  family.habitat_edges = habitat_edges(Adjacency(instance), h);
  std::vector<EdgeId> forced, free;
  for (EdgeId id : family.habitat_edges) (instance.edges[id].forced ? forced : free).push_back(id);
  if (static_cast<int>(free.size()) > guard)
    throw FamilyTooLarge("habitat " + std::to_string(habitat) + " has " + std::to_string(free.size()) +
                         " unforced edges, above the enumeration guard");
  const int k = static_cast<int>(free.size());
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    detail::LocalGraph g(static_cast<int>(h.size()));
    std::vector<EdgeId> set = forced;
    for (int s = 0; s < k; ++s)
      if ((mask >> s) & 1U) set.push_back(free[s]);
    for (EdgeId id : set)
      g.add_edge(detail::local_index(h, instance.edges[id].u), detail::local_index(h, instance.edges[id].v));
    if (!g.diameter_at_most_two()) continue;
    std::sort(set.begin(), set.end());
    family.sets.push_back(std::move(set));
  }
  return family;
}

std::vector<std::vector<EdgeId>> minimal_members(const std::vector<std::vector<EdgeId>>& sets) {
  std::vector<std::vector<EdgeId>> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < sets.size() && minimal; ++j)
      if (j != i && sets[j].size() < sets[i].size() &&
          std::includes(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end()))
        minimal = false;
    if (minimal) out.push_back(sets[i]);
  }
  return out;
}

}  // namespace gbp
