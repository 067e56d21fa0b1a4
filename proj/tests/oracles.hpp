#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond the Instance data type: distances come from a plain BFS on an
// adjacency matrix, and optima from enumerating every edge subset.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gbp/model.hpp"

namespace oracle {

using gbp::Cost;
using gbp::Instance;

/// Largest BFS distance between two habitat vertices using only `present`
/// edges with both endpoints in the habitat; -1 if disconnected.
inline int diameter(int n, const std::vector<std::pair<int, int>>& present, const std::vector<int>& habitat) {
  std::vector<char> in(n, 0);
  for (int v : habitat) in[v] = 1;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : present)
    if (in[u] && in[v]) adj[u][v] = adj[v][u] = 1;
  int best = 0;
  for (int s : habitat) {
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (int y : habitat)
        if (adj[x][y] && dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push(y);
        }
    }
    for (int t : habitat) {
      if (dist[t] < 0) return -1;
      best = std::max(best, dist[t]);
    }
  }
  return best;
}

inline bool feasible(const Instance& inst, const std::vector<int>& edge_ids) {
  std::vector<std::pair<int, int>> present;
  std::vector<char> chosen(inst.edges.size(), 0);
  for (int id : edge_ids) chosen[id] = 1;
  for (std::size_t id = 0; id < inst.edges.size(); ++id) {
    if (inst.edges[id].forced && !chosen[id]) return false;
    if (chosen[id]) present.emplace_back(inst.edges[id].u, inst.edges[id].v);
  }
  for (const auto& h : inst.habitats) {
    const int d = diameter(inst.vertex_count, present, h);
    if (d < 0 || d > 2) return false;
  }
  return true;
}

/// Minimum cost over all edge sets containing the forced edges; nullopt if
/// none is feasible. Throws when there are more than `limit` free edges.
inline std::optional<Cost> brute_force_opt(const Instance& inst, int limit = 20) {
  std::vector<int> forced, free;
  for (std::size_t id = 0; id < inst.edges.size(); ++id) (inst.edges[id].forced ? forced : free).push_back(int(id));
  if (static_cast<int>(free.size()) > limit) throw std::runtime_error("too many free edges for brute force");
  std::optional<Cost> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    std::vector<int> set = forced;
    Cost c = 0;
    for (int id : forced) c += inst.edges[id].cost;
    for (std::size_t i = 0; i < free.size(); ++i)
      if ((mask >> i) & 1U) {
        set.push_back(free[i]);
        c += inst.edges[free[i]].cost;
      }
    if (best && c >= *best) continue;
    if (feasible(inst, set)) best = c;
  }
  return best;
}

/// Minimum vertex cover size by enumerating vertex subsets.
inline int min_vertex_cover(int n, const std::vector<std::pair<int, int>>& edges) {
  int best = n;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size >= best) continue;
    bool ok = true;
    for (auto [u, v] : edges)
      if (!((mask >> u) & 1U) && !((mask >> v) & 1U)) ok = false;
    if (ok) best = size;
  }
  return best;
}

/// Cheapest union over one member per family, by full Cartesian product.
inline Cost product_min(const std::vector<std::vector<std::vector<int>>>& families, const std::vector<Cost>& cost) {
  Cost best = -1;
  std::vector<std::size_t> pick(families.size(), 0);
  while (true) {
    std::vector<char> in(cost.size(), 0);
    Cost c = 0;
    for (std::size_t i = 0; i < families.size(); ++i)
      for (int e : families[i][pick[i]])
        if (!in[e]) {
          in[e] = 1;
          c += cost[e];
        }
    if (best < 0 || c < best) best = c;
    std::size_t i = 0;
    while (i < families.size() && ++pick[i] == families[i].size()) pick[i++] = 0;
    if (i == families.size()) break;
  }
  return best;
}

/// Structural guarantees of a fully reduced instance, checked from scratch.
/// Returns an empty string when all hold, otherwise the first failure.
inline std::string reduced_shape_violation(const Instance& inst) {
  const int n = inst.vertex_count;
  std::vector<std::vector<int>> adj(n);
  std::vector<std::vector<char>> mat(n, std::vector<char>(n, 0));
  std::vector<std::vector<signed char>> forced(n, std::vector<signed char>(n, -1));
  for (const auto& e : inst.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
    mat[e.u][e.v] = mat[e.v][e.u] = 1;
    forced[e.u][e.v] = forced[e.v][e.u] = e.forced;
  }
  std::vector<int> comp(n, -1);
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = s;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      members.push_back(x);
      for (int y : adj[x])
        if (comp[y] < 0) {
          comp[y] = s;
          stack.push_back(y);
        }
    }
    if (members.size() <= 6) return "component with at most six vertices";
  }
  for (const auto& e : inst.edges) {
    bool inside = false;
    for (const auto& h : inst.habitats)
      if (std::count(h.begin(), h.end(), e.u) && std::count(h.begin(), h.end(), e.v)) inside = true;
    if (!inside) return "edge outside every habitat";
  }
  for (const auto& h : inst.habitats) {
    int unforced = 0;
    bool triangle = false;
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j) {
        if (forced[h[i]][h[j]] == 0) ++unforced;
        for (std::size_t k = j + 1; k < h.size(); ++k)
          if (mat[h[i]][h[j]] && mat[h[j]][h[k]] && mat[h[i]][h[k]]) triangle = true;
      }
    if (unforced < 2) return "habitat with fewer than two unforced edges";
    if (!triangle) return "habitat without a triangle";
    // Two-connected: connected after deleting any single habitat vertex.
    for (int cut : h) {
      std::vector<int> rest;
      for (int v : h)
        if (v != cut) rest.push_back(v);
      std::vector<std::pair<int, int>> present;
      for (const auto& e : inst.edges) present.emplace_back(e.u, e.v);
      if (diameter(n, present, rest) < 0) return "habitat with a cut vertex";
    }
  }
  return {};
}

/// Small random instance built without the library's generators: G(n, p)
/// edges, a few forced edges, and habitats of size 2..max_habitat that may or
/// may not be satisfiable.
inline Instance random_instance(unsigned seed, int n, double p, int habitats, int max_habitat, Cost max_cost = 5) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<gbp::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < p) edges.push_back({u, v, Cost(rng() % (max_cost + 1)), coin(rng) < 0.1});
  std::set<std::vector<int>> hs;
  for (int i = 0; i < habitats; ++i) {
    const int size = 2 + int(rng() % (max_habitat - 1));
    std::set<int> h;
    while (int(h.size()) < std::min(size, n)) h.insert(int(rng() % n));
    hs.insert(std::vector<int>(h.begin(), h.end()));
  }
  return gbp::make_instance(n, std::move(edges), std::vector<std::vector<int>>(hs.begin(), hs.end()));
}

/// Random instance whose edges mostly lie inside habitats, so that habitats
/// are usually satisfiable and survive the reduction rules.
inline Instance habitat_dense_instance(unsigned seed, int n, int habitats, int max_habitat, Cost max_cost = 5) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::set<std::vector<int>> hs;
  for (int i = 0; i < habitats; ++i) {
    const int size = 3 + int(rng() % (max_habitat - 2));
    std::set<int> h;
    while (int(h.size()) < std::min(size, n)) h.insert(int(rng() % n));
    hs.insert(std::vector<int>(h.begin(), h.end()));
  }
  std::set<std::pair<int, int>> pairs;
  for (const auto& h : hs)
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j)
        if (coin(rng) < 0.8) pairs.insert({h[i], h[j]});
  for (int extra = 0; extra < 2; ++extra) {
    const int u = int(rng() % n), v = int(rng() % n);
    if (u != v) pairs.insert({std::min(u, v), std::max(u, v)});
  }
  std::vector<gbp::Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, Cost(rng() % (max_cost + 1)), coin(rng) < 0.05});
  return gbp::make_instance(n, std::move(edges), std::vector<std::vector<int>>(hs.begin(), hs.end()));
}

}  // namespace oracle
