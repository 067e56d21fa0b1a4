#include "gbp/generators.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "gbp/hardness.hpp"
#include "local_graph.hpp"

namespace gbp {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below needs a positive bound");
  // Largest multiple of n that fits; draws above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::kDeg3: return "deg3";
    case Regime::kDeg4: return "deg4h4";
    case Regime::kPlanarH3: return "planar-h3";
    case Regime::kGadget: return "gadget";
  }
  return "?";
}

Regime regime_from_string(const std::string& name) {
  for (Regime r : {Regime::kDeg3, Regime::kDeg4, Regime::kPlanarH3, Regime::kGadget})
    if (name == to_string(r)) return r;
  if (name == "deg4") return Regime::kDeg4;
  throw InputError(ErrorCode::kParse, "unknown regime '" + name + "'");
}

namespace {

struct Builder {
  int n;
  int cap;
  std::vector<std::vector<int>> adj;
  std::set<std::pair<int, int>> edges;

  Builder(int n_, int cap_) : n(n_), cap(cap_), adj(n_) {}

  bool adjacent(int a, int b) const { return edges.count({std::min(a, b), std::max(a, b)}) > 0; }
  bool add(int a, int b) {
    if (a == b || adjacent(a, b) || static_cast<int>(adj[a].size()) >= cap || static_cast<int>(adj[b].size()) >= cap)
      return false;
    edges.insert({std::min(a, b), std::max(a, b)});
    adj[a].push_back(b);
    adj[b].push_back(a);
    return true;
  }
};

// Small triangle-rich pieces joined through their spare degree, then a few
// random triangle-closing edges. Pieces for degree three are triangles,
// diamonds and linked triangle pairs; for degree four, triangle strips and
// diamonds. Without such pieces the forcing rules settle almost every
// random instance on their own.
void grow_bounded_graph(Builder& b, Rng& rng) {
  std::vector<int> previous;
  int next = 0;
  auto piece = [&](int size, std::initializer_list<std::pair<int, int>> edges) {
    for (auto [x, y] : edges) b.add(next + x, next + y);
    std::vector<int> members;
    for (int i = 0; i < size; ++i) members.push_back(next + i);
    next += size;
    return members;
  };
  while (next < b.n) {
    const int left = b.n - next;
    std::vector<int> members;
    const auto kind = rng.below(3);
    if (left < 3) {
      members = piece(left, {});
    } else if (b.cap == 3) {
      if (kind == 0 || left < 4) members = piece(3, {{0, 1}, {0, 2}, {1, 2}});
      else if (kind == 1 || left < 6) members = piece(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
      else members = piece(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}});
    } else {
      if (kind == 2 && left >= 4) {
        members = piece(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
      } else {
        const int len = static_cast<int>(std::min<std::int64_t>(left, rng.between(3, 7)));
        for (int i = 0; i < len; ++i) {
          if (i + 1 < len) b.add(next + i, next + i + 1);
          if (i + 2 < len) b.add(next + i, next + i + 2);
          members.push_back(next + i);
        }
        next += len;
      }
    }
    // One or two links to the previous piece.
    for (int link = 0; link < 2 && !previous.empty(); ++link) {
      if (link == 1 && rng.chance(1, 2)) break;
      for (int tries = 0; tries < 8; ++tries)
        if (b.add(previous[rng.below(previous.size())], members[rng.below(members.size())])) break;
    }
    previous = members;
  }
  const std::int64_t extra = b.n / 4 + 1;
  for (std::int64_t t = 0; t < extra * 4; ++t) {
    const int u = static_cast<int>(rng.below(b.n));
    if (b.adj[u].empty()) continue;
    const int w = b.adj[u][rng.below(b.adj[u].size())];
    const int x = b.adj[w][rng.below(b.adj[w].size())];
    b.add(u, x);
  }
}

bool small_diameter(const Builder& b, const std::vector<int>& h) {
  detail::LocalGraph g(static_cast<int>(h.size()));
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j)
      if (b.adjacent(h[i], h[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
  return g.diameter_at_most_two();
}

// Connected vertex sets grown from a random vertex, kept only if they induce
// diameter at most two. Three in four samples start from a triangle, which
// keeps habitats alive through the forcing rules.
std::vector<std::vector<VertexId>> sample_habitats(const Builder& b, Rng& rng, int count, int max_size) {
  std::vector<std::vector<VertexId>> out;
  std::set<std::vector<VertexId>> seen;
  const std::int64_t attempts = static_cast<std::int64_t>(count) * 20 + 20;
  for (std::int64_t t = 0; t < attempts && static_cast<int>(out.size()) < count; ++t) {
    const int v = static_cast<int>(rng.below(b.n));
    if (b.adj[v].empty()) continue;
    const int size = static_cast<int>(rng.between(2, max_size));
    std::vector<int> h{v};
    if (size >= 3 && rng.chance(3, 4)) {
      const int w = b.adj[v][rng.below(b.adj[v].size())];
      std::vector<int> common;
      for (int x : b.adj[w])
        if (x != v && b.adjacent(v, x)) common.push_back(x);
      if (!common.empty()) {
        h.push_back(w);
        h.push_back(common[rng.below(common.size())]);
      }
    }
    for (int tries = 0; tries < 4 * size && static_cast<int>(h.size()) < size; ++tries) {
      const int from = h[rng.below(h.size())];
      const int to = b.adj[from][rng.below(b.adj[from].size())];
      if (std::find(h.begin(), h.end(), to) != h.end()) continue;
      h.push_back(to);
      if (!small_diameter(b, h)) h.pop_back();
    }
    if (h.size() < 2) continue;
    std::sort(h.begin(), h.end());
    if (seen.insert(h).second) out.push_back(h);
  }
  return out;
}

Instance bounded_degree(const GeneratorConfig& c, int cap, int max_habitat) {
  Rng rng(c.seed);
  Builder b(c.n, cap);
  grow_bounded_graph(b, rng);
  std::vector<int> label(c.n);
  for (int i = 0; i < c.n; ++i) label[i] = i;
  rng.shuffle(label);
  Builder relabeled(c.n, cap);
  for (auto [u, v] : b.edges) relabeled.add(label[u], label[v]);
  std::vector<Edge> edges;
  for (auto [u, v] : relabeled.edges) edges.push_back({u, v, rng.between(c.cost_min, c.cost_max), false});
  auto habitats = sample_habitats(relabeled, rng, c.r, max_habitat);
  return make_instance(c.n, std::move(edges), std::move(habitats));
}

// Stacked triangulation: every new point goes strictly inside a random face.
Instance planar_h3(const GeneratorConfig& c) {
  Rng rng(c.seed);
  const std::int64_t big = std::int64_t{1} << 40;
  std::vector<Point> pts{{0, 0}, {big, 0}, {big / 2, big}};
  std::vector<std::array<int, 3>> faces{{0, 1, 2}};
  std::set<std::pair<int, int>> edges{{0, 1}, {0, 2}, {1, 2}};
  const int n = std::max(3, c.n);
  while (static_cast<int>(pts.size()) < n) {
    const std::size_t f = rng.below(faces.size());
    const auto [a, b, d] = faces[f];
    std::optional<Point> p;
    for (int tries = 0; tries < 64 && !p; ++tries) {
      const std::int64_t wa = rng.between(1, 100), wb = rng.between(1, 100), wd = rng.between(1, 100);
      const std::int64_t s = wa + wb + wd;
      const Point q{(pts[a].x / s) * wa + (pts[b].x / s) * wb + (pts[d].x / s) * wd,
                    (pts[a].y / s) * wa + (pts[b].y / s) * wb + (pts[d].y / s) * wd};
      if (strictly_inside_triangle(q, pts[a], pts[b], pts[d])) p = q;
    }
    if (!p) {
      faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(f));
      if (faces.empty()) break;
      continue;
    }
    const int v = static_cast<int>(pts.size());
    pts.push_back(*p);
    faces[f] = {a, b, v};
    faces.push_back({a, d, v});
    faces.push_back({b, d, v});
    for (int x : {a, b, d}) edges.insert({x, v});
  }
  std::vector<Edge> edge_list;
  Builder g(static_cast<int>(pts.size()), static_cast<int>(pts.size()));
  for (auto [u, v] : edges) {
    if (rng.chance(1, 8)) continue;
    edge_list.push_back({u, v, rng.between(c.cost_min, c.cost_max), false});
    g.add(u, v);
  }
  std::vector<std::array<int, 3>> triangles;
  for (auto [u, v] : g.edges)
    for (int w : g.adj[u])
      if (w > v && g.adjacent(v, w)) triangles.push_back({u, v, w});
  rng.shuffle(triangles);
  std::vector<std::vector<VertexId>> habitats;
  for (int i = 0; i < c.r && i < static_cast<int>(triangles.size()); ++i)
    habitats.push_back({triangles[i][0], triangles[i][1], triangles[i][2]});
  const int vertex_count = static_cast<int>(pts.size());
  return make_instance(vertex_count, std::move(edge_list), std::move(habitats), std::nullopt, std::move(pts));
}

Instance gadget(const GeneratorConfig& c) {
  const auto fixtures = cubic_planar_fixtures();
  const VcInstance& vc = fixtures[c.seed % fixtures.size()];
  return (c.seed / fixtures.size()) % 2 == 0 ? construct1(vc).instance : construct2(vc).instance;
}

}  // namespace

Instance generate(const GeneratorConfig& config) {
  if (config.n < 0 || config.r < 0) throw InputError(ErrorCode::kParse, "negative generator size");
  if (config.cost_min < 0 || config.cost_max < config.cost_min)
    throw InputError(ErrorCode::kNegativeCost, "invalid cost range");
  switch (config.regime) {
    case Regime::kDeg3: return bounded_degree(config, 3, 6);
    case Regime::kDeg4: return bounded_degree(config, 4, 4);
    case Regime::kPlanarH3: return planar_h3(config);
    case Regime::kGadget: return gadget(config);
  }
  throw std::logic_error("unhandled regime");
}

Instance nested_triangles_example() {
  enum : VertexId { kLeft, kRight, kBottom, kTop, kCenter };
  std::vector<Edge> edges{{kLeft, kRight, 4, false},  {kLeft, kBottom, 1, false}, {kRight, kBottom, 1, false},
                          {kLeft, kTop, 1, false},    {kRight, kTop, 1, false},   {kLeft, kCenter, 4, false},
                          {kRight, kCenter, 3, false}, {kBottom, kCenter, 8, false}};
  std::vector<std::vector<VertexId>> habitats{
      {kLeft, kRight, kTop}, {kLeft, kRight, kBottom}, {kLeft, kRight, kCenter}, {kRight, kBottom, kCenter}};
  std::vector<Point> pts{{0, 0}, {8, 0}, {4, -8}, {4, 6}, {4, -3}};
  return make_instance(5, std::move(edges), std::move(habitats), Cost{11}, std::move(pts));
}

}  // namespace gbp
